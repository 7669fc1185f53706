//! Frobenius-manifold data at the special point `f = p^{N-1} + p^{-1}`:
//! metric, canonical frame, calibration matrices and the residue identities
//! tying them to hypermap counts.

mod frame;
mod closed;
mod polar;
mod smatrix;

pub use frame::{canonical_frame, eta, mu_charge, CanonicalFrame, DeltaBranch, EtaMetric};
pub use closed::{s_column_residue_check, s_column_residue_sides, tilde_xi, unstable01, unstable02, ResidueSides};
pub use polar::{sum_full_period, ExactPolar};
pub use smatrix::{s_entry, SMatrixTable};

use crate::exactmath::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobError {
    #[error("N must be at least 2, got {0}")]
    InvalidN(u32),
    #[error("index out of range for N={n}: alpha={alpha}, beta={beta}")]
    IndexOutOfRange { n: u32, alpha: u32, beta: u32 },
    #[error("numerator not divisible by w1+w2")]
    NotDivisible,
    #[error("{0}")]
    Arithmetic(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
