//! Partitions, Schur functions, the hypergeometric tau function `𝒵` and
//! coefficient extraction from `log 𝒵`.
//!
//! Degrees are side counts `d ≥ 1`. With `p_i = i𝗍_i/ε` and
//! `p̃_i = δ_{iN}/ε`,
//!
//! `𝒵 = Σ_λ s_λ(p) s_λ(p̃) ∏_{(i,j)∈λ} (1 + ε(j - i))`,
//!
//! and `log 𝒵 = Σ_g ε^{2g-2} Σ_n (1/n!) Σ RHM ∏ 𝗍_{d_i}`.

mod partition;
mod pluecker;
mod schur;
mod tau;

use thiserror::Error;

use crate::exactmath::ExactError;

pub use partition::{content_product, partitions_of, partitions_up_to, Partition};
pub use pluecker::{pluecker_check, PlueckerReport, PlueckerViolation};
pub use schur::{
    character, character_table, complete_homogeneous, det, dimension, schur_jt, schur_mn, z_mu,
};
pub use tau::{
    osmh_from_tau, rhm_from_tau, tau_z, tilde_powersums, CoefficientFamily, RatioRow,
    TauTruncation,
};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TauError {
    #[error("N must be at least 2, got {0}")]
    InvalidN(u32),
    #[error("weight cap {cap} is below N = {n}")]
    CapTooSmall { n: u32, cap: u32 },
    #[error("requested weight {weight} exceeds cap {cap}")]
    WeightAboveCap { weight: u32, cap: u32 },
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("extracted coefficient {0} is not a nonnegative integer")]
    NotCount(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
