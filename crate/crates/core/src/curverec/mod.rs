//! Topological recursion on the curve `x = z^{N-1} + 1/z`, `y = -z`, and
//! hypermap counts read off its correlators.
//!
//! The recursion runs on the rescaled curve `x̂ = ẑ^{N-1}/(N-1) + 1/ẑ`
//! (`z = (N-1)^{-1/N} ẑ`), whose ramification points are the `N`-th roots
//! of unity, so all arithmetic stays in `Q(ζ_N)`. [`curve`] gives the
//! original curve over the full splitting field.

mod cache;
mod curve;
mod engine;
mod extract;
mod local;

pub use curve::{curve, normalized_params, CurveData, CurveParams, DeckSeries};
pub use engine::{pole_bound, tower_agreement, Correlator, Key, TrConfig, TrEngine};
pub use extract::{rhm01_from_curve, rhm02_from_curve, rhm_from_tr};

use crate::exactmath::ExactError;
use crate::frobdata::FrobError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("N must be at least 2, got {0}")]
    InvalidN(u32),
    #[error("unstable moment handled by dedicated operations: (g, n) = ({g}, {n})")]
    Unstable { g: u32, n: u32 },
    #[error("(g, n) = ({g}, {n}) exceeds the configured range")]
    OutOfRange { g: u32, n: u32 },
    #[error("no ramification point with index {0}")]
    NoSuchPoint(usize),
    #[error("point is not a ramification point")]
    NotRamification,
    #[error("deck series: {0}")]
    Deck(String),
    #[error("pole order {order} in omega({g},{n}) exceeds bound {bound}")]
    PoleBound { g: u32, n: u32, order: u32, bound: u32 },
    #[error("omega({g},{n}) is not symmetric")]
    Asymmetric { g: u32, n: u32 },
    #[error("field descent failure: {0}")]
    Descent(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("frame: {0}")]
    Frame(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Frob(#[from] FrobError),
}

#[cfg(test)]
mod tests;
