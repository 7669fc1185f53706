//! Exact arithmetic: rationals, ε-Laurent polynomials, truncated series,
//! weighted multivariate series and number fields.

mod eps;
pub mod linalg;
mod multi;
mod numberfield;
mod rational;
mod ring;
mod series;

pub use eps::EpsLaurent;
pub use multi::{Monomial, MultiSeries};
pub use numberfield::{NFElem, NumberField, RadicalTower};
pub use rational::*;
pub use ring::Ring;
pub use series::{lagrange_invert, ResidueAt, UniSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("coefficient of degree {requested} requested but series is only known below {prec}")]
    PrecisionExhausted { requested: i64, prec: i64 },
    #[error("non-invertible leading term")]
    NonInvertible,
    #[error("inverse of a non-monomial exact series needs a truncation order")]
    NeedsPrecision,
    #[error("{0}")]
    Domain(String),
}
