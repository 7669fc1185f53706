//! Exact computation of rooted hypermap counts through topological
//! recursion, a hypergeometric tau function and brute-force enumeration,
//! together with the Frobenius-manifold data they are checked against.

pub mod curverec;
pub mod exactmath;
pub mod frobdata;
pub mod maporacle;
pub mod tauschur;
pub mod verifyhub;
pub(crate) mod ser;
