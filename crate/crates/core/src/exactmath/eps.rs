//! Finite Laurent polynomials in the genus parameter ε.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{int, to_exact_string, Rational, Ring};

/// `Σ c_k ε^k` over finitely many integer `k`. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct EpsLaurent {
    terms: BTreeMap<i32, Rational>,
}

impl EpsLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c ε^k`.
    pub fn monomial(k: i32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn highest(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, &-c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }
}

impl Ring for EpsLaurent {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, q: &Rational) -> Self {
        EpsLaurent::scale(self, q)
    }
    /// Only monomials are units.
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some(Self::monomial(-k, c.recip()))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(*k, c);
        }
    }
}

impl fmt::Debug for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EpsLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => to_exact_string(c),
                _ => format!("({})e^{}", to_exact_string(c), k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serialized as `{"<eps power>": "<p/q>"}` in increasing power order.
impl Serialize for EpsLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            map.serialize_entry(&k.to_string(), &to_exact_string(c))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn no_zero_terms_survive() {
        let a = EpsLaurent::from_terms([(1, int(1)), (-1, int(2))]);
        let b = EpsLaurent::from_terms([(1, int(-1))]);
        let s = a.add(&b);
        assert_eq!(s.terms().count(), 1);
        assert_eq!(s.lowest(), Some(-1));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn product_of_binomials() {
        // (1 + ε)(1 - ε) = 1 - ε²
        let a = EpsLaurent::from_terms([(0, int(1)), (1, int(1))]);
        let b = EpsLaurent::from_terms([(0, int(1)), (1, int(-1))]);
        assert_eq!(a.mul(&b), EpsLaurent::from_terms([(0, int(1)), (2, int(-1))]));
    }

    #[test]
    fn monomial_inverse() {
        let m = EpsLaurent::monomial(-2, rat(1, 4));
        assert_eq!(m.inverse().unwrap(), EpsLaurent::monomial(2, int(4)));
        assert!(EpsLaurent::from_terms([(0, int(1)), (1, int(1))]).inverse().is_none());
    }

    #[test]
    fn json_shape() {
        let a = EpsLaurent::from_terms([(-2, rat(1, 4)), (0, rat(-1, 4))]);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"-2":"1/4","0":"-1/4"}"#);
    }
}
