//! Weighted multivariate power series in `v_1, v_2, ...` with `weight(v_k) = k`,
//! truncated by total weight.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{EpsLaurent, ExactError, Rational, Ring};

/// Sparse exponent vector: sorted `(variable index, exponent)` pairs with
/// positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(u16, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(k: u16) -> Self {
        Self(vec![(k, 1)])
    }

    /// `∏ v_{d}` over a list of (possibly repeated) indices.
    pub fn from_indices(idx: &[u16]) -> Self {
        let mut m: BTreeMap<u16, u16> = BTreeMap::new();
        for &i in idx {
            *m.entry(i).or_default() += 1;
        }
        Self(m.into_iter().collect())
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(k, e)| *k as u32 * *e as u32).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e as u32).sum()
    }

    pub fn exponents(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, e)| if *e == 1 { format!("v{k}") } else { format!("v{k}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Multivariate series with ε-Laurent coefficients; every stored monomial has
/// weight at most `cap` and a nonzero coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiSeries {
    var: char,
    cap: u32,
    terms: BTreeMap<Monomial, EpsLaurent>,
}

impl MultiSeries {
    pub fn zero(var: char, cap: u32) -> Self {
        Self {
            var,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: char, cap: u32) -> Self {
        Self::constant(var, cap, EpsLaurent::one())
    }

    pub fn constant(var: char, cap: u32, c: EpsLaurent) -> Self {
        let mut s = Self::zero(var, cap);
        s.add_term(Monomial::one(), &c);
        s
    }

    /// `c · v_k`.
    pub fn variable(var: char, cap: u32, k: u16, c: EpsLaurent) -> Self {
        let mut s = Self::zero(var, cap);
        s.add_term(Monomial::var(k), &c);
        s
    }

    pub fn var_tag(&self) -> char {
        self.var
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn add_term(&mut self, m: Monomial, c: &EpsLaurent) {
        if c.is_zero() || m.weight() > self.cap {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: &Monomial) -> EpsLaurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &EpsLaurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).min()
    }

    pub fn constant_term(&self) -> EpsLaurent {
        self.coeff(&Monomial::one())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series in different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.var, self.cap.min(other.cap));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul_eps(&self, e: &EpsLaurent) -> Self {
        self.map(|c| c.mul(e))
    }

    fn map(&self, f: impl Fn(&EpsLaurent) -> EpsLaurent) -> Self {
        let mut out = Self::zero(self.var, self.cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.var, cap);
        for (m1, c1) in &self.terms {
            let w1 = m1.weight();
            for (m2, c2) in &other.terms {
                if w1 + m2.weight() > cap {
                    continue;
                }
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    /// Drops all monomials above weight `cap`.
    pub fn truncate(&self, cap: u32) -> Self {
        let mut out = Self::zero(self.var, cap.min(self.cap));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self, ExactError> {
        if !self.constant_term().is_zero() {
            return Err(ExactError::Domain("exp needs zero constant term".into()));
        }
        let mut acc = Self::one(self.var, self.cap);
        let mut term = Self::one(self.var, self.cap);
        for k in 1..=self.cap as i64 {
            term = term.mul(self).scale(&Rational::new(1.into(), k.into()));
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `log(self)`; the constant term must be exactly 1.
    pub fn log(&self) -> Result<Self, ExactError> {
        if self.constant_term() != EpsLaurent::one() {
            return Err(ExactError::Domain("log needs constant term 1".into()));
        }
        let u = self.sub(&Self::one(self.var, self.cap));
        let mut acc = Self::zero(self.var, self.cap);
        let mut power = Self::one(self.var, self.cap);
        for k in 1..=self.cap as i64 {
            power = power.mul(&u);
            if power.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign.into(), k.into())));
        }
        Ok(acc)
    }
}

impl Ring for MultiSeries {
    fn zero_like(&self) -> Self {
        Self::zero(self.var, self.cap)
    }
    fn one_like(&self) -> Self {
        Self::one(self.var, self.cap)
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
        MultiSeries::scale(self, q)
    }
    fn inverse(&self) -> Option<Self> {
        // Units are series with a unit constant term; only the constant-one
        // case is needed.
        if self.terms.len() == 1 && self.constant_term() == EpsLaurent::one() {
            return Some(self.clone());
        }
        let c = self.constant_term();
        let c_inv = c.inverse()?;
        let u = self.mul_eps(&c_inv).sub(&Self::one(self.var, self.cap));
        let mut acc = Self::one(self.var, self.cap);
        let mut power = Self::one(self.var, self.cap);
        for _ in 1..=self.cap {
            power = power.mul(&u).neg();
            if power.is_empty() {
                break;
            }
            acc = acc.add(&power);
        }
        Some(acc.mul_eps(&c_inv))
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        Self::constant(self.var, self.cap, EpsLaurent::constant(q.clone()))
    }
}

impl MultiSeries {
    /// Convenience for tests and callers that only hold rationals.
    pub fn from_rational_terms(
        var: char,
        cap: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut s = Self::zero(var, cap);
        for (m, c) in terms {
            s.add_term(m, &EpsLaurent::constant(c));
        }
        s
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().coeff(0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn t(k: u16) -> MultiSeries {
        MultiSeries::variable('t', 8, k, EpsLaurent::one())
    }

    #[test]
    fn weight_cap_respected() {
        let s = t(3).mul(&t(3)).mul(&t(3));
        assert!(s.is_empty());
        let s = t(3).mul(&t(5));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn log_exp_round_trip() {
        let u = t(1).add(&t(2).scale(&rat(1, 3))).add(&t(1).mul(&t(2)).mul_eps(&EpsLaurent::monomial(-2, int(5))));
        let e = u.exp().unwrap();
        assert_eq!(e.log().unwrap(), u);
    }

    #[test]
    fn log_of_one_plus_t() {
        let s = MultiSeries::one('t', 3).add(&MultiSeries::variable('t', 3, 1, EpsLaurent::one()));
        let l = s.log().unwrap();
        assert_eq!(l.coeff(&Monomial::from_indices(&[1])), EpsLaurent::one());
        assert_eq!(l.coeff(&Monomial::from_indices(&[1, 1])), EpsLaurent::constant(rat(-1, 2)));
        assert_eq!(l.coeff(&Monomial::from_indices(&[1, 1, 1])), EpsLaurent::constant(rat(1, 3)));
        assert!(t(1).log().is_err());
    }

    #[test]
    fn inverse_of_unit() {
        let s = MultiSeries::one('t', 6).add(&t(1)).add(&t(2).scale(&int(2)));
        let inv = Ring::inverse(&s).unwrap();
        assert!(s.mul(&inv).truncate(6).is_one());
    }
}
