//! Univariate truncated Laurent series with explicit precision.
//!
//! A series is either exact (a finite Laurent polynomial) or known modulo
//! `x^prec`. Every operation propagates precision from its operands and never
//! reports a coefficient it cannot vouch for.

use super::{binomial, int, ExactError, Rational, Ring};

/// Which chart a residue is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueAt {
    Zero,
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<C> {
    var: &'static str,
    /// Exponent of `coeffs[0]`. Equals the valuation whenever `coeffs` is
    /// nonempty.
    min_deg: i64,
    /// `None` for exact polynomials, `Some(t)` for `+ O(x^t)`.
    prec: Option<i64>,
    coeffs: Vec<C>,
    zero: C,
}

const EXACT_VAL: i64 = i64::MAX / 4;

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, p) | (p, None) => p,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl<C: Ring> UniSeries<C> {
    /// Builds a series from `(exponent, coefficient)` pairs. `zero` fixes
    /// the coefficient ring context.
    pub fn from_terms(
        var: &'static str,
        zero: C,
        terms: impl IntoIterator<Item = (i64, C)>,
        prec: Option<i64>,
    ) -> Self {
        let terms: Vec<(i64, C)> = terms
            .into_iter()
            .filter(|(e, _)| prec.is_none_or(|p| *e < p))
            .collect();
        if terms.is_empty() {
            return Self::zero(var, zero, prec);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![zero.clone(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize].add_assign_ref(&c);
        }
        Self::from_dense(var, zero, lo, coeffs, prec)
    }

    /// Coefficients of `x^lo, x^(lo+1), ...`.
    pub fn from_dense(
        var: &'static str,
        zero: C,
        lo: i64,
        coeffs: Vec<C>,
        prec: Option<i64>,
    ) -> Self {
        let mut s = Self {
            var,
            min_deg: lo,
            prec,
            coeffs,
            zero,
        };
        s.normalize();
        s
    }

    pub fn zero(var: &'static str, zero: C, prec: Option<i64>) -> Self {
        Self {
            var,
            min_deg: prec.unwrap_or(0),
            prec,
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(var: &'static str, c: C, prec: Option<i64>) -> Self {
        let zero = c.zero_like();
        Self::from_terms(var, zero, [(0, c)], prec)
    }

    pub fn monomial(var: &'static str, c: C, e: i64, prec: Option<i64>) -> Self {
        let zero = c.zero_like();
        Self::from_terms(var, zero, [(e, c)], prec)
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.min_deg).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.vanishes());
        match lead {
            None => {
                self.coeffs.clear();
                self.min_deg = self.prec.unwrap_or(0);
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.min_deg += i as i64;
                while self.coeffs.last().is_some_and(|c| c.vanishes()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; for a zero series this is
    /// the precision (or a huge sentinel when exact).
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec.unwrap_or(EXACT_VAL)
        } else {
            self.min_deg
        }
    }

    /// Highest stored exponent, if any.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_deg + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Result<C, ExactError> {
        if self.prec.is_some_and(|p| e >= p) {
            return Err(ExactError::PrecisionExhausted {
                requested: e,
                prec: self.prec.unwrap(),
            });
        }
        Ok(self.coeff_unchecked(e))
    }

    pub(crate) fn coeff_unchecked(&self, e: i64) -> C {
        if e < self.min_deg || e >= self.min_deg + self.coeffs.len() as i64 {
            self.zero.clone()
        } else {
            self.coeffs[(e - self.min_deg) as usize].clone()
        }
    }

    pub(crate) fn coeff_ref(&self, e: i64) -> Option<&C> {
        if e < self.min_deg {
            return None;
        }
        self.coeffs.get((e - self.min_deg) as usize)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vanishes())
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = min_prec(self.prec, Some(prec));
        s.normalize();
        s
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series in different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_var(other);
        let prec = min_prec(self.prec, other.prec);
        if self.is_zero() {
            return other.with_prec_opt(prec);
        }
        if other.is_zero() {
            return self.with_prec_opt(prec);
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.degree().unwrap().max(other.degree().unwrap());
        let hi = prec.map_or(hi, |p| hi.min(p - 1));
        if hi < lo {
            return Self::zero(self.var, self.zero.clone(), prec);
        }
        let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            let c = match (self.coeff_ref(e), other.coeff_ref(e)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => self.zero.clone(),
            };
            coeffs.push(c);
        }
        Self::from_dense(self.var, self.zero.clone(), lo, coeffs, prec)
    }

    fn with_prec_opt(&self, prec: Option<i64>) -> Self {
        match prec {
            Some(p) => self.with_prec(p),
            None => self.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul_scalar(&self, k: &C) -> Self {
        self.map(|c| c.times(k))
    }

    fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_dense(
            self.var,
            self.zero.clone(),
            self.min_deg,
            self.coeffs.iter().map(f).collect(),
            self.prec,
        )
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.min_deg += k;
        s.prec = s.prec.map(|p| p + k);
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_var(other);
        let va = self.valuation();
        let vb = other.valuation();
        let prec = min_prec(self.prec.map(|p| p + vb), other.prec.map(|p| p + va));
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var, self.zero.clone(), prec);
        }
        let lo = va + vb;
        let mut hi = self.degree().unwrap() + other.degree().unwrap();
        if let Some(p) = prec {
            hi = hi.min(p - 1);
        }
        if hi < lo {
            return Self::zero(self.var, self.zero.clone(), prec);
        }
        let len = (hi - lo + 1) as usize;
        let mut coeffs = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            if i >= len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.vanishes() {
                    continue;
                }
                coeffs[i + j].add_assign_ref(&a.times(b));
            }
        }
        Self::from_dense(self.var, self.zero.clone(), lo, coeffs, prec)
    }

    /// Multiplicative inverse. Exact inputs must be monomials; anything else
    /// needs a precision first (see [`UniSeries::with_prec`]).
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::NonInvertible);
        }
        let v = self.min_deg;
        let lead_inv = self.coeffs[0].inverse().ok_or(ExactError::NonInvertible)?;
        let prec = match self.prec {
            None if self.coeffs.len() == 1 => {
                return Ok(Self::monomial(self.var, lead_inv, -v, None));
            }
            None => return Err(ExactError::NeedsPrecision),
            Some(p) => p,
        };
        let rel = (prec - v).max(0) as usize;
        let mut g: Vec<C> = Vec::with_capacity(rel);
        for k in 0..rel {
            if k == 0 {
                g.push(lead_inv.clone());
                continue;
            }
            let mut acc = self.zero.clone();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                let ci = &self.coeffs[i];
                if ci.vanishes() {
                    continue;
                }
                acc.add_assign_ref(&ci.times(&g[k - i]));
            }
            g.push(acc.times(&lead_inv).negate());
        }
        Ok(Self::from_dense(
            self.var,
            self.zero.clone(),
            -v,
            g,
            Some(prec - 2 * v),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents go through [`UniSeries::inv`].
    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(self.var, self.zero.one_like(), None);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let terms: Vec<(i64, C)> = self
            .terms()
            .filter(|(e, _)| *e != 0)
            .map(|(e, c)| (e - 1, c.scale(&int(e))))
            .collect();
        Self::from_terms(self.var, self.zero.clone(), terms, self.prec.map(|p| p - 1))
    }

    /// `Σ c_k inner^k` for a power series `self` and `inner` of positive
    /// valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self, ExactError> {
        if self.min_deg < 0 && !self.is_zero() {
            return Err(ExactError::Domain("compose needs a power series".into()));
        }
        if inner.valuation() < 1 {
            return Err(ExactError::Domain("inner series must vanish at 0".into()));
        }
        let inner_val = inner.valuation();
        let cap = self.prec.map(|p| p.saturating_mul(inner_val));
        let inner = match cap {
            Some(c) => inner.with_prec(c),
            None => inner.clone(),
        };
        let mut acc = Self::zero(inner.var, self.zero.clone(), cap);
        if let Some(d) = self.degree() {
            for k in (0..=d).rev() {
                acc = acc.mul(&inner);
                let c = self.coeff_unchecked(k);
                if !c.vanishes() {
                    acc = acc.add(&Self::constant(inner.var, c, None));
                }
            }
        }
        Ok(match cap {
            Some(c) => acc.with_prec(c),
            None => acc,
        })
    }

    /// Residue of `self · dx` at the origin of the chart, or at infinity with
    /// the convention `res_0 + res_∞ = 0`.
    pub fn residue(&self, at: ResidueAt) -> Result<C, ExactError> {
        let c = self.coeff(-1)?;
        Ok(match at {
            ResidueAt::Zero => c,
            ResidueAt::Infinity => c.negate(),
        })
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<Self, ExactError> {
        let prec = self.prec.ok_or(ExactError::NeedsPrecision)?;
        let v = self.valuation();
        if v < 1 {
            return Err(ExactError::Domain("exp needs zero constant term".into()));
        }
        let one = Self::constant(self.var, self.zero.one_like(), Some(prec));
        let mut acc = one.clone();
        let mut term = one;
        let mut k = 1i64;
        while k * v < prec {
            term = term.mul(self).scale(&Rational::new(1.into(), k.into()));
            acc = acc.add(&term);
            k += 1;
        }
        Ok(acc)
    }

    /// `log(self)` for a series with constant term one.
    pub fn log(&self) -> Result<Self, ExactError> {
        let prec = self.prec.ok_or(ExactError::NeedsPrecision)?;
        let one = Self::constant(self.var, self.zero.one_like(), None);
        if self.valuation() < 0 || self.coeff_unchecked(0) != self.zero.one_like() {
            return Err(ExactError::Domain("log needs constant term 1".into()));
        }
        let u = self.sub(&one);
        let v = u.valuation();
        let mut acc = Self::zero(self.var, self.zero.clone(), Some(prec));
        let mut power = Self::constant(self.var, self.zero.one_like(), Some(prec));
        let mut k = 1i64;
        while k * v < prec {
            power = power.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Rational::new(sign.into(), k.into())));
            k += 1;
        }
        Ok(acc)
    }

    /// `(1 + self)^s = Σ binom(s, k) self^k` for rational `s` and `self` of
    /// positive valuation, to precision `prec`.
    pub fn binomial_series(&self, s: &Rational, prec: i64) -> Result<Self, ExactError> {
        let v = self.valuation();
        if v < 1 {
            return Err(ExactError::Domain("binomial series needs positive valuation".into()));
        }
        let u = self.with_prec(prec);
        let mut acc = Self::constant(self.var, self.zero.one_like(), Some(prec));
        let mut power = Self::constant(self.var, self.zero.one_like(), Some(prec));
        let mut k = 1u32;
        while (k as i64) * v < prec {
            power = power.mul(&u);
            let b = binomial(s, k);
            if !num_traits::Zero::is_zero(&b) {
                acc = acc.add(&power.scale(&b));
            }
            k += 1;
        }
        Ok(acc)
    }
}

/// Solves `z = w · phi(z)` for `z(w)` modulo `w^trunc` by the
/// Lagrange–Bürmann formula `[w^n] z = (1/n) [z^(n-1)] phi(z)^n`.
pub fn lagrange_invert<C: Ring>(
    phi: &UniSeries<C>,
    trunc: i64,
    out_var: &'static str,
) -> Result<UniSeries<C>, ExactError> {
    if phi.valuation() < 0 {
        return Err(ExactError::Domain("phi must be a power series".into()));
    }
    let c0 = phi.coeff_unchecked(0);
    if c0.vanishes() || c0.inverse().is_none() {
        return Err(ExactError::NonInvertible);
    }
    let zero = phi.zero_elem().clone();
    let phi = phi.with_prec(trunc.max(1));
    let mut terms = Vec::new();
    let mut power = UniSeries::constant(phi.var(), zero.one_like(), Some(trunc.max(1)));
    for n in 1..trunc {
        power = power.mul(&phi);
        let c = power.coeff(n - 1)?;
        terms.push((n, c.scale(&Rational::new(1.into(), n.into()))));
    }
    Ok(UniSeries::from_terms(out_var, zero, terms, Some(trunc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    type S = UniSeries<Rational>;

    fn poly(var: &'static str, terms: &[(i64, i64)]) -> S {
        S::from_terms(var, int(0), terms.iter().map(|(e, c)| (*e, int(*c))), None)
    }

    /// Coefficient list of an exact Laurent polynomial by repeated naive
    /// multiplication of `(exponent, coefficient)` lists.
    fn naive_pow(terms: &[(i64, i64)], n: u32) -> std::collections::BTreeMap<i64, i64> {
        let mut acc = std::collections::BTreeMap::from([(0i64, 1i64)]);
        for _ in 0..n {
            let mut next = std::collections::BTreeMap::new();
            for (e1, c1) in &acc {
                for (e2, c2) in terms {
                    *next.entry(e1 + e2).or_insert(0) += c1 * c2;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn geometric_inverse() {
        let s = poly("z", &[(0, 1), (1, -1)]).with_prec(4);
        let inv = s.inv().unwrap();
        assert_eq!(inv, poly("z", &[(0, 1), (1, 1), (2, 1), (3, 1)]).with_prec(4));
    }

    #[test]
    fn laurent_square() {
        let s = poly("p", &[(1, 1), (-1, 1)]);
        assert_eq!(s.mul(&s), poly("p", &[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn quadrinomial_power() {
        let base = [(2, 1), (-1, 1)];
        let oracle = naive_pow(&base, 4);
        let s = poly("p", &base).pow(4).unwrap();
        assert_eq!(oracle[&-1], 4);
        assert_eq!(s.coeff(-1).unwrap(), int(4));
        for (e, c) in oracle {
            assert_eq!(s.coeff(e).unwrap(), int(c));
        }
    }

    #[test]
    fn residues() {
        let cube = poly("p", &[(1, 1), (-1, 1)]).pow(3).unwrap();
        assert_eq!(cube.residue(ResidueAt::Zero).unwrap(), int(3));
        let inv_p = poly("p", &[(-1, 1)]);
        assert_eq!(inv_p.residue(ResidueAt::Infinity).unwrap(), int(-1));
        let s = poly("p", &[(2, 1), (-1, 1)]).pow(4).unwrap();
        assert_eq!(s.residue(ResidueAt::Zero).unwrap(), int(4));
    }

    #[test]
    fn residue_beyond_precision_is_an_error() {
        let s = poly("p", &[(-3, 1)]).with_prec(-2);
        assert!(s.residue(ResidueAt::Zero).is_err());
    }

    #[test]
    fn log_and_exp() {
        let one_plus_t = poly("t", &[(0, 1), (1, 1)]).with_prec(4);
        let expected = S::from_terms("t", int(0), [(1, int(1)), (2, rat(-1, 2)), (3, rat(1, 3))], Some(4));
        assert_eq!(one_plus_t.log().unwrap(), expected);
        let z = S::zero("t", int(0), Some(5));
        assert_eq!(z.exp().unwrap(), poly("t", &[(0, 1)]).with_prec(5));
        let u = poly("t", &[(1, 1), (2, 1)]).with_prec(8);
        assert_eq!(u.exp().unwrap().log().unwrap(), u);
        assert!(u.log().is_err());
    }

    /// Fixpoint iteration `z <- w phi(z)`, one order per step.
    fn fixpoint(phi_terms: &[(i64, i64)], trunc: i64) -> S {
        let phi = poly("z", phi_terms);
        let w = poly("z", &[(1, 1)]);
        let mut z = S::zero("z", int(0), Some(trunc));
        for _ in 0..trunc {
            z = w.mul(&phi.compose(&z).unwrap()).with_prec(trunc);
        }
        z
    }

    #[test]
    fn lagrange_inversion_examples() {
        let id = lagrange_invert(&poly("z", &[(0, 1)]), 6, "w").unwrap();
        assert_eq!(id, poly("w", &[(1, 1)]).with_prec(6));
        let n2 = lagrange_invert(&poly("z", &[(0, 1), (2, 1)]), 6, "w").unwrap();
        assert_eq!(n2, poly("w", &[(1, 1), (3, 1), (5, 2)]).with_prec(6));
        let n3 = lagrange_invert(&poly("z", &[(0, 1), (3, 1)]), 5, "w").unwrap();
        assert_eq!(n3, poly("w", &[(1, 1), (4, 1)]).with_prec(5));
        assert!(lagrange_invert(&poly("z", &[(1, 1)]), 5, "w").is_err());
    }

    #[test]
    fn lagrange_matches_fixpoint_oracle() {
        for phi in [&[(0, 1), (2, 1)][..], &[(0, 1), (3, 1)], &[(0, 2), (1, -1), (4, 3)]] {
            let lb = lagrange_invert(&poly("z", phi), 9, "z").unwrap();
            assert_eq!(lb, fixpoint(phi, 9));
        }
    }

    #[test]
    fn binomial_half_power() {
        // (1 + u)^(1/2) squared is 1 + u.
        let u = poly("q", &[(2, 1)]);
        let r = u.binomial_series(&rat(1, 2), 12).unwrap();
        assert_eq!(r.mul(&r), poly("q", &[(0, 1), (2, 1)]).with_prec(12));
    }

    #[test]
    fn precision_propagates_through_mul() {
        let a = poly("x", &[(-2, 1), (0, 1)]).with_prec(3);
        let b = poly("x", &[(1, 1)]).with_prec(5);
        let p = a.mul(&b);
        // min(3 + 1, 5 - 2)
        assert_eq!(p.prec(), Some(3));
    }
}
