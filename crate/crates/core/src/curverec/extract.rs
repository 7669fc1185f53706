//! Reading hypermap counts off correlator expansions at `x = ∞`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactmath::{binomial_int, int, lagrange_invert, NFElem, Rational, UniSeries};

use super::curve::CurveParams;
use super::engine::{Correlator, Key, TrEngine};
use super::local::Ser;
use super::CurveError;

/// `e_{b,k}(d)`: coefficient of `dx/x^{d+1}` in `dz/(z-b)^k`.
pub(crate) struct Extractor {
    pub d_max: u32,
    table: HashMap<Key, Vec<NFElem>>,
}

impl Extractor {
    pub fn new(params: &CurveParams, k_max: u32, d_max: u32) -> Result<Self, CurveError> {
        let f = &params.field;
        let n = params.n as i64;
        let trunc = d_max as i64 + 1;
        // X = 1/x solves z = X (1 + c z^N).
        let phi = UniSeries::from_terms("z", f.zero(), [(0, f.one()), (n, params.c.clone())], None);
        let z = lagrange_invert(&phi, trunc, "X")?;
        let zc: Vec<NFElem> = (0..trunc).map(|e| z.coeff(e)).collect::<Result<_, _>>()?;
        let zs = Ser::poly(f, 0, zc).truncate(trunc - 1);
        let dz = zs.derivative();
        let cap = d_max as i64;
        let mut table = HashMap::new();
        for (bi, b) in params.ram.iter().enumerate() {
            let inv = zs.sub(&Ser::mono(b.clone(), 0)).inv(cap)?;
            let mut pw = Ser::mono(f.one(), 0);
            for k in 1..=k_max {
                pw = pw.mul(&inv, cap);
                let prod = dz.mul(&pw, cap);
                let row = (1..=d_max as i64)
                    .map(|d| prod.coeff(d - 1).map(|c| c.neg()))
                    .collect::<Result<Vec<_>, _>>()?;
                table.insert((bi as u8, k as u16), row);
            }
        }
        Ok(Self { d_max, table })
    }

    /// `Σ coeff · ∏ e_{b_i,k_i}(d_i)`.
    pub fn pair(&self, corr: &Correlator, degrees: &[u32], zero: NFElem) -> NFElem {
        let mut acc = zero;
        for (keys, c) in &corr.entries {
            let mut term = c.clone();
            for (key, &d) in keys.iter().zip(degrees) {
                term = term.mul(&self.table[key][d as usize - 1]);
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl TrEngine {
    /// `RHM_{g; d_1, …, d_n}` from `ω_{g,n}`.
    pub fn rhm(&self, g: u32, degrees: &[u32]) -> Result<BigInt, CurveError> {
        let params = self.params();
        let n = params.n;
        let k = degrees.len() as u32;
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(CurveError::Profile("degrees must be positive".into()));
        }
        if 2 * g + k <= 2 {
            return Err(CurveError::Unstable { g, n: k });
        }
        let total: u32 = degrees.iter().sum();
        if total % n != 0 {
            return Ok(BigInt::zero());
        }
        let corr = self.omega(g, k)?;
        let d_max = *degrees.iter().max().unwrap();
        let ex = self.extractor(d_max)?;
        let f = &params.field;
        let sum = ex.pair(&corr, degrees, f.zero());
        // Undo the rescaling z ↦ c^{1/N} z of the curve x = z^{N-1} + 1/z.
        let scale = params
            .c
            .pow(-((total / n) as i64))
            .ok_or_else(|| CurveError::Descent("degenerate curve coefficient".into()))?;
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let v = sum.mul(&scale).scale(&sign);
        let q = v
            .as_rational()
            .ok_or_else(|| CurveError::Descent(format!("irrational value {v:?}")))?;
        if !q.is_integer() || q.is_negative() {
            return Err(CurveError::Descent(format!("value {q} is not a nonnegative integer")));
        }
        Ok(q.to_integer())
    }
}

/// `RHM_{g; d_1, …, d_n}` with a fresh engine sized for this profile.
pub fn rhm_from_tr(n: u32, g: u32, degrees: &[u32]) -> Result<BigInt, CurveError> {
    let engine = TrEngine::new(n, super::TrConfig::new(g, degrees.len() as u32))?;
    engine.rhm(g, degrees)
}

/// `RHM_{0;k+1} = [X^{k+1}] z^N` with `z = X(1 + z^N)`.
pub fn rhm01_from_curve(n: u32, k: u32) -> Result<BigInt, CurveError> {
    if n < 2 {
        return Err(CurveError::InvalidN(n));
    }
    let phi = UniSeries::from_terms("z", int(0), [(0, int(1)), (n as i64, int(1))], None);
    let z = lagrange_invert(&phi, k as i64 + 2, "X")?;
    let v = z.pow(n as i64)?.coeff(k as i64 + 1)?;
    Ok(v.to_integer())
}

/// `RHM_{0;k1+1,k2+1}` as the double residue at the origin of
/// `x1^{k1+1} x2^{k2+1} d1 d2 (log(z1-z2) - log(x1-x2))`.
pub fn rhm02_from_curve(n: u32, k1: u32, k2: u32) -> Result<BigInt, CurveError> {
    if n < 2 {
        return Err(CurveError::InvalidN(n));
    }
    let (m1, m2) = (k1 as usize + 1, k2 as usize + 1);
    if (m1 + m2) % n as usize != 0 {
        return Ok(BigInt::zero());
    }
    // The integrand is d1 d2 Σ_{m≥1} u^m/m with u = z1 z2 h_{N-2}(z1, z2).
    let mut u = vec![vec![Rational::zero(); m2 + 1]; m1 + 1];
    for i in 0..=(n as usize - 2) {
        let (e1, e2) = (i + 1, n as usize - 1 - i);
        if e1 <= m1 && e2 <= m2 {
            u[e1][e2] += int(1);
        }
    }
    let mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| {
        let mut c = vec![vec![Rational::zero(); m2 + 1]; m1 + 1];
        for i in 0..=m1 {
            for j in 0..=m2 {
                if a[i][j].is_zero() {
                    continue;
                }
                for p in 0..=(m1 - i) {
                    for q in 0..=(m2 - j) {
                        if !b[p][q].is_zero() {
                            c[i + p][j + q] += &a[i][j] * &b[p][q];
                        }
                    }
                }
            }
        }
        c
    };
    let mut log = vec![vec![Rational::zero(); m2 + 1]; m1 + 1];
    let mut pw = u.clone();
    for m in 1..=m1.min(m2) {
        for i in 0..=m1 {
            for j in 0..=m2 {
                log[i][j] += &pw[i][j] / int(m as i64);
            }
        }
        pw = mul(&pw, &u);
    }
    // x^K = Σ_j C(K, j) z^{jN - K}; the residue pairs exponent -1-e with e.
    let mut total = Rational::zero();
    let nn = n as usize;
    for j1 in 0..=m1 {
        if j1 * nn + 1 > m1 {
            break;
        }
        let e1 = m1 - 1 - j1 * nn;
        for j2 in 0..=m2 {
            if j2 * nn + 1 > m2 {
                break;
            }
            let e2 = m2 - 1 - j2 * nn;
            let d = &log[e1 + 1][e2 + 1] * int((e1 as i64 + 1) * (e2 as i64 + 1));
            let c = Rational::from_integer(binomial_int(m1 as u64, j1 as u64) * binomial_int(m2 as u64, j2 as u64));
            total += c * d;
        }
    }
    if !total.is_integer() {
        return Err(CurveError::Descent(format!("non-integral (0,2) count {total}")));
    }
    Ok(total.to_integer())
}
