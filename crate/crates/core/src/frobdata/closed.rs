//! Flat-frame basis functions and the identities linking `S` to hypermap
//! counts.

use num_traits::Zero;
use serde::Serialize;

use crate::exactmath::{factorial, int, Rational, UniSeries};

use super::frame::{check_n, eta};
use super::smatrix::s_entry;
use super::FrobError;

type Series = UniSeries<Rational>;

/// `ξ̃^α(z)` expanded at `z = 0` modulo `z^trunc`.
pub fn tilde_xi(n: u32, alpha: u32, trunc: i64) -> Result<Series, FrobError> {
    check_n(n)?;
    if !(1..=n).contains(&alpha) {
        return Err(FrobError::IndexOutOfRange { n, alpha, beta: 1 });
    }
    let nn = n as i64;
    let (coef, e) = match alpha {
        1 => (int(1), 1),
        a if a == n => (int(1), 0),
        a => (int(nn - 1), a as i64),
    };
    let den = Series::from_terms("z", int(0), [(0, int(1)), (nn, int(1 - nn))], None).with_prec(trunc);
    Ok(Series::monomial("z", coef, e, None).mul(&den.inv()?).with_prec(trunc))
}

/// Both sides of the residue identity for column `β = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueSides {
    #[serde(serialize_with = "crate::ser::rat")]
    pub left: Rational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub right: Rational,
}

/// Left side `x^{k+1}/(k+1)! d(-d/dx)^a ξ̃^α` with the residue taken on the
/// expansion at `z = 0`, right side from [`s_entry`].
pub fn s_column_residue_sides(n: u32, alpha: u32, a: u32, k: i64) -> Result<ResidueSides, FrobError> {
    check_n(n)?;
    if k < -1 {
        return Err(FrobError::Domain("k must be at least -1".into()));
    }
    let nn = n as i64;
    let prec = k + 2 * a as i64 + nn + 4;
    let mut h = tilde_xi(n, alpha, prec)?;
    // x = z^{N-1} + 1/z, 1/x' = -z^2 / (1 - (N-1) z^N)
    let x = Series::from_terms("z", int(0), [(nn - 1, int(1)), (-1, int(1))], None);
    let den = Series::from_terms("z", int(0), [(0, int(1)), (nn, int(1 - nn))], None).with_prec(prec);
    let dx_inv = Series::monomial("z", int(-1), 2, None).mul(&den.inv()?);
    for _ in 0..a {
        h = h.derivative().mul(&dx_inv).neg();
    }
    let integrand = x.pow(k + 1)?.mul(&h.derivative());
    let left = integrand.coeff(-1)? / Rational::from_integer(factorial((k + 1) as u32));
    let right = if (a as i64) > k {
        Rational::zero()
    } else {
        s_entry(n, (k - a as i64) as u32, alpha, 1)?
    };
    Ok(ResidueSides { left, right })
}

pub fn s_column_residue_check(n: u32, alpha: u32, a: u32, k: i64) -> Result<bool, FrobError> {
    let s = s_column_residue_sides(n, alpha, a, k)?;
    Ok(s.left == s.right)
}

/// `η_{unit,α} (S_{k+2})^α_1`, with unit index `N-1`.
pub fn unstable01(n: u32, k: u32) -> Result<Rational, FrobError> {
    let et = eta(n)?;
    let unit = n as usize - 1;
    let mut acc = Rational::zero();
    for alpha in 1..=n as usize {
        let w = et.get(unit, alpha);
        if !w.is_zero() {
            acc += w * s_entry(n, k + 2, alpha as u32, 1)?;
        }
    }
    Ok(acc)
}

/// `[w1^k1 w2^k2]` of `(-η_11 + Σ w1^n1 w2^n2 η_{αβ} S_{n1}^α_1 S_{n2}^β_1) / (w1 + w2)`.
pub fn unstable02(n: u32, k1: u32, k2: u32) -> Result<Rational, FrobError> {
    let et = eta(n)?;
    let nn = n as usize;
    let d = (k1 + k2 + 1) as usize;
    let cols: Vec<Vec<Rational>> = (0..=d)
        .map(|m| (1..=n).map(|a| s_entry(n, m as u32, a, 1)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let g = |i: usize, j: usize| -> Rational {
        let mut s = Rational::zero();
        for a in 0..nn {
            for b in 0..nn {
                let e = &et.entries[a][b];
                if !e.is_zero() {
                    s += e * &cols[i][a] * &cols[j][b];
                }
            }
        }
        if i == 0 && j == 0 {
            s -= et.get(1, 1);
        }
        s
    };
    if !g(0, 0).is_zero() {
        return Err(FrobError::NotDivisible);
    }
    // G_{D-l,l} = H_{D-1-l,l} + H_{D-l,l-1} on the total-degree-D slice.
    let mut h = vec![Rational::zero(); d];
    let mut prev = Rational::zero();
    for l in 0..d {
        let v = g(d - l, l) - &prev;
        h[l] = v.clone();
        prev = v;
    }
    if g(0, d) != prev {
        return Err(FrobError::NotDivisible);
    }
    Ok(h[k2 as usize].clone())
}
