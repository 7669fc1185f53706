//! Calibration matrices `S_m` at the special point.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use crate::exactmath::{factorial, harmonic, int, rat, Rational, UniSeries};

use super::frame::{check_n, eta};
use super::FrobError;

type Series = UniSeries<Rational>;

/// `F^{s0}` for `s0 = -(β-1)/(N-1)` written as `u^{-K0} (1 + u^N)^{s0}` in
/// `u = 1/p`; only the binomial factor is cached.
fn fractional_factor(n: u32, beta: u32, prec: i64) -> Result<Series, FrobError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Series>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(n, beta)) {
        if s.prec().is_none_or(|p| p >= prec) {
            return Ok(s.clone());
        }
    }
    let s0 = rat(-(beta as i64 - 1), n as i64 - 1);
    let un = Series::monomial("u", int(1), n as i64, None);
    let g = un.binomial_series(&s0, prec)?;
    cache.lock().unwrap().insert((n, beta), g.clone());
    Ok(g)
}

/// `F = p^{N-1} + p^{-1}` written in `u = 1/p`.
fn f_in_u(n: u32) -> Series {
    Series::from_terms("u", int(0), [(1 - n as i64, int(1)), (1, int(1))], None)
}

fn f_in_p(n: u32) -> Series {
    Series::from_terms("p", int(0), [(n as i64 - 1, int(1)), (-1, int(1))], None)
}

/// `res_{p=∞} p^e F^{m-(β-1)/(N-1)} dp`.
fn res_inf(n: u32, e: i64, m: u32, beta: u32) -> Result<Rational, FrobError> {
    let nn = n as i64;
    let k0 = -(beta as i64 - 1);
    let needed = 2 + e + (nn - 1) * m as i64 + k0;
    let prec = needed.max((nn - 1) * (m as i64 + 2) + 2);
    let g = fractional_factor(n, beta, prec)?;
    let fm = f_in_u(n).pow(m as i64)?;
    // p^e F^m F^{s0} = u^{-e} · F^m(u) · u^{-K0} · G(u)
    let prod = fm.mul(&g).shift(-e - k0);
    // The p^{-1} coefficient is the u^1 coefficient; res at infinity is its
    // negative.
    Ok(-prod.coeff(1)?)
}

fn flip_to_u(l: &Series) -> Series {
    Series::from_terms("u", int(0), l.terms().map(|(e, c)| (-e, c.clone())).collect::<Vec<_>>(), None)
}

/// Formal `[p^{-1}]` of `L · S` for a Laurent polynomial `L` in `p` and a
/// power series `S` in `p`.
fn res0_p(l: &Series, s: &Series) -> Result<Rational, FrobError> {
    Ok(l.mul(s).coeff(-1)?)
}

/// Formal `[p^{-1}]` of `L · S` for `S` a power series in `u = 1/p`.
fn res0_u(l: &Series, s: &Series) -> Result<Rational, FrobError> {
    Ok(flip_to_u(l).mul(s).coeff(1)?)
}

struct LogSeries {
    a: Series,
    b: Series,
    c: Series,
    d: Series,
}

fn log_series(n: u32, prec: i64) -> Result<LogSeries, FrobError> {
    let one_plus = |var: &'static str| {
        Series::from_terms(var, int(0), [(0, int(1)), (n as i64, int(1))], None).with_prec(prec)
    };
    Ok(LogSeries {
        a: one_plus("p").log()?,
        b: one_plus("u").log()?,
        c: one_plus("p").inv()?,
        d: one_plus("u").inv()?,
    })
}

fn p_mono(e: i64) -> Series {
    Series::monomial("p", int(1), e, None)
}

/// `res_{p=0} p^e m F^{m-1} ((N-1)/N A + B/N - h(m))`.
fn log_term(n: u32, m: u32, e: i64, ls: &LogSeries) -> Result<Rational, FrobError> {
    if m == 0 {
        return Ok(Rational::zero());
    }
    let nn = n as i64;
    let l = p_mono(e).mul(&f_in_p(n).pow(m as i64 - 1)?);
    let val = rat(nn - 1, nn) * res0_p(&l, &ls.a)? + rat(1, nn) * res0_u(&l, &ls.b)?
        - harmonic(m) * l.coeff(-1)?;
    Ok(val * int(m as i64))
}

fn last_column(n: u32, m: u32, alpha: u32) -> Result<Rational, FrobError> {
    let nn = n as i64;
    let prec = nn * (m as i64 + 2) + 2;
    let ls = log_series(n, prec)?;
    let fm = f_in_p(n).pow(m as i64)?;
    let mf = Rational::from_integer(factorial(m));
    let a = alpha as i64;
    if alpha == n {
        let first = rat(nn, nn - 1) / &mf * log_term(n, m, -2, &ls)?;
        let second = -res0_p(&fm.mul(&p_mono(nn - 1)), &ls.c)? + res0_u(&fm.mul(&p_mono(-1)), &ls.d)?
            + rat(nn, nn - 1) * res0_u(&fm.mul(&p_mono(-nn - 1)), &ls.d)?;
        return Ok(first + second / mf);
    }
    let pref = if alpha == 1 {
        rat(nn, nn - 1) / mf
    } else {
        int(nn) / mf
    };
    let t1 = log_term(n, m, a - 2, &ls)?;
    let t2 = rat(nn - 1, nn) * res0_p(&fm.mul(&p_mono(a - 1)), &ls.c)?
        + rat(1, nn) * res0_u(&fm.mul(&p_mono(a - 1 - nn)), &ls.d)?;
    Ok(pref * (t1 + t2))
}

/// `(S_m)^α_β` at the special point.
pub fn s_entry(n: u32, m: u32, alpha: u32, beta: u32) -> Result<Rational, FrobError> {
    check_n(n)?;
    if !(1..=n).contains(&alpha) || !(1..=n).contains(&beta) {
        return Err(FrobError::IndexOutOfRange { n, alpha, beta });
    }
    if beta == n {
        return last_column(n, m, alpha);
    }
    let nn = n as i64;
    let edge = alpha == 1 || alpha == n;
    let e = match alpha {
        1 => -1,
        a if a == n => -2,
        a => a as i64 - 2,
    };
    let res = res_inf(n, e, m, beta)?;
    let pref = if beta == 1 {
        let mf = Rational::from_integer(factorial(m));
        if edge {
            -int(1) / mf
        } else {
            -int(nn - 1) / mf
        }
    } else {
        let shift = rat(nn - beta as i64, nn - 1);
        let prod = (0..m as i64).fold(int(1), |acc, k| acc * (int(k) + &shift));
        if edge {
            -int(1) / (int(nn - 1) * prod)
        } else {
            -int(1) / prod
        }
    };
    Ok(pref * res)
}

/// All `S_m`, `m = 0..=m_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SMatrixTable {
    pub n: u32,
    pub m_max: u32,
    /// `entries[m][α-1][β-1]`.
    #[serde(serialize_with = "crate::ser::rat_tensor")]
    pub entries: Vec<Vec<Vec<Rational>>>,
}

impl SMatrixTable {
    pub fn build(n: u32, m_max: u32) -> Result<Self, FrobError> {
        check_n(n)?;
        let mut entries = Vec::new();
        for m in 0..=m_max {
            let mut mat = Vec::new();
            for alpha in 1..=n {
                let row = (1..=n).map(|beta| s_entry(n, m, alpha, beta)).collect::<Result<Vec<_>, _>>()?;
                mat.push(row);
            }
            entries.push(mat);
        }
        Ok(Self { n, m_max, entries })
    }

    pub fn get(&self, m: u32, alpha: u32, beta: u32) -> &Rational {
        &self.entries[m as usize][alpha as usize - 1][beta as usize - 1]
    }

    /// For each `k ≤ m_max`, whether `Σ_m (-1)^m S_m^T η S_{k-m} = δ_{k0} η`.
    pub fn symplectic_report(&self) -> Result<Vec<(u32, bool)>, FrobError> {
        let et = eta(self.n)?;
        let nn = self.n as usize;
        let mut out = Vec::new();
        for k in 0..=self.m_max {
            let mut acc = vec![vec![Rational::zero(); nn]; nn];
            for m in 0..=k {
                let sign = if m % 2 == 0 { int(1) } else { int(-1) };
                let a = &self.entries[m as usize];
                let b = &self.entries[(k - m) as usize];
                for i in 0..nn {
                    for j in 0..nn {
                        let mut s = Rational::zero();
                        for p in 0..nn {
                            for q in 0..nn {
                                s += &a[p][i] * &et.entries[p][q] * &b[q][j];
                            }
                        }
                        acc[i][j] += s * &sign;
                    }
                }
            }
            let ok = (0..nn).all(|i| {
                (0..nn).all(|j| {
                    let want = if k == 0 { et.entries[i][j].clone() } else { Rational::zero() };
                    acc[i][j] == want
                })
            });
            out.push((k, ok));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::binomial;

    /// `res_{p=∞} p^e F^s dp = -binom(s, k)` with `k = (e+1+(N-1)s)/N`.
    fn closed_form_res_inf(n: u32, e: i64, s: &Rational) -> Rational {
        let num = int(e + 1) + int(n as i64 - 1) * s;
        let k = num / int(n as i64);
        if !k.is_integer() || k < int(0) {
            return int(0);
        }
        let k: u32 = k.to_integer().try_into().unwrap();
        -binomial(s, k)
    }

    #[test]
    fn residue_at_infinity_matches_binomial_closed_form() {
        for n in 2..=5u32 {
            for beta in 1..n {
                for m in 0..6u32 {
                    for e in -2..=(n as i64 - 3) {
                        let s = int(m as i64) - rat(beta as i64 - 1, n as i64 - 1);
                        assert_eq!(res_inf(n, e, m, beta).unwrap(), closed_form_res_inf(n, e, &s), "n={n} b={beta} m={m} e={e}");
                    }
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(s_entry(3, 1, 2, 1).unwrap(), int(2));
        let t = SMatrixTable::build(2, 1).unwrap();
        assert_eq!(t.entries[1], vec![vec![int(0), int(0)], vec![int(1), int(0)]]);
        assert!(s_entry(3, 0, 4, 1).is_err());
    }

    #[test]
    fn identity_at_m0() {
        for n in 2..=6 {
            let t = SMatrixTable::build(n, 0).unwrap();
            for a in 1..=n {
                for b in 1..=n {
                    let want = if a == b { int(1) } else { int(0) };
                    assert_eq!(t.get(0, a, b), &want, "n={n} a={a} b={b}");
                }
            }
        }
    }
}
