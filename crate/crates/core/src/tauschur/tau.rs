use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactmath::{factorial, int, EpsLaurent, Monomial, MultiSeries, Rational};

use super::partition::{content_product, partitions_of, partitions_up_to, Partition};
use super::schur::{character, schur_jt, schur_mn, z_mu};
use super::TauError;

/// `p̃_i = δ_{iN}/ε` for `i = 1..=w`.
pub fn tilde_powersums(n: u32, w: u32) -> Vec<EpsLaurent> {
    (1..=w)
        .map(|i| {
            if i == n {
                EpsLaurent::monomial(-1, int(1))
            } else {
                EpsLaurent::zero()
            }
        })
        .collect()
}

/// `A_λ = s_λ(p̃)·∏(1 + ε·content)` for every `|λ| ≤ W`.
#[derive(Clone, Debug)]
pub struct CoefficientFamily {
    pub n: u32,
    pub window: u32,
    pub values: BTreeMap<Partition, EpsLaurent>,
}

impl CoefficientFamily {
    pub fn new(n: u32, window: u32) -> Result<Self, TauError> {
        if n < 2 {
            return Err(TauError::InvalidN(n));
        }
        let p = tilde_powersums(n, window);
        let one = EpsLaurent::one();
        let values = partitions_up_to(window)
            .into_par_iter()
            .map(|l| {
                let s = schur_jt(&l, &p, &one);
                let a = if s.is_zero() { s } else { s.mul(&content_product(&l)) };
                (l, a)
            })
            .collect();
        Ok(Self { n, window, values })
    }

    pub fn get(&self, lambda: &Partition) -> Option<&EpsLaurent> {
        self.values.get(lambda)
    }

    /// Partitions whose `A_λ` disagrees between the two Schur routes.
    pub fn cross_check(&self) -> Vec<Partition> {
        let p = tilde_powersums(self.n, self.window);
        let one = EpsLaurent::one();
        self.values
            .par_iter()
            .filter(|(l, a)| {
                let s = schur_mn(l, &p, &one);
                let b = if s.is_zero() { s } else { s.mul(&content_product(l)) };
                &b != *a
            })
            .map(|(l, _)| l.clone())
            .collect()
    }
}

/// `𝒵` truncated at weight `W`, in `𝗍`-variables.
#[derive(Debug)]
pub struct TauTruncation {
    pub n: u32,
    pub cap: u32,
    pub series: MultiSeries,
    family: CoefficientFamily,
    log_t: OnceLock<Result<MultiSeries, TauError>>,
    log_p: OnceLock<Result<MultiSeries, TauError>>,
}

/// Sum `Σ_λ A_λ s_λ` in power-sum variables, `p_i ↦ scale(i)·v_i`.
fn assemble(fam: &CoefficientFamily, var: char, with_t: bool) -> MultiSeries {
    let blocks: Vec<Vec<(Monomial, EpsLaurent)>> = (0..=fam.window)
        .into_par_iter()
        .map(|w| {
            let lambdas: Vec<(Partition, &EpsLaurent)> = partitions_of(w)
                .into_iter()
                .filter_map(|l| {
                    let a = &fam.values[&l];
                    (!a.is_zero()).then_some((l, a))
                })
                .collect();
            let mut out = Vec::new();
            if lambdas.is_empty() {
                return out;
            }
            for mu in partitions_of(w) {
                let mut c = EpsLaurent::zero();
                for (l, a) in &lambdas {
                    let chi = character(l, &mu);
                    if chi != 0 {
                        c = c.add(&a.scale(&int(chi)));
                    }
                }
                if c.is_zero() {
                    continue;
                }
                let mut q = Rational::new(BigInt::one(), z_mu(&mu));
                let mut shift = 0;
                if with_t {
                    q *= Rational::from_integer(mu.parts().iter().map(|&k| BigInt::from(k)).product());
                    shift = -(mu.len() as i32);
                }
                let idx: Vec<u16> = mu.parts().iter().map(|&k| k as u16).collect();
                out.push((Monomial::from_indices(&idx), c.scale(&q).shift(shift)));
            }
            out
        })
        .collect();
    let mut s = MultiSeries::zero(var, fam.window);
    for (m, c) in blocks.into_iter().flatten() {
        s.add_term(m, &c);
    }
    s
}

/// Builds `𝒵 = Σ_{|λ| ≤ W} s_λ(p_i = i𝗍_i/ε)·A_λ`.
pub fn tau_z(n: u32, cap: u32) -> Result<TauTruncation, TauError> {
    if cap < n {
        return Err(TauError::CapTooSmall { n, cap });
    }
    let family = CoefficientFamily::new(n, cap)?;
    let series = assemble(&family, 't', true);
    Ok(TauTruncation {
        n,
        cap,
        series,
        family,
        log_t: OnceLock::new(),
        log_p: OnceLock::new(),
    })
}

fn multiplicity_factor(degrees: &[u32]) -> BigInt {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &d in degrees {
        *counts.entry(d).or_default() += 1;
    }
    counts.values().map(|&m| factorial(m)).product()
}

impl TauTruncation {
    pub fn family(&self) -> &CoefficientFamily {
        &self.family
    }

    pub fn log(&self) -> Result<&MultiSeries, TauError> {
        self.log_t
            .get_or_init(|| self.series.log().map_err(TauError::from))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `log 𝒵` with `𝗍_i = ε p_i / i` substituted back.
    pub fn log_powersum(&self) -> Result<&MultiSeries, TauError> {
        self.log_p
            .get_or_init(|| {
                assemble(&self.family, 'p', false)
                    .log()
                    .map_err(TauError::from)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn check(&self, degrees: &[u32]) -> Result<Monomial, TauError> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(TauError::Profile(format!("degrees must be positive: {degrees:?}")));
        }
        let w: u32 = degrees.iter().sum();
        if w > self.cap {
            return Err(TauError::WeightAboveCap { weight: w, cap: self.cap });
        }
        let idx: Vec<u16> = degrees.iter().map(|&d| d as u16).collect();
        Ok(Monomial::from_indices(&idx))
    }

    /// Rooted hypermap count from `[ε^{2g-2} ∏𝗍_d] log 𝒵 × ∏ m_j!`.
    pub fn rhm(&self, g: u32, degrees: &[u32]) -> Result<BigInt, TauError> {
        let m = self.check(degrees)?;
        let c = self.log()?.coeff(&m).coeff(2 * g as i32 - 2);
        let v = c * Rational::from_integer(multiplicity_factor(degrees));
        if !v.is_integer() || v.is_negative() {
            return Err(TauError::NotCount(v.to_string()));
        }
        Ok(v.to_integer())
    }

    /// Orbifold strictly monotone Hurwitz number:
    /// `[ε^{2g-2+n} ∏𝗉_d] log 𝒵 × ∏ m_j!`, so that `osmh·∏d = rhm`.
    pub fn osmh(&self, g: u32, degrees: &[u32]) -> Result<Rational, TauError> {
        let m = self.check(degrees)?;
        let e = 2 * g as i32 - 2 + degrees.len() as i32;
        let c = self.log_powersum()?.coeff(&m).coeff(e);
        Ok(c * Rational::from_integer(multiplicity_factor(degrees)))
    }

    /// Monomials of `log 𝒵` carrying an ε-power outside `{-2, 0, 2, …}`.
    pub fn parity_violations(&self) -> Result<Vec<(Monomial, i32)>, TauError> {
        let mut out = Vec::new();
        for (m, c) in self.log()?.terms() {
            for (k, _) in c.terms() {
                if k < -2 || k % 2 != 0 {
                    out.push((m.clone(), k));
                }
            }
        }
        Ok(out)
    }

    /// Monomials of weight `≤ W` that differ between `self` and a
    /// truncation at a larger cap.
    pub fn homogeneity_defects(&self, larger: &TauTruncation) -> Vec<Monomial> {
        let trimmed = larger.series.truncate(self.cap);
        let mut out: Vec<Monomial> = self
            .series
            .terms()
            .filter(|(m, c)| &trimmed.coeff(m) != *c)
            .map(|(m, _)| m.clone())
            .collect();
        out.extend(
            trimmed
                .terms()
                .filter(|(m, _)| self.series.coeff(m).is_zero())
                .map(|(m, _)| m.clone()),
        );
        out
    }
}

/// One-shot `rhm` with a truncation sized to the profile.
pub fn rhm_from_tau(n: u32, g: u32, degrees: &[u32]) -> Result<BigInt, TauError> {
    let w: u32 = degrees.iter().sum();
    if w % n != 0 {
        return Ok(BigInt::zero());
    }
    tau_z(n, w.max(n))?.rhm(g, degrees)
}

/// One-shot `osmh` with a truncation sized to the profile.
pub fn osmh_from_tau(n: u32, g: u32, degrees: &[u32]) -> Result<Rational, TauError> {
    let w: u32 = degrees.iter().sum();
    if w % n != 0 {
        return Ok(Rational::zero());
    }
    tau_z(n, w.max(n))?.osmh(g, degrees)
}

/// One row of the `osmh`/`rhm` side-by-side table.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub g: u32,
    pub degrees: Vec<u32>,
    pub rhm: String,
    pub osmh: String,
    pub osmh_times_prod: String,
    pub matches_prod_factor: bool,
}

impl TauTruncation {
    pub fn ratio_row(&self, g: u32, degrees: &[u32]) -> Result<RatioRow, TauError> {
        let rhm = self.rhm(g, degrees)?;
        let osmh = self.osmh(g, degrees)?;
        let prod: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
        let scaled = &osmh * Rational::from_integer(prod);
        Ok(RatioRow {
            g,
            degrees: degrees.to_vec(),
            rhm: rhm.to_string(),
            osmh: crate::exactmath::to_exact_string(&osmh),
            osmh_times_prod: crate::exactmath::to_exact_string(&scaled),
            matches_prod_factor: scaled == Rational::from_integer(rhm),
        })
    }
}
