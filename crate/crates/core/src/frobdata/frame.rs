use serde::Serialize;

use crate::exactmath::{int, rat, Rational};

use super::polar::{sum_full_period, ExactPolar};
use super::FrobError;

pub(crate) fn check_n(n: u32) -> Result<(), FrobError> {
    if n < 2 {
        Err(FrobError::InvalidN(n))
    } else {
        Ok(())
    }
}

/// Flat metric at the special point, indices `1..=N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaMetric {
    pub n: u32,
    #[serde(serialize_with = "crate::ser::rat_matrix")]
    pub entries: Vec<Vec<Rational>>,
}

impl EtaMetric {
    pub fn get(&self, alpha: usize, beta: usize) -> &Rational {
        &self.entries[alpha - 1][beta - 1]
    }
}

pub fn eta(n: u32) -> Result<EtaMetric, FrobError> {
    check_n(n)?;
    let nn = n as usize;
    let mut entries = vec![vec![int(0); nn]; nn];
    for alpha in 1..=nn {
        let beta = nn + 1 - alpha;
        entries[alpha - 1][beta - 1] = if alpha == 1 || alpha == nn {
            int(1)
        } else {
            rat(1, n as i64 - 1)
        };
    }
    Ok(EtaMetric { n, entries })
}

/// Diagonal of `μ` and the charge `d`.
pub fn mu_charge(n: u32) -> Result<(Vec<Rational>, Rational), FrobError> {
    check_n(n)?;
    let n = n as i64;
    let mu = (1..=n).map(|a| rat(n + 1 - 2 * a, 2 * (n - 1))).collect();
    Ok((mu, rat(n - 3, n - 1)))
}

/// Critical points, canonical coordinates, `Δ^{1/2}` and `Ψ` at the special
/// point, all indexed by `i = 1..=N`.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalFrame {
    pub n: u32,
    pub c: Vec<ExactPolar>,
    pub u: Vec<ExactPolar>,
    pub delta_half: Vec<ExactPolar>,
    /// `psi[i-1][alpha-1] = Ψ^i_α`.
    pub psi: Vec<Vec<ExactPolar>>,
    pub unit_index: u32,
}

pub fn canonical_frame(n: u32) -> Result<CanonicalFrame, FrobError> {
    check_n(n)?;
    let ni = n as i64;
    let mut c = Vec::new();
    let mut u = Vec::new();
    let mut delta_half = Vec::new();
    let mut psi = Vec::new();
    for i in 1..=ni {
        c.push(ExactPolar::new(n, int(1), rat(-1, ni), int(0), rat(i, ni)));
        u.push(ExactPolar::new(n, int(ni), rat(1, ni) - int(1), int(0), rat(-i, ni)));
        delta_half.push(ExactPolar::new(n, int(1), rat(3, 2 * ni), rat(1, 2), rat(-3 * i, 2 * ni)));
        let row = (1..=ni)
            .map(|alpha| {
                if alpha == 1 {
                    ExactPolar::new(n, int(1), rat(1, 2 * ni), rat(-1, 2), rat(-i, 2 * ni))
                } else {
                    ExactPolar::new(
                        n,
                        int(1),
                        rat(-2 * ni - 1 + 2 * alpha, 2 * ni),
                        rat(-1, 2),
                        rat(i * (2 * ni + 1 - 2 * alpha), 2 * ni),
                    )
                }
            })
            .collect();
        psi.push(row);
    }
    Ok(CanonicalFrame {
        n,
        c,
        u,
        delta_half,
        psi,
        unit_index: n - 1,
    })
}

impl CanonicalFrame {
    /// `x(c_i) = c_i^{N-1} + c_i^{-1}`.
    pub fn x_at_critical(&self, i: usize) -> Result<ExactPolar, FrobError> {
        let c = &self.c[i - 1];
        c.powi(self.n as i64 - 1)?
            .try_add(&c.powi(-1)?)
            .ok_or_else(|| FrobError::Arithmetic("x(c_i) terms are not parallel".into()))
    }

    /// `x''(c_i) = (N-1)(N-2) c_i^{N-3} + 2 c_i^{-3}`.
    pub fn x2_at_critical(&self, i: usize) -> Result<ExactPolar, FrobError> {
        let n = self.n as i64;
        let c = &self.c[i - 1];
        let a = c.powi(n - 3)?.mul(&ExactPolar::from_rational(self.n, int((n - 1) * (n - 2))));
        let b = c.powi(-3)?.mul(&ExactPolar::from_rational(self.n, int(2)));
        a.try_add(&b)
            .ok_or_else(|| FrobError::Arithmetic("x''(c_i) terms are not parallel".into()))
    }

    /// `x'(c_i) = (N-1) c_i^{N-2} - c_i^{-2}`.
    pub fn x1_at_critical(&self, i: usize) -> Result<ExactPolar, FrobError> {
        let n = self.n as i64;
        let c = &self.c[i - 1];
        let a = c.powi(n - 2)?.mul(&ExactPolar::from_rational(self.n, int(n - 1)));
        a.try_add(&c.powi(-2)?.neg())
            .ok_or_else(|| FrobError::Arithmetic("x'(c_i) terms are not parallel".into()))
    }

    /// `∂u^i/∂t^α`.
    pub fn du_dt(&self, i: usize, alpha: usize) -> Result<ExactPolar, FrobError> {
        let c = &self.c[i - 1];
        if alpha == 1 {
            c.powi(-2)
        } else {
            c.powi(self.n as i64 - 1 - alpha as i64)
        }
    }

    /// `Σ_i Ψ^i_α Ψ^i_β` via the full-period root-of-unity rule.
    pub fn psi_gram(&self, alpha: usize, beta: usize) -> Result<ExactPolar, FrobError> {
        let terms: Vec<ExactPolar> = self
            .psi
            .iter()
            .map(|row| row[alpha - 1].mul(&row[beta - 1]))
            .collect();
        sum_full_period(&terms)
    }

    /// Branch bookkeeping for `Δ_j^{1/2}` against `sqrt(x''(c_j))`.
    pub fn delta_branch(&self, j: usize) -> Result<DeltaBranch, FrobError> {
        let x2 = self.x2_at_critical(j)?;
        let d = &self.delta_half[j - 1];
        let squares_match = d.mul(d) == x2;
        let principal = x2.sqrt_principal()?;
        let sign = if &principal == d {
            1
        } else if principal.neg() == *d {
            -1
        } else {
            0
        };
        Ok(DeltaBranch {
            j,
            squares_match,
            sign_vs_principal: sign,
        })
    }
}

/// Outcome of the `Δ` normalization check at one critical point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaBranch {
    pub j: usize,
    /// `(Δ_j^{1/2})² = x''(c_j)`.
    pub squares_match: bool,
    /// `+1` if `Δ_j^{1/2}` is the principal root of `x''(c_j)`, `-1` if it is
    /// the other root, `0` if neither.
    pub sign_vs_principal: i8,
}

impl DeltaBranch {
    pub fn passes(&self) -> bool {
        self.squares_match && self.sign_vs_principal != 0
    }
}
