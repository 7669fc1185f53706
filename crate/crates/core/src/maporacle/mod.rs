//! Brute-force rooted hypermap counts from permutation pairs.
//!
//! White faces are the cycles of a fixed canonical `φ_W`; every black
//! `N`-gon gluing is a permutation `φ_B` with all cycles of length `N`.
//! Each transitive pair is one rooted hypermap, and its genus follows from
//! the number of vertices via the Euler formula.

mod perm;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::{int, ResidueAt, UniSeries};

pub use perm::Perm;
use perm::{cycle_count, transitive};

pub const DEFAULT_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle cap exceeded: {d} darts > cap {cap}")]
    CapExceeded { d: u32, cap: u32 },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("not a permutation: {0:?}")]
    InvalidPerm(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    #[serde(rename = "N")]
    pub n: u32,
    pub g: u32,
    pub degrees: Vec<u32>,
}

impl Profile {
    pub fn new(n: u32, g: u32, degrees: Vec<u32>) -> Result<Self, OracleError> {
        let p = Self { n, g, degrees };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.n < 2 {
            return Err(OracleError::InvalidProfile(format!("N must be at least 2, got {}", self.n)));
        }
        if self.degrees.is_empty() {
            return Err(OracleError::InvalidProfile("no white faces".into()));
        }
        if self.degrees.contains(&0) {
            return Err(OracleError::InvalidProfile("face degrees must be positive".into()));
        }
        Ok(())
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// `2g - 2 + n > 0`.
    pub fn is_stable(&self) -> bool {
        2 * self.g + self.degrees.len() as u32 > 2
    }
}

/// Which permutation's cycles count as vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// Cycles of `φ_W ∘ φ_B`.
    Standard,
    /// Cycles of `φ_B`.
    FaceVertexSwap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: u32,
    pub convention: Convention,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            convention: Convention::Standard,
        }
    }
}

/// Vertex count of the gluing `(φ_W, φ_B)`.
pub fn vertex_count(white: &Perm, black: &Perm, convention: Convention) -> usize {
    match convention {
        Convention::Standard => white.after(black).cycle_count(),
        Convention::FaceVertexSwap => black.cycle_count(),
    }
}

/// Transitive gluings against the canonical `φ_W`, binned by genus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GenusHistogram {
    pub by_genus: BTreeMap<u32, u64>,
    /// All transitive `φ_B`, including any whose vertex count gives no
    /// integral genus.
    pub transitive_total: u64,
}

struct Search<'a> {
    n: usize,
    white: &'a [usize],
    convention: Convention,
}

impl Search<'_> {
    /// Extends a partial `φ_B` by cycles rooted at the smallest free dart,
    /// accumulating `counts[V]`.
    fn fill(&self, b: &mut [usize], free: u64, counts: &mut [u64]) {
        if free == 0 {
            if transitive(self.white, b) {
                let v = match self.convention {
                    Convention::Standard => {
                        let prod: Vec<usize> = b.iter().map(|&i| self.white[i]).collect();
                        cycle_count(&prod)
                    }
                    Convention::FaceVertexSwap => cycle_count(b),
                };
                counts[v] += 1;
            }
            return;
        }
        let s = free.trailing_zeros() as usize;
        self.extend(b, free & !(1 << s), s, s, self.n - 1, counts);
    }

    fn extend(&self, b: &mut [usize], free: u64, start: usize, last: usize, left: usize, counts: &mut [u64]) {
        if left == 0 {
            b[last] = start;
            self.fill(b, free, counts);
            return;
        }
        let mut rest = free;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            b[last] = c;
            self.extend(b, free & !(1 << c), start, c, left - 1, counts);
        }
    }
}

/// Ordered choices of the `N-1` darts following dart 0 in its black cycle.
fn first_cycles(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(d: usize, k: usize, used: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 1..d {
            if used >> c & 1 == 0 {
                cur.push(c);
                rec(d, k, used | 1 << c, cur, out);
                cur.pop();
            }
        }
    }
    rec(d, n - 1, 1, &mut cur, &mut out);
    out
}

fn check_cap(d: u32, cap: u32) -> Result<(), OracleError> {
    if d > cap || d > 63 {
        Err(OracleError::CapExceeded { d, cap })
    } else {
        Ok(())
    }
}

/// Counts of transitive `φ_B` indexed by vertex count.
fn vertex_histogram(n: u32, degrees: &[u32], cfg: &OracleConfig) -> Result<Vec<u64>, OracleError> {
    let d: u32 = degrees.iter().sum();
    check_cap(d, cfg.cap)?;
    let d = d as usize;
    let n = n as usize;
    if d % n != 0 {
        return Ok(vec![0; d + 1]);
    }
    let white = Perm::canonical_cycles(degrees);
    let search = Search {
        n,
        white: white.raw(),
        convention: cfg.convention,
    };
    let all: u64 = (1u64 << d) - 1;
    let counts = first_cycles(d, n)
        .into_par_iter()
        .map(|first| {
            let mut b = vec![0usize; d];
            let mut free = all & !1;
            let mut last = 0;
            for &c in &first {
                b[last] = c;
                free &= !(1 << c);
                last = c;
            }
            b[last] = 0;
            let mut counts = vec![0u64; d + 1];
            search.fill(&mut b, free, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; d + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(counts)
}

fn genus_of(n: u32, degrees: &[u32], v: usize) -> Option<u32> {
    let d = degrees.iter().sum::<u32>() as i64;
    let twice = d + 2 - degrees.len() as i64 - d / n as i64 - v as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

pub fn genus_histogram(n: u32, degrees: &[u32], cfg: &OracleConfig) -> Result<GenusHistogram, OracleError> {
    Profile::new(n, 0, degrees.to_vec())?;
    let counts = vertex_histogram(n, degrees, cfg)?;
    let mut h = GenusHistogram::default();
    for (v, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        h.transitive_total += c;
        if let Some(g) = genus_of(n, degrees, v) {
            *h.by_genus.entry(g).or_insert(0) += c;
        }
    }
    Ok(h)
}

/// `RHM_{g; d_1, …, d_n}` with the default configuration.
pub fn enumerate_rhm(profile: &Profile) -> Result<u64, OracleError> {
    enumerate_rhm_with(profile, &OracleConfig::default())
}

pub fn enumerate_rhm_with(profile: &Profile, cfg: &OracleConfig) -> Result<u64, OracleError> {
    profile.validate()?;
    let h = genus_histogram(profile.n, &profile.degrees, cfg)?;
    Ok(h.by_genus.get(&profile.g).copied().unwrap_or(0))
}

/// `RHM_{0;k+1} = res_{p=0} (p^{N-1} + p^{-1})^{k+2} / (k+2)`.
pub fn rhm01_closed(n: u32, k: u32) -> BigInt {
    let f = UniSeries::from_terms("p", int(0), [(n as i64 - 1, int(1)), (-1, int(1))], None);
    let res = f
        .pow(k as i64 + 2)
        .and_then(|s| s.residue(ResidueAt::Zero))
        .expect("exact Laurent polynomial");
    let q = res / int(k as i64 + 2);
    if q.is_zero() {
        return BigInt::zero();
    }
    assert!(q.is_integer(), "non-integral genus-zero count");
    q.to_integer()
}

/// Whether `convention` reproduces [`rhm01_closed`] for `N ∈ {2,3,4}` and
/// every `k + 1 ≤ cap`.
pub fn calibration_holds(convention: Convention, cap: u32) -> Result<bool, OracleError> {
    let cfg = OracleConfig { cap, convention };
    for n in 2..=4 {
        for k in 0..cap {
            let got = enumerate_rhm_with(&Profile::new(n, 0, vec![k + 1])?, &cfg)?;
            if BigInt::from(got) != rhm01_closed(n, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
