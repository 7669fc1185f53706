use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::exactmath::EpsLaurent;

use super::partition::Partition;
use super::tau::CoefficientFamily;
use super::TauError;

#[derive(Clone, Debug, Serialize)]
pub struct PlueckerViolation {
    pub s: Vec<i64>,
    pub t: Vec<i64>,
    pub residual: EpsLaurent,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlueckerReport {
    pub n: u32,
    pub window: u32,
    pub relations_checked: u64,
    pub nontrivial: u64,
    pub violations: Vec<PlueckerViolation>,
}

impl PlueckerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sorted-descending Maya set of length `l`, as a partition.
fn set_partition(set: &BTreeSet<i64>) -> Option<Partition> {
    let m: Vec<i64> = set.iter().rev().copied().collect();
    Partition::from_maya(&m)
}

/// `Σ_{t ∈ T∖S} ± A_{S∪t} A_{T∖t}`, sign by the position of `t` in sorted
/// `T` and the number of elements of `S` above `t`. `None` if a term leaves
/// the window.
fn relation(
    s: &BTreeSet<i64>,
    t: &BTreeSet<i64>,
    table: &BTreeMap<Partition, EpsLaurent>,
) -> Option<(EpsLaurent, bool)> {
    let mut sum = EpsLaurent::zero();
    let mut any = false;
    for (j, &x) in t.iter().enumerate() {
        if s.contains(&x) {
            continue;
        }
        let mut su = s.clone();
        su.insert(x);
        let mut tm = t.clone();
        tm.remove(&x);
        let a = table.get(&set_partition(&su)?)?;
        let b = table.get(&set_partition(&tm)?)?;
        if a.is_zero() || b.is_zero() {
            continue;
        }
        any = true;
        let above = s.range(x + 1..).count();
        let term = a.mul(b);
        sum = if (j + above) % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    Some((sum, any))
}

/// Checks every quadratic Plücker relation whose terms all lie in the
/// window of `fam`.
pub fn pluecker_check(fam: &CoefficientFamily) -> Result<PlueckerReport, TauError> {
    let w = fam.window;
    let mut report = PlueckerReport {
        n: fam.n,
        window: w,
        relations_checked: 0,
        nontrivial: 0,
        violations: Vec::new(),
    };
    if w == 0 {
        return Ok(report);
    }
    let l = w as usize;
    let lo = -(l as i64);
    let hi = w as i64 - 1;
    let sets: Vec<BTreeSet<i64>> = fam
        .values
        .keys()
        .map(|p| p.maya(l).into_iter().collect())
        .collect();
    let mut ss: BTreeSet<BTreeSet<i64>> = BTreeSet::new();
    let mut ts: BTreeSet<BTreeSet<i64>> = BTreeSet::new();
    for set in &sets {
        for &x in set {
            let mut s = set.clone();
            s.remove(&x);
            ss.insert(s);
        }
        for x in lo..=hi {
            if !set.contains(&x) {
                let mut t = set.clone();
                t.insert(x);
                ts.insert(t);
            }
        }
    }
    // |λ| = Σ m_i + l(l+1)/2 for a Maya set of length l.
    let base = (l * (l + 1) / 2) as i64;
    let limit = w as i64 - base;
    for s in &ss {
        let s_sum: i64 = s.iter().sum();
        for t in &ts {
            let t_sum: i64 = t.iter().sum();
            let mut outside = t.iter().filter(|x| !s.contains(x));
            let Some(&min) = outside.next() else { continue };
            let max = outside.next_back().copied().unwrap_or(min);
            if s_sum + max > limit || t_sum - min > limit {
                continue;
            }
            let Some((sum, any)) = relation(s, t, &fam.values) else {
                continue;
            };
            report.relations_checked += 1;
            if any {
                report.nontrivial += 1;
            }
            if !sum.is_zero() {
                report.violations.push(PlueckerViolation {
                    s: s.iter().copied().collect(),
                    t: t.iter().copied().collect(),
                    residual: sum,
                });
            }
        }
    }
    Ok(report)
}
