use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::{int, EpsLaurent};

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let m = self.0.first().copied().unwrap_or(0);
        Self((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Contents `j - i` of the cells, row by row.
    pub fn contents(&self) -> impl Iterator<Item = i64> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as i64).map(move |j| j - i as i64))
    }

    /// Multiplicities `m_k` of each part size.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Beta numbers `λ_i + (L - i)` for `L ≥ len`.
    pub fn beta_set(&self, l: usize) -> Vec<u32> {
        (0..l)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + (l - 1 - i) as u32)
            .collect()
    }

    pub fn from_beta_set(beta: &[u32]) -> Self {
        let mut b = beta.to_vec();
        b.sort_unstable_by(|x, y| y.cmp(x));
        let l = b.len();
        Self::new((0..l).map(|i| b[i] - (l - 1 - i) as u32).collect())
    }

    /// Maya positions `λ_i - i`, `i = 1..=l`.
    pub fn maya(&self, l: usize) -> Vec<i64> {
        (0..l)
            .map(|i| self.0.get(i).copied().unwrap_or(0) as i64 - (i as i64 + 1))
            .collect()
    }

    /// Inverse of [`Self::maya`] for a strictly decreasing sequence.
    pub fn from_maya(m: &[i64]) -> Option<Self> {
        let parts: Option<Vec<u32>> = m
            .iter()
            .enumerate()
            .map(|(i, &x)| u32::try_from(x + i as i64 + 1).ok())
            .collect();
        let parts = parts?;
        parts.windows(2).all(|w| w[0] >= w[1]).then(|| Self::new(parts))
    }

    /// The `n`-core: remove `n`-rim hooks until none is left.
    pub fn core(&self, n: u32) -> Self {
        let l = self.len().div_ceil(n as usize) * n as usize;
        let mut beta = self.beta_set(l);
        beta.sort_unstable();
        loop {
            let mut moved = false;
            for i in 0..beta.len() {
                let b = beta[i];
                if b >= n && !beta.contains(&(b - n)) {
                    beta[i] = b - n;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        Self::from_beta_set(&beta)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;
    fn try_from(v: Vec<u32>) -> Result<Self, String> {
        if v.contains(&0) || v.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("not a partition: {v:?}"));
        }
        Ok(Self(v))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All partitions of `n`, largest first part first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `w`, by weight.
pub fn partitions_up_to(w: u32) -> Vec<Partition> {
    (0..=w).flat_map(partitions_of).collect()
}

/// `∏_{cells} (1 + ε·content)`.
pub fn content_product(lambda: &Partition) -> EpsLaurent {
    lambda.contents().fold(EpsLaurent::one(), |acc, c| {
        acc.mul(&EpsLaurent::from_terms([(0, int(1)), (1, int(c))]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_shapes() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let p = Partition::new(vec![1, 3, 2]);
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.conjugate(), p);
        assert_eq!(Partition::from_maya(&p.maya(5)), Some(p.clone()));
        assert_eq!(Partition::from_beta_set(&p.beta_set(4)), p);
    }

    #[test]
    fn content_examples() {
        assert_eq!(content_product(&Partition::empty()), EpsLaurent::one());
        let want = EpsLaurent::from_terms([(0, int(1)), (2, int(-1))]);
        assert_eq!(content_product(&Partition::new(vec![2, 1])), want);
        assert_eq!(content_product(&Partition::new(vec![2, 2])), want);
    }

    #[test]
    fn cores() {
        assert_eq!(Partition::new(vec![3, 2, 1]).core(2), Partition::new(vec![3, 2, 1]));
        assert!(Partition::new(vec![2, 1, 1]).core(2).is_empty());
        assert_eq!(Partition::new(vec![2]).core(3), Partition::new(vec![2]));
        assert!(Partition::new(vec![2, 1]).core(3).is_empty());
    }
}
