use serde::{Deserialize, Serialize};

use super::OracleError;

/// Permutation of darts `1..=d`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    /// From one-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, OracleError> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut img = Vec::with_capacity(d);
        for &i in &images {
            if i == 0 || i > d || seen[i - 1] {
                return Err(OracleError::InvalidPerm(images.clone()));
            }
            seen[i - 1] = true;
            img.push(i - 1);
        }
        Ok(Self { img })
    }


    pub fn identity(d: usize) -> Self {
        Self { img: (0..d).collect() }
    }

    /// `(1…d_1)(d_1+1…d_1+d_2)…`.
    pub fn canonical_cycles(lengths: &[u32]) -> Self {
        let mut img = Vec::new();
        let mut start = 0;
        for &l in lengths {
            let l = l as usize;
            for j in 0..l {
                img.push(start + (j + 1) % l);
            }
            start += l;
        }
        Self { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// One-based images.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|i| i + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.img
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Self) -> Self {
        Self {
            img: other.img.iter().map(|&i| self.img[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            img[j] = i;
        }
        Self { img }
    }

    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.img)
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.img.len()];
        let mut out = Vec::new();
        for s in 0..self.img.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.img[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = OracleError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::from_images(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images()
    }
}

pub(crate) fn cycle_count(img: &[usize]) -> usize {
    let mut seen = 0u64;
    let mut count = 0;
    for s in 0..img.len() {
        if seen >> s & 1 == 1 {
            continue;
        }
        count += 1;
        let mut i = s;
        while seen >> i & 1 == 0 {
            seen |= 1 << i;
            i = img[i];
        }
    }
    count
}

/// Whether `⟨a, b⟩` acts transitively, by union-find over both generators.
pub(crate) fn transitive(a: &[usize], b: &[usize]) -> bool {
    let d = a.len();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = d;
    for gen in [a, b] {
        for (i, &j) in gen.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                comps -= 1;
            }
        }
    }
    comps <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_composition() {
        let w = Perm::canonical_cycles(&[2, 1]);
        assert_eq!(w.images(), vec![2, 1, 3]);
        assert_eq!(w.cycle_type(), vec![2, 1]);
        let b = Perm::from_images(vec![1, 3, 2]).unwrap();
        // apply b first: 1→1→2, 2→3→3, 3→2→1
        assert_eq!(w.after(&b).images(), vec![2, 3, 1]);
        assert_eq!(w.after(&w.inverse()), Perm::identity(3));
        assert!(Perm::from_images(vec![1, 1]).is_err());
        assert!(transitive(w.raw(), b.raw()));
        assert!(!transitive(w.raw(), Perm::identity(3).raw()));
    }
}
