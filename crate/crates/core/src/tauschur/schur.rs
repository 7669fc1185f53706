//! Schur functions in power-sum variables: characters by the
//! Murnaghan–Nakayama rule and Jacobi–Trudi determinants.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::exactmath::{factorial, int, Rational, Ring};

use super::partition::{partitions_of, Partition};

/// `χ^λ(μ)` by removing rim hooks of length `μ_1, μ_2, …` from `λ`.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.weight(), mu.weight(), "character needs equal weights");
    let mut memo = HashMap::new();
    let beta = lambda.beta_set(lambda.len());
    mn(beta, mu.parts(), &mut memo)
}

fn mn(beta: Vec<u32>, mu: &[u32], memo: &mut HashMap<(Vec<u32>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut next = beta.clone();
        next[i] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `z_μ = ∏ k^{m_k} m_k!`.
pub fn z_mu(mu: &Partition) -> BigInt {
    mu.multiplicities()
        .iter()
        .map(|&(k, m)| BigInt::from(k).pow(m) * factorial(m))
        .product()
}

/// Character table of `S_w`: `table[λ][μ]` over [`partitions_of`]`(w)`.
pub fn character_table(w: u32) -> (Vec<Partition>, Vec<Vec<i64>>) {
    let parts = partitions_of(w);
    let table = parts
        .iter()
        .map(|l| parts.iter().map(|m| character(l, m)).collect())
        .collect();
    (parts, table)
}

/// `s_λ = Σ_μ χ^λ(μ) p_μ / z_μ` with `p[k-1] = p_k`.
pub fn schur_mn<C: Ring>(lambda: &Partition, p: &[C], one: &C) -> C {
    let w = lambda.weight();
    let mut acc = one.zero_like();
    for mu in partitions_of(w) {
        let chi = character(lambda, &mu);
        if chi == 0 {
            continue;
        }
        let mut term = one.clone();
        for &k in mu.parts() {
            term = term.times(&p[k as usize - 1]);
        }
        let coef = Rational::new(BigInt::from(chi), z_mu(&mu));
        acc = acc.plus(&term.scale(&coef));
    }
    acc
}

/// `h_0..=h_w` from `k h_k = Σ_{i=1}^k p_i h_{k-i}`.
pub fn complete_homogeneous<C: Ring>(p: &[C], w: usize, one: &C) -> Vec<C> {
    let mut h = vec![one.clone()];
    for k in 1..=w {
        let mut s = one.zero_like();
        for i in 1..=k {
            s = s.plus(&p[i - 1].times(&h[k - i]));
        }
        h.push(s.scale(&Rational::new(1.into(), (k as i64).into())));
    }
    h
}

/// Division-free determinant by dynamic programming over used columns.
pub fn det<C: Ring>(m: &[Vec<C>], one: &C) -> C {
    let l = m.len();
    if l == 0 {
        return one.clone();
    }
    let mut dp: HashMap<u32, C> = HashMap::from([(0u32, one.clone())]);
    for row in m {
        let mut next: HashMap<u32, C> = HashMap::new();
        for (mask, v) in &dp {
            for (j, a) in row.iter().enumerate() {
                if mask >> j & 1 == 1 || a.vanishes() {
                    continue;
                }
                let inv = (mask >> (j + 1)).count_ones();
                let mut term = v.times(a);
                if inv % 2 == 1 {
                    term = term.negate();
                }
                let e = next.entry(mask | 1 << j).or_insert_with(|| one.zero_like());
                *e = e.plus(&term);
            }
        }
        dp = next;
    }
    dp.remove(&((1u32 << l) - 1)).unwrap_or_else(|| one.zero_like())
}

/// `s_λ = det[h_{λ_i - i + j}]`.
pub fn schur_jt<C: Ring>(lambda: &Partition, p: &[C], one: &C) -> C {
    let l = lambda.len();
    let h = complete_homogeneous(p, lambda.weight() as usize, one);
    let m: Vec<Vec<C>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = lambda.parts()[i] as i64 - i as i64 + j as i64;
                    if k < 0 {
                        one.zero_like()
                    } else {
                        h[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    det(&m, one)
}

/// Number of standard tableaux, `χ^λ(1^w)`, as a rational.
pub fn dimension(lambda: &Partition) -> Rational {
    int(character(lambda, &Partition::new(vec![1; lambda.weight() as usize])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, EpsLaurent};

    #[test]
    fn small_characters() {
        let (parts, t) = character_table(3);
        assert_eq!(parts, partitions_of(3));
        assert_eq!(t, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
        assert_eq!(dimension(&Partition::new(vec![3, 2])), int(5));
    }

    #[test]
    fn n2_specialization() {
        let p = vec![EpsLaurent::zero(), EpsLaurent::monomial(-1, int(1)), EpsLaurent::zero()];
        let one = EpsLaurent::one();
        let s2 = schur_jt(&Partition::new(vec![2]), &p, &one);
        assert_eq!(s2, EpsLaurent::monomial(-1, rat(1, 2)));
        assert_eq!(schur_jt(&Partition::new(vec![1, 1]), &p, &one), EpsLaurent::monomial(-1, rat(-1, 2)));
        assert!(schur_jt(&Partition::new(vec![1]), &p, &one).is_zero());
        assert_eq!(schur_mn(&Partition::new(vec![2]), &p, &one), s2);
    }

    #[test]
    fn determinant() {
        let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(det(&m, &int(1)), int(1));
        let m3 = vec![
            vec![int(0), int(1), int(2)],
            vec![int(1), int(0), int(3)],
            vec![int(4), int(-3), int(8)],
        ];
        assert_eq!(det(&m3, &int(1)), int(-2));
    }
}
