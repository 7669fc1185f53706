//! Dense linear algebra over Q and polynomial helpers over Q.

use num_traits::{One, Zero};

use super::Rational;

/// Solves `A x = b` for square nonsingular `A` (rows of `a`).
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Given vectors `v_0, v_1, ...` (all the same length), finds the first `k`
/// with `v_k` in the span of the earlier ones and returns `(k, c)` with
/// `v_k = Σ_{i<k} c_i v_i`.
pub fn first_dependency(vectors: &[Vec<Rational>]) -> Option<(usize, Vec<Rational>)> {
    for k in 1..=vectors.len() {
        if k == vectors.len() {
            return None;
        }
        // Least squares is overkill; reduce v_k against an echelon basis of
        // the previous vectors while tracking combinations.
        let dim = vectors[0].len();
        let mut basis: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::new();
        let mut dependent = None;
        for (i, v) in vectors.iter().enumerate().take(k + 1) {
            let mut r = v.clone();
            let mut combo = vec![Rational::zero(); k + 1];
            combo[i] = Rational::one();
            for (bv, bc, p) in &basis {
                if !r[*p].is_zero() {
                    let f = r[*p].clone() / &bv[*p];
                    for c in 0..dim {
                        r[c] -= &f * &bv[c];
                    }
                    for c in 0..=k {
                        combo[c] -= &f * &bc[c];
                    }
                }
            }
            match r.iter().position(|x| !x.is_zero()) {
                Some(p) => basis.push((r, combo, p)),
                None => {
                    dependent = Some((i, combo));
                    break;
                }
            }
        }
        if let Some((i, combo)) = dependent {
            // combo · v = 0 with combo[i] = 1 (coefficient of the new vector).
            let lead = combo[i].clone();
            let coeffs = (0..i).map(|j| -combo[j].clone() / &lead).collect();
            return Some((i, coeffs));
        }
    }
    None
}

/// Polynomials over Q as coefficient vectors, lowest degree first.
pub mod poly {
    use super::*;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] -= x;
        }
        trim(out)
    }

    /// `(quotient, remainder)`.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
        let lead = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let f = r.last().unwrap().clone() / &lead;
            for (i, c) in b.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            q[shift] = f;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn derivative(a: &[Rational]) -> Vec<Rational> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn monic(a: &[Rational]) -> Vec<Rational> {
        let a = trim(a.to_vec());
        match a.last() {
            None => a,
            Some(l) => {
                let l = l.clone();
                a.into_iter().map(|c| c / &l).collect()
            }
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(&x)
    }

    /// `s` with `s·a ≡ 1 (mod m)`, when `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip();
        let (_, s) = divrem(&s0.into_iter().map(|x| x * &c).collect::<Vec<_>>(), m);
        Some(s)
    }

    /// `t^n - 1` divided by all cyclotomic factors of proper divisors.
    pub fn cyclotomic(n: u32) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); n as usize + 1];
        p[0] = -Rational::one();
        p[n as usize] = Rational::one();
        for d in 1..n {
            if n % d == 0 {
                let (q, r) = divrem(&p, &cyclotomic(d));
                debug_assert!(r.is_empty());
                p = q;
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn solve_small_system() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve(&[vec![int(1), int(2)], vec![int(2), int(4)]], &[int(1), int(1)]).is_none());
    }

    #[test]
    fn dependency_detection() {
        let v = vec![vec![int(1), int(0)], vec![int(0), int(1)], vec![int(2), int(3)]];
        let (k, c) = first_dependency(&v).unwrap();
        assert_eq!(k, 2);
        assert_eq!(c, vec![int(2), int(3)]);
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(poly::cyclotomic(2), vec![int(1), int(1)]);
        assert_eq!(poly::cyclotomic(3), vec![int(1), int(1), int(1)]);
        assert_eq!(poly::cyclotomic(4), vec![int(1), int(0), int(1)]);
        assert_eq!(poly::cyclotomic(6), vec![int(1), int(-1), int(1)]);
    }

    #[test]
    fn modular_inverse() {
        let m = poly::cyclotomic(3);
        let a = vec![int(1), int(1)]; // 1 + ζ = -ζ²
        let s = poly::inverse_mod(&a, &m).unwrap();
        let (_, r) = poly::divrem(&poly::mul(&a, &s), &m);
        assert_eq!(r, vec![int(1)]);
    }
}
