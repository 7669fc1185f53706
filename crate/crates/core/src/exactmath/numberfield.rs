//! Simple algebraic extensions `Q[t]/(f)` and the cyclotomic-then-radical
//! tower `Q(ζ_N, (N-1)^{1/N})` compressed to a single primitive element.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::linalg::{first_dependency, poly, solve};
use super::{int, perfect_power, rat_pow, to_exact_string, ExactError, Rational, Ring};

/// `Q[t]/(minpoly)` with a monic, square-free minimal polynomial.
#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<Rational>,
    /// `t^(d+i) mod minpoly` for `i = 0..d-1`.
    reductions: Vec<Vec<Rational>>,
    label: String,
}

impl NumberField {
    /// Builds the field; the polynomial is made monic and must be square-free
    /// of degree at least one. Irreducibility is assumed.
    pub fn new(minpoly: Vec<Rational>, label: impl Into<String>) -> Result<Arc<Self>, ExactError> {
        let f = poly::monic(&minpoly);
        if f.len() < 2 {
            return Err(ExactError::Domain("minimal polynomial must have degree >= 1".into()));
        }
        if poly::gcd(&f, &poly::derivative(&f)).len() != 1 {
            return Err(ExactError::Domain("minimal polynomial is not square-free".into()));
        }
        let d = f.len() - 1;
        let mut reductions = Vec::with_capacity(d);
        // t^d = -(f_0 + ... + f_{d-1} t^{d-1})
        let mut cur: Vec<Rational> = f[..d].iter().map(|c| -c.clone()).collect();
        for _ in 0..d {
            reductions.push(cur.clone());
            // multiply by t
            let top = cur[d - 1].clone();
            let mut next = vec![Rational::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..d {
                next[i] -= &top * &f[i];
            }
            cur = next;
        }
        Ok(Arc::new(Self {
            minpoly: f,
            reductions,
            label: label.into(),
        }))
    }

    pub fn rationals() -> Arc<Self> {
        Self::new(vec![int(0), int(1)], "Q").expect("t is square-free")
    }

    /// `Q(ζ_n)` generated by a primitive n-th root of unity.
    pub fn cyclotomic(n: u32) -> Arc<Self> {
        Self::new(poly::cyclotomic(n), format!("Q(zeta_{n})")).expect("cyclotomic polynomials are square-free")
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero(self: &Arc<Self>) -> NFElem {
        NFElem {
            field: Arc::clone(self),
            c: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> NFElem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(self: &Arc<Self>, q: Rational) -> NFElem {
        let mut e = self.zero();
        e.c[0] = q;
        e
    }

    /// The class of `t`.
    pub fn generator(self: &Arc<Self>) -> NFElem {
        self.from_poly(&[Rational::zero(), Rational::one()])
    }

    /// Reduces an arbitrary polynomial in the generator.
    pub fn from_poly(self: &Arc<Self>, p: &[Rational]) -> NFElem {
        let (_, r) = poly::divrem(p, &self.minpoly);
        let mut e = self.zero();
        for (i, c) in r.into_iter().enumerate() {
            e.c[i] = c;
        }
        e
    }

    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.minpoly == other.minpoly
    }
}

/// Element of a [`NumberField`] as coefficients of `1, t, ..., t^(d-1)`.
#[derive(Clone)]
pub struct NFElem {
    field: Arc<NumberField>,
    c: Vec<Rational>,
}

impl NFElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// `Some(q)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.c[1..].iter().all(Zero::is_zero).then(|| self.c[0].clone())
    }

    fn check(&self, other: &Self) {
        debug_assert!(self.field.same_as(&other.field), "elements of different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            field: Arc::clone(&self.field),
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            field: Arc::clone(&self.field),
            c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            field: Arc::clone(&self.field),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            field: Arc::clone(&self.field),
            c: self.c.iter().map(|a| a * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.c.len();
        if d == 1 {
            return Self {
                field: Arc::clone(&self.field),
                c: vec![&self.c[0] * &other.c[0]],
            };
        }
        let mut full = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = full[..d].to_vec();
        for (k, hi) in full[d..].iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.field.reductions[k]) {
                if !r.is_zero() {
                    *o += hi * r;
                }
            }
        }
        Self {
            field: Arc::clone(&self.field),
            c: out,
        }
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul(b);
        for (x, y) in self.c.iter_mut().zip(p.c) {
            *x += y;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let s = poly::inverse_mod(&poly::trim(self.c.clone()), &self.field.minpoly)?;
        Some(self.field.from_poly(&s))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    /// Evaluates this element's polynomial at `image`, i.e. applies the
    /// embedding sending the generator to `image`.
    pub fn embed(&self, image: &NFElem) -> NFElem {
        let mut acc = image.field.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(image);
            acc.c[0] += c;
        }
        acc
    }
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field.same_as(&other.field)
    }
}

impl Eq for NFElem {}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => to_exact_string(c),
                1 => format!("({})t", to_exact_string(c)),
                _ => format!("({})t^{i}", to_exact_string(c)),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for NFElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.c.iter().map(to_exact_string).collect();
        v.serialize(s)
    }
}

impl Ring for NFElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn vanishes(&self) -> bool {
        NFElem::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scale(&self, q: &Rational) -> Self {
        NFElem::scale(self, q)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        self.field.from_rational(q.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (x, y) in self.c.iter_mut().zip(&other.c) {
            *x += y;
        }
    }
}

/// `Q(ζ_n, ρ)` with `ρ^n = radicand`, built as a tower and compressed to a
/// primitive element `θ = ρ + cζ`.
#[derive(Clone, Debug)]
pub struct RadicalTower {
    pub n: u32,
    pub field: Arc<NumberField>,
    /// Image of the generator of `Q(ζ_n)`.
    pub zeta: NFElem,
    /// Positive real `radicand^(1/n)`.
    pub rho: NFElem,
    /// `ρ` has degree `radical_degree` over `Q(ζ_n)` with
    /// `ρ^radical_degree = reduced_radicand`.
    pub radical_degree: u32,
    pub reduced_radicand: Rational,
    /// Multiplier `c` in the primitive element.
    pub shift: i64,
}

/// Multiplication in the explicit tower basis `ζ^i ρ^j`.
struct TowerArith {
    cyc: Arc<NumberField>,
    e: usize,
    b: Rational,
}

impl TowerArith {
    fn mul(&self, x: &[NFElem], y: &[NFElem]) -> Vec<NFElem> {
        let mut out = vec![self.cyc.zero(); self.e];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in y.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = a.mul(c);
                if i + j < self.e {
                    out[i + j] = out[i + j].add(&p);
                } else {
                    out[i + j - self.e] = out[i + j - self.e].add(&p.scale(&self.b));
                }
            }
        }
        out
    }

    fn flatten(&self, x: &[NFElem]) -> Vec<Rational> {
        x.iter().flat_map(|e| e.coeffs().iter().cloned()).collect()
    }
}

impl RadicalTower {
    /// Splitting field of `radicand · z^n = 1`-type binomials: adjoins `ζ_n`
    /// and then `radicand^(1/n)` (radicand a positive integer).
    pub fn new(n: u32, radicand: u64) -> Result<Self, ExactError> {
        if n < 1 || radicand < 1 {
            return Err(ExactError::Domain("tower needs n >= 1 and a positive radicand".into()));
        }
        let cyc = NumberField::cyclotomic(n);
        let (e, b) = if radicand == 1 {
            (1u32, int(1))
        } else {
            let (b0, g0) = perfect_power(radicand);
            let h = g0.gcd(&n);
            (n / h, rat_pow(&int(b0 as i64), (g0 / h) as i64))
        };
        let arith = TowerArith {
            cyc: Arc::clone(&cyc),
            e: e as usize,
            b: b.clone(),
        };
        let total = cyc.degree() * e as usize;
        let zeta_t: Vec<NFElem> = {
            let mut v = vec![cyc.zero(); e as usize];
            v[0] = cyc.generator();
            v
        };
        let rho_t: Vec<NFElem> = {
            let mut v = vec![cyc.zero(); e as usize];
            if e == 1 {
                v[0] = cyc.from_rational(b.clone());
            } else {
                v[1] = cyc.one();
            }
            v
        };
        for shift in 1..=64i64 {
            let theta: Vec<NFElem> = rho_t
                .iter()
                .zip(&zeta_t)
                .map(|(r, z)| r.add(&z.scale(&int(shift))))
                .collect();
            let mut powers = Vec::with_capacity(total + 1);
            let mut cur = {
                let mut v = vec![cyc.zero(); e as usize];
                v[0] = cyc.one();
                v
            };
            for _ in 0..=total {
                powers.push(arith.flatten(&cur));
                cur = arith.mul(&cur, &theta);
            }
            let (k, coeffs) = first_dependency(&powers).expect("powers span a finite space");
            if k < total {
                continue;
            }
            let mut minpoly: Vec<Rational> = coeffs.iter().map(|c| -c.clone()).collect();
            minpoly.push(Rational::one());
            let field = NumberField::new(minpoly, format!("Q(zeta_{n}, {radicand}^(1/{n}))"))?;
            let basis: Vec<Vec<Rational>> = (0..total)
                .map(|r| (0..total).map(|i| powers[i][r].clone()).collect())
                .collect();
            let express = |target: &[NFElem]| -> Result<NFElem, ExactError> {
                let x = solve(&basis, &arith.flatten(target))
                    .ok_or_else(|| ExactError::Domain("primitive element basis is singular".into()))?;
                Ok(field.from_poly(&x))
            };
            let zeta = express(&zeta_t)?;
            let rho = express(&rho_t)?;
            return Ok(Self {
                n,
                field: Arc::clone(&field),
                zeta,
                rho,
                radical_degree: e,
                reduced_radicand: b,
                shift,
            });
        }
        Err(ExactError::Domain("no primitive element found".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn gaussian_integers() {
        let k = NumberField::cyclotomic(4);
        let i = k.generator();
        assert_eq!(i.mul(&i), k.from_rational(int(-1)));
        let z = k.one().add(&i);
        let inv = z.inv().unwrap();
        assert_eq!(inv, k.from_poly(&[rat(1, 2), rat(-1, 2)]));
        assert_eq!(z.mul(&inv), k.one());
    }

    #[test]
    fn cube_roots_of_unity() {
        let k = NumberField::cyclotomic(3);
        let w = k.generator();
        assert_eq!(w.pow(3).unwrap(), k.one());
        assert!(k.one().add(&w).add(&w.mul(&w)).is_zero());
        assert_eq!(w.pow(-1).unwrap(), w.mul(&w));
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(NumberField::new(vec![int(1), int(2), int(1)], "bad").is_err());
    }

    #[test]
    fn tower_relations() {
        for (n, r) in [(2u32, 1u64), (3, 2), (4, 3), (5, 4), (3, 8)] {
            let t = RadicalTower::new(n, r).unwrap();
            let one = t.field.one();
            assert_eq!(t.zeta.pow(n as i64).unwrap(), one, "n={n}");
            if n > 1 {
                assert_ne!(t.zeta.pow(1).unwrap(), one);
            }
            assert_eq!(t.rho.pow(n as i64).unwrap(), t.field.from_rational(int(r as i64)), "n={n}");
            let expected = NumberField::cyclotomic(n).degree() * t.radical_degree as usize;
            assert_eq!(t.field.degree(), expected);
        }
    }

    #[test]
    fn perfect_power_radicand_shrinks_tower() {
        // 8^(1/3) = 2 is rational.
        let t = RadicalTower::new(3, 8).unwrap();
        assert_eq!(t.radical_degree, 1);
        assert_eq!(t.rho, t.field.from_rational(int(2)));
        // 4^(1/4) = sqrt(2) has degree 2.
        let t = RadicalTower::new(4, 4).unwrap();
        assert_eq!(t.radical_degree, 2);
    }

    #[test]
    fn embedding_respects_products() {
        let t = RadicalTower::new(3, 2).unwrap();
        let k = NumberField::cyclotomic(3);
        let a = k.from_poly(&[int(2), rat(1, 3)]);
        let b = k.from_poly(&[int(-1), int(5)]);
        assert_eq!(a.mul(&b).embed(&t.zeta), a.embed(&t.zeta).mul(&b.embed(&t.zeta)));
    }
}
