//! Numbers of the form `scalar · (N-1)^a · N^b · e^{2πi·angle}` with rational
//! `scalar, a, b, angle`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactmath::{int, perfect_power, rat, rat_pow, rat_pow_rational, to_exact_string, Rational};

use super::FrobError;

/// Exact polar number tied to a fixed `N`.
///
/// Canonical form: `scalar > 0` (or the zero value), `angle ∈ [0, 1)`, and
/// the exponents of `N-1` and `N` reduced so that the remaining radical
/// `(N-1)^a N^b` is irrational unless trivial. Two values are equal iff
/// their canonical fields agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactPolar {
    n: u32,
    scalar: Rational,
    pow_nm1: Rational,
    pow_n: Rational,
    angle: Rational,
}

fn frac_part(q: &Rational) -> Rational {
    q - Rational::from_integer(q.floor().to_integer())
}

/// Splits `base^pow` as `integer power · base^rest` where, writing
/// `base = root^e` with `root` not a perfect power, `root^(e·rest)` has
/// exponent in `[0, 1)`.
fn reduce_radical(base: u64, pow: &Rational) -> (Rational, Rational) {
    if base == 1 || pow.is_zero() {
        return (Rational::one(), Rational::zero());
    }
    let (root, e) = perfect_power(base);
    let q = pow * int(e as i64);
    let whole = q.floor().to_integer();
    let rest = (q - Rational::from_integer(whole.clone())) / int(e as i64);
    let whole: i64 = whole.try_into().expect("radical exponent out of range");
    (rat_pow(&int(root as i64), whole), rest)
}

impl ExactPolar {
    pub fn new(n: u32, scalar: Rational, pow_nm1: Rational, pow_n: Rational, angle: Rational) -> Self {
        let mut v = Self {
            n,
            scalar,
            pow_nm1,
            pow_n,
            angle,
        };
        v.normalize();
        v
    }

    pub fn zero(n: u32) -> Self {
        Self::from_rational(n, Rational::zero())
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u32, q: Rational) -> Self {
        Self::new(n, q, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `e^{2πi·angle}`.
    pub fn root_of_unity(n: u32, angle: Rational) -> Self {
        Self::new(n, Rational::one(), Rational::zero(), Rational::zero(), angle)
    }

    fn normalize(&mut self) {
        if self.scalar.is_zero() {
            self.pow_nm1 = Rational::zero();
            self.pow_n = Rational::zero();
            self.angle = Rational::zero();
            return;
        }
        if self.scalar.is_negative() {
            self.scalar = -self.scalar.clone();
            self.angle += rat(1, 2);
        }
        let (f1, r1) = reduce_radical(self.n as u64 - 1, &self.pow_nm1);
        let (f2, r2) = reduce_radical(self.n as u64, &self.pow_n);
        self.scalar = &self.scalar * f1 * f2;
        self.pow_nm1 = r1;
        self.pow_n = r2;
        self.angle = frac_part(&self.angle);
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }
    pub fn pow_nm1(&self) -> &Rational {
        &self.pow_nm1
    }
    pub fn pow_n(&self) -> &Rational {
        &self.pow_n
    }
    pub fn angle(&self) -> &Rational {
        &self.angle
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polar numbers for different N");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(
            self.n,
            &self.scalar * &other.scalar,
            &self.pow_nm1 + &other.pow_nm1,
            &self.pow_n + &other.pow_n,
            &self.angle + &other.angle,
        )
    }

    pub fn inv(&self) -> Result<Self, FrobError> {
        if self.is_zero() {
            return Err(FrobError::Arithmetic("inverse of zero".into()));
        }
        Ok(Self::new(
            self.n,
            self.scalar.recip(),
            -self.pow_nm1.clone(),
            -self.pow_n.clone(),
            -self.angle.clone(),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.n,
            -self.scalar.clone(),
            self.pow_nm1.clone(),
            self.pow_n.clone(),
            self.angle.clone(),
        )
    }

    pub fn powi(&self, e: i64) -> Result<Self, FrobError> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        let k = int(e);
        Ok(Self::new(
            self.n,
            rat_pow(&self.scalar, e),
            &self.pow_nm1 * &k,
            &self.pow_n * &k,
            &self.angle * &k,
        ))
    }

    /// Principal square root (half the angle, positive radical part), when
    /// it stays inside the family.
    pub fn sqrt_principal(&self) -> Result<Self, FrobError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let nm1 = int(self.n as i64 - 1);
        let nn = int(self.n as i64);
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let t = &self.scalar / (rat_pow(&nm1, a) * rat_pow(&nn, b));
            if let Some(q) = rat_pow_rational(&t, &rat(1, 2)) {
                return Ok(Self::new(
                    self.n,
                    q,
                    (&self.pow_nm1 + int(a)) / int(2),
                    (&self.pow_n + int(b)) / int(2),
                    &self.angle / int(2),
                ));
            }
        }
        Err(FrobError::Arithmetic("square root leaves the polar family".into()))
    }

    /// Adds two values sharing the same radical part and a parallel or
    /// antiparallel direction; `None` when the sum leaves the family.
    pub fn try_add(&self, other: &Self) -> Option<Self> {
        self.check(other);
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.pow_nm1 != other.pow_nm1 || self.pow_n != other.pow_n {
            return None;
        }
        let diff = frac_part(&(&other.angle - &self.angle));
        let sign = if diff.is_zero() {
            int(1)
        } else if diff == rat(1, 2) {
            int(-1)
        } else {
            return None;
        };
        Some(Self::new(
            self.n,
            &self.scalar + &other.scalar * sign,
            self.pow_nm1.clone(),
            self.pow_n.clone(),
            self.angle.clone(),
        ))
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.pow_nm1.is_zero() || !self.pow_n.is_zero() {
            return None;
        }
        if self.angle.is_zero() {
            Some(self.scalar.clone())
        } else if self.angle == rat(1, 2) {
            Some(-self.scalar.clone())
        } else {
            None
        }
    }
}

/// `Σ_{i=1}^N term_i` for terms forming a full geometric progression of
/// roots of unity: all share modulus and radical, and consecutive angles
/// differ by a fixed `step`. Evaluates to `N·term_N` when `step ∈ Z`, to zero
/// when `N·step ∈ Z`, and errors otherwise.
pub fn sum_full_period(terms: &[ExactPolar]) -> Result<ExactPolar, FrobError> {
    let n = terms
        .first()
        .map(|t| t.n)
        .ok_or_else(|| FrobError::Arithmetic("empty root-of-unity sum".into()))?;
    if terms.len() != n as usize {
        return Err(FrobError::Arithmetic("sum must run over N terms".into()));
    }
    if terms.iter().all(ExactPolar::is_zero) {
        return Ok(ExactPolar::zero(n));
    }
    let first = &terms[0];
    if terms.iter().any(|t| {
        t.scalar != first.scalar || t.pow_nm1 != first.pow_nm1 || t.pow_n != first.pow_n
    }) {
        return Err(FrobError::Arithmetic("terms do not share a modulus".into()));
    }
    let step = if n == 1 {
        Rational::zero()
    } else {
        frac_part(&(&terms[1].angle - &terms[0].angle))
    };
    for w in terms.windows(2) {
        if frac_part(&(&w[1].angle - &w[0].angle)) != step {
            return Err(FrobError::Arithmetic("terms are not a geometric progression".into()));
        }
    }
    if step.is_zero() {
        Ok(first.mul(&ExactPolar::from_rational(n, int(n as i64))))
    } else if (&step * int(n as i64)).is_integer() {
        Ok(ExactPolar::zero(n))
    } else {
        Err(FrobError::Arithmetic("step is not an N-th root of unity".into()))
    }
}

impl fmt::Debug for ExactPolar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·(N-1)^({})·N^({})·e(2πi·{})",
            to_exact_string(&self.scalar),
            to_exact_string(&self.pow_nm1),
            to_exact_string(&self.pow_n),
            to_exact_string(&self.angle)
        )
    }
}

impl Serialize for ExactPolar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactPolar", 4)?;
        st.serialize_field("scalar", &to_exact_string(&self.scalar))?;
        st.serialize_field("pow_Nminus1", &to_exact_string(&self.pow_nm1))?;
        st.serialize_field("pow_N", &to_exact_string(&self.pow_n))?;
        st.serialize_field("angle", &to_exact_string(&self.angle))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_power_exponents_fold_into_scalar() {
        // N = 5: (N-1)^(1/2) = 2.
        let v = ExactPolar::new(5, int(1), rat(1, 2), int(0), int(0));
        assert_eq!(v.as_rational(), Some(int(2)));
        // N = 4: N^(3/2) = 8.
        let w = ExactPolar::new(4, int(1), int(0), rat(3, 2), int(0));
        assert_eq!(w.as_rational(), Some(int(8)));
    }

    #[test]
    fn sign_folds_into_angle() {
        let v = ExactPolar::from_rational(3, int(-2));
        assert_eq!(v.angle(), &rat(1, 2));
        assert_eq!(v.as_rational(), Some(int(-2)));
        let i = ExactPolar::root_of_unity(3, rat(1, 4));
        assert_eq!(i.mul(&i).as_rational(), Some(int(-1)));
    }

    #[test]
    fn cancellation_and_full_period_sums() {
        let a = ExactPolar::new(3, int(2), rat(1, 3), int(0), rat(1, 3));
        assert!(a.try_add(&a.neg()).unwrap().is_zero());
        let roots: Vec<ExactPolar> = (1..=3).map(|i| ExactPolar::root_of_unity(3, rat(i, 3))).collect();
        assert!(sum_full_period(&roots).unwrap().is_zero());
        let ones: Vec<ExactPolar> = (1..=3).map(|i| ExactPolar::root_of_unity(3, int(i))).collect();
        assert_eq!(sum_full_period(&ones).unwrap().as_rational(), Some(int(3)));
        let bad: Vec<ExactPolar> = (1..=3).map(|i| ExactPolar::root_of_unity(3, rat(i, 4))).collect();
        assert!(sum_full_period(&bad).is_err());
    }

    #[test]
    fn principal_roots() {
        let v = ExactPolar::new(3, int(8), rat(1, 3), int(1), rat(1, 3));
        let r = v.sqrt_principal().unwrap();
        assert_eq!(r.mul(&r), v);
        assert_eq!(r.angle(), &rat(1, 6));
    }
}
