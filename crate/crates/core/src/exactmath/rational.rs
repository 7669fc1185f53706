//! Big rationals and the small amount of glue the rest of the crate needs
//! around them: exact string form, binomials with rational top argument and
//! harmonic numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"num/den"`, or `"num"` for integers.
pub fn to_exact_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Returns the integer value when `q` has denominator one.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `s choose k` for rational `s`.
pub fn binomial(s: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (s - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// The m-th harmonic number, `h(0) = 0`.
///
/// This is the constant appearing in formal integration without constants,
/// `D^{-m} λ^{-1} = λ^m (log λ - h(m)) / m!`; differentiating once forces
/// `h(m) - h(m-1) = 1/m`.
pub fn harmonic(m: u32) -> Rational {
    (1..=m as i64).fold(Rational::zero(), |acc, j| acc + rat(1, j))
}

/// Integer exponentiation of a rational (negative exponents allowed for
/// nonzero bases).
pub fn rat_pow(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// `q` raised to a rational power when the result is rational, e.g.
/// `(9/4)^(1/2) = 3/2`.
pub fn rat_pow_rational(q: &Rational, e: &Rational) -> Option<Rational> {
    if e.is_integer() {
        return Some(rat_pow(q, e.to_integer().try_into().ok()?));
    }
    if q.is_negative() {
        return None;
    }
    let den: u32 = e.denom().try_into().ok()?;
    let num: i64 = e.numer().try_into().ok()?;
    let n = exact_root(q.numer(), den)?;
    let d = exact_root(q.denom(), den)?;
    Some(rat_pow(&Rational::new(n, d), num))
}

/// Exact k-th root of a nonnegative integer, if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Writes `n = base^e` with `e` maximal (`n >= 2`).
pub fn perfect_power(n: u64) -> (u64, u32) {
    let mut best = (n, 1);
    if n < 4 {
        return best;
    }
    for e in 2..64u32 {
        let r = (n as f64).powf(1.0 / e as f64).round() as u64;
        if r < 2 {
            break;
        }
        for cand in r.saturating_sub(1)..=r + 1 {
            if cand >= 2 && cand.checked_pow(e) == Some(n) {
                best = (cand, e);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form() {
        assert_eq!(to_exact_string(&rat(6, 4)), "3/2");
        assert_eq!(to_exact_string(&rat(-6, 3)), "-2");
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn harmonic_telescopes() {
        assert_eq!(harmonic(0), int(0));
        for m in 1..20 {
            assert_eq!(harmonic(m) - harmonic(m - 1), rat(1, m as i64));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&int(5), 2), int(10));
        assert_eq!(binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binomial(&int(-1), 3), int(-1));
        assert_eq!(binomial_int(10, 3), BigInt::from(120));
    }

    #[test]
    fn powers_and_roots() {
        assert_eq!(rat_pow_rational(&rat(9, 4), &rat(1, 2)), Some(rat(3, 2)));
        assert_eq!(rat_pow_rational(&int(2), &rat(1, 2)), None);
        assert_eq!(rat_pow_rational(&int(8), &rat(-2, 3)), Some(rat(1, 4)));
        assert_eq!(perfect_power(8), (2, 3));
        assert_eq!(perfect_power(12), (12, 1));
        assert_eq!(perfect_power(1_000_000), (10, 6));
    }
}
