use hypermap_core::exactmath::{
    harmonic, int, lagrange_invert, rat, EpsLaurent, Monomial, MultiSeries, Rational, ResidueAt, UniSeries,
};
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

type S = UniSeries<Rational>;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn series(prec: Option<i64>) -> impl Strategy<Value = S> {
    (-2i64..=1, prop::collection::vec(small_rat(), 0..6))
        .prop_map(move |(lo, c)| S::from_dense("x", int(0), lo, c, prec))
}

fn eps() -> impl Strategy<Value = EpsLaurent> {
    prop::collection::vec((-3i32..=3, small_rat()), 0..5).prop_map(EpsLaurent::from_terms)
}

fn multi() -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec((prop::collection::vec(1u16..=3, 0..3), eps()), 0..4).prop_map(|terms| {
        let mut s = MultiSeries::zero('t', 5);
        for (idx, c) in terms {
            s.add_term(Monomial::from_indices(&idx), &c);
        }
        s
    })
}

fn same_known(a: &S, b: &S) -> bool {
    let prec = match (a.prec(), b.prec()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return a == b,
    };
    (-12..prec).all(|e| a.coeff(e).unwrap() == b.coeff(e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_ring_axioms(a in series(Some(6)), b in series(Some(6)), c in series(Some(6))) {
        prop_assert!(same_known(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(same_known(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
    }

    #[test]
    fn eps_ring_axioms(a in eps(), b in eps(), c in eps()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&b).terms().all(|(_, q)| q != &int(0)));
    }

    #[test]
    fn multi_ring_axioms(a in multi(), b in multi(), c in multi()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.mul(&b).terms().all(|(m, c)| m.weight() <= 5 && !c.is_zero()));
    }

    #[test]
    fn residue_of_derivative_vanishes(a in series(None)) {
        prop_assert_eq!(a.derivative().residue(ResidueAt::Zero).unwrap(), int(0));
    }

    #[test]
    fn lagrange_round_trip(c0 in 1i64..4, rest in prop::collection::vec(small_rat(), 0..4), trunc in 2i64..9) {
        let mut coeffs = vec![int(c0)];
        coeffs.extend(rest);
        let phi = S::from_dense("z", int(0), 0, coeffs, None);
        let z = lagrange_invert(&phi, trunc, "w").unwrap();
        // w·φ(z(w)) - z(w), both as series in w.
        let w = S::monomial("w", int(1), 1, None);
        let lhs = w.mul(&phi.compose(&z).unwrap()).sub(&z);
        for e in 0..trunc {
            prop_assert_eq!(lhs.coeff(e).unwrap(), int(0));
        }
    }

    #[test]
    fn rationals_stay_reduced(a in small_rat(), b in small_rat()) {
        for q in [&a + &b, &a * &b, &a - &b] {
            prop_assert!(q.denom().is_positive());
            prop_assert_eq!(q.numer().gcd(q.denom()), if q.numer() == &0.into() { q.denom().clone() } else { 1.into() });
        }
    }
}

#[test]
fn harmonic_telescoping() {
    assert_eq!(harmonic(0), int(0));
    for m in 1..40u32 {
        assert_eq!(harmonic(m) - harmonic(m - 1), rat(1, m as i64));
    }
}
