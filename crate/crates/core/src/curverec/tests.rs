use num_bigint::BigInt;

use super::*;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn ramification_n2() {
    let c = curve(2).unwrap();
    let ram: Vec<_> = c.ram().iter().map(|a| a.as_rational().unwrap()).collect();
    assert_eq!(ram, vec![crate::exactmath::int(-1), crate::exactmath::int(1)]);
}

#[test]
fn critical_values_and_delta() {
    for n in 2..=4 {
        let c = curve(n).unwrap();
        assert!(c.critical_values_match().unwrap(), "N={n}");
        assert!(c.delta_normalization().unwrap().iter().all(|x| x.0), "N={n}");
    }
}

#[test]
fn deck_properties() {
    for n in 2..=4 {
        let p = normalized_params(n).unwrap();
        for i in 0..n as usize {
            let d = p.deck(i, 10).unwrap();
            assert_eq!(d.coeffs[0], p.field.one().neg());
            assert_eq!(d.involution_defect(), None);
            assert_eq!(d.x_invariance_defect(&p).unwrap(), None);
        }
    }
}

#[test]
fn unstable_closed_forms() {
    assert_eq!(rhm01_from_curve(2, 1).unwrap(), b(1));
    assert_eq!(rhm01_from_curve(3, 2).unwrap(), b(1));
    assert_eq!(rhm01_from_curve(2, 2).unwrap(), b(0));
    assert_eq!(rhm02_from_curve(2, 1, 1).unwrap(), b(2));
    assert_eq!(rhm02_from_curve(3, 1, 2).unwrap(), rhm02_from_curve(3, 2, 1).unwrap());
    assert_eq!(rhm02_from_curve(3, 1, 1).unwrap(), b(0));
}

#[test]
fn small_correlators() {
    let e = TrEngine::new(2, TrConfig { cache_dir: None, ..TrConfig::new(1, 1) }).unwrap();
    let w11 = e.omega(1, 1).unwrap();
    assert!(w11.max_pole_order() <= 4);
    assert_eq!(e.rhm(1, &[4]).unwrap(), b(1));
    let e3 = TrEngine::new(3, TrConfig { cache_dir: None, ..TrConfig::new(1, 1) }).unwrap();
    assert_eq!(e3.rhm(1, &[3]).unwrap(), b(1));
    assert_eq!(e3.rhm(1, &[4]).unwrap(), b(0));
    assert!(matches!(e3.omega(0, 2), Err(CurveError::Unstable { .. })));
}

#[test]
fn rotation_covariance() {
    for n in 2..=4 {
        let e = TrEngine::new(n, TrConfig { cache_dir: None, ..TrConfig::new(1, 3) }).unwrap();
        for (g, k) in [(0, 3), (1, 1), (1, 2), (0, 4)] {
            let c = e.omega(g, k).unwrap();
            assert!(c.covariance_defects(&e.params().ram).is_empty(), "N={n} ({g},{k})");
        }
    }
}

#[test]
fn tower_matches_rescaled() {
    for n in 2..=3 {
        assert!(tower_agreement(n, 0, 3).unwrap(), "N={n}");
        assert!(tower_agreement(n, 1, 1).unwrap(), "N={n}");
    }
}

#[test]
fn order_margin_is_stable() {
    let cfg = TrConfig { cache_dir: None, ..TrConfig::new(1, 2) };
    let base = TrEngine::new(3, cfg.clone()).unwrap();
    let more = TrEngine::new(3, TrConfig { order: Some(cfg.order() + 2), ..cfg }).unwrap();
    for (g, k) in [(0, 3), (1, 1), (1, 2)] {
        assert_eq!(base.omega(g, k).unwrap(), more.omega(g, k).unwrap());
    }
    assert_eq!(base.rhm(1, &[2, 4]).unwrap(), more.rhm(1, &[2, 4]).unwrap());
}
