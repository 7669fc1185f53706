use hypermap_core::curverec::{normalized_params, rhm_from_tr, TrConfig, TrEngine};
use hypermap_core::tauschur::rhm_from_tau;
use proptest::prelude::*;

fn cfg(g: u32, n: u32) -> TrConfig {
    TrConfig { cache_dir: None, ..TrConfig::new(g, n) }
}

#[test]
fn memoization_is_transparent() {
    let direct = TrEngine::new(3, cfg(1, 2)).unwrap();
    let a = direct.omega(1, 2).unwrap();
    let warmed = TrEngine::new(3, cfg(1, 2)).unwrap();
    warmed.omega(0, 3).unwrap();
    warmed.omega(1, 1).unwrap();
    warmed.omega(0, 4).unwrap();
    assert_eq!(*warmed.omega(1, 2).unwrap(), *a);
}

#[test]
fn deck_to_working_order() {
    for n in 2..=4 {
        let p = normalized_params(n).unwrap();
        let order = cfg(2, 3).order();
        for i in 0..n as usize {
            let d = p.deck(i, order).unwrap();
            assert_eq!(d.involution_defect(), None, "N={n} point {i}");
            assert_eq!(d.x_invariance_defect(&p).unwrap(), None, "N={n} point {i}");
        }
    }
}

#[test]
fn tensors_are_symmetric_and_bounded() {
    let e = TrEngine::new(2, cfg(1, 3)).unwrap();
    for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2), (1, 3)] {
        let c = e.omega(g, n).unwrap();
        assert!(c.is_symmetric());
        assert!(c.max_pole_order() as u32 <= 6 * g + 2 * n - 4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tr_agrees_with_tau(n in 2u32..=3, g in 0u32..=1, d in prop::collection::vec(1u32..=4, 1..=2)) {
        prop_assume!(2 * g + d.len() as u32 > 2);
        prop_assert_eq!(rhm_from_tr(n, g, &d).unwrap(), rhm_from_tau(n, g, &d).unwrap());
    }
}
