use hypermap_core::maporacle::{enumerate_rhm, genus_histogram, OracleConfig, Perm, Profile};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn degrees() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=4, 1..=3).prop_filter("small", |d| d.iter().sum::<u32>() <= 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permuting_degrees_is_harmless(n in 2u32..=3, g in 0u32..=1, d in degrees(), seed in any::<u64>()) {
        let mut shuffled = d.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        if seed % 2 == 0 {
            shuffled.reverse();
        }
        let a = enumerate_rhm(&Profile::new(n, g, d).unwrap()).unwrap();
        let b = enumerate_rhm(&Profile::new(n, g, shuffled).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn histogram_accounts_for_every_gluing(n in 2u32..=3, d in degrees()) {
        let h = genus_histogram(n, &d, &OracleConfig::default()).unwrap();
        prop_assert_eq!(h.by_genus.values().sum::<u64>(), h.transitive_total);
    }

    #[test]
    fn perm_group_laws(img in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
                       img2 in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let one = |v: &Vec<usize>| Perm::from_images(v.iter().map(|x| x + 1).collect()).unwrap();
        let (p, q) = (one(&img), one(&img2));
        prop_assert_eq!(p.after(&p.inverse()), Perm::identity(6));
        prop_assert_eq!(p.after(&q).inverse(), q.inverse().after(&p.inverse()));
        prop_assert_eq!(p.cycle_type().iter().sum::<usize>(), 6);
        prop_assert_eq!(p.cycle_count(), p.cycle_type().len());
    }

    #[test]
    fn canonical_cycles_have_requested_type(lengths in subsequence(vec![1u32, 2, 3, 3, 4], 1..=5)) {
        let p = Perm::canonical_cycles(&lengths);
        let mut want: Vec<usize> = lengths.iter().map(|&l| l as usize).collect();
        let mut got = p.cycle_type();
        want.sort_unstable();
        got.sort_unstable();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn small_counts() {
    let rhm = |n, g, d: &[u32]| enumerate_rhm(&Profile::new(n, g, d.to_vec()).unwrap()).unwrap();
    assert_eq!(rhm(2, 0, &[2]), 1);
    assert_eq!(rhm(2, 0, &[4]), 2);
    assert_eq!(rhm(2, 1, &[4]), 1);
    assert_eq!(rhm(3, 0, &[3]), 1);
    assert_eq!(rhm(3, 1, &[3]), 1);
    assert_eq!(rhm(3, 0, &[2]), 0);
}
