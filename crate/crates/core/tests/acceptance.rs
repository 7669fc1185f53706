//! Acceptance gates. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use hypermap_core::curverec::{self, normalized_params, TrConfig, TrEngine};
use hypermap_core::exactmath::{factorial, int, rat, EpsLaurent, Rational};
use hypermap_core::frobdata::{canonical_frame, eta, s_column_residue_check, unstable01, unstable02, SMatrixTable};
use hypermap_core::maporacle::{enumerate_rhm, Profile};
use hypermap_core::tauschur::{pluecker_check, tau_z, CoefficientFamily, Partition, TauTruncation};
use hypermap_core::verifyhub::{emit, profile_grid, run_crosscheck, RunConfig};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid_cap(n: u32) -> u32 {
    if n == 2 {
        10
    } else {
        9
    }
}

fn tr_engine(n: u32) -> &'static TrEngine {
    static E: [OnceLock<TrEngine>; 2] = [OnceLock::new(), OnceLock::new()];
    E[(n - 2) as usize].get_or_init(|| TrEngine::new(n, TrConfig { cache_dir: None, ..TrConfig::new(2, 3) }).unwrap())
}

fn tau(n: u32) -> &'static TauTruncation {
    static T: [OnceLock<TauTruncation>; 2] = [OnceLock::new(), OnceLock::new()];
    T[(n - 2) as usize].get_or_init(|| tau_z(n, grid_cap(n)).unwrap())
}

fn oracle(n: u32, g: u32, d: &[u32]) -> Result<BigInt, String> {
    let p = Profile::new(n, g, d.to_vec()).map_err(|e| e.to_string())?;
    enumerate_rhm(&p).map(BigInt::from).map_err(|e| e.to_string())
}

fn three_way(n: u32, g: u32, d: &[u32]) -> Result<BigInt, String> {
    let o = oracle(n, g, d)?;
    let tr = tr_engine(n).rhm(g, d).map_err(|e| format!("tr {d:?}: {e}"))?;
    let ta = tau(n).rhm(g, d).map_err(|e| format!("tau {d:?}: {e}"))?;
    ensure(o == tr && tr == ta, || format!("N={n} g={g} {d:?}: oracle {o}, tr {tr}, tau {ta}"))?;
    Ok(o)
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in [2, 3] {
        for (g, d) in profile_grid(2, 3, grid_cap(n)) {
            three_way(n, g, &d)?;
            count += 1;
        }
    }
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(600), || format!("took {t:?}"))?;
    Ok(format!("{count} profiles agree in {:.1}s", t.as_secs_f64()))
}

fn c2() -> Outcome {
    let anchors: [(u32, u32, &[u32], u32); 5] =
        [(2, 0, &[2], 1), (2, 0, &[4], 2), (2, 1, &[4], 1), (3, 0, &[3], 1), (3, 1, &[3], 1)];
    for (n, g, d, want) in anchors {
        let o = oracle(n, g, d)?;
        ensure(o == BigInt::from(want), || format!("oracle N={n} g={g} {d:?} = {o}"))?;
        let ta = tau(n).rhm(g, d).map_err(|e| e.to_string())?;
        ensure(ta == o, || format!("tau N={n} g={g} {d:?} = {ta}"))?;
        // Genus-zero one-face anchors are unstable for the recursion.
        let tr = if 2 * g + d.len() as u32 > 2 {
            tr_engine(n).rhm(g, d).map_err(|e| e.to_string())?
        } else {
            curverec::rhm01_from_curve(n, d[0] - 1).map_err(|e| e.to_string())?
        };
        ensure(tr == o, || format!("tr N={n} g={g} {d:?} = {tr}"))?;
    }
    Ok("5 anchors from all three engines".into())
}

fn c3() -> Outcome {
    for n in 2..=6 {
        let t = SMatrixTable::build(n, 0).map_err(|e| e.to_string())?;
        for a in 1..=n {
            for b in 1..=n {
                let want = if a == b { int(1) } else { int(0) };
                ensure(t.get(0, a, b) == &want, || format!("N={n} (S_0)[{a}][{b}] = {}", t.get(0, a, b)))?;
            }
        }
    }
    let t = SMatrixTable::build(2, 1).map_err(|e| e.to_string())?;
    for a in 1..=2 {
        for b in 1..=2 {
            let want = if (a, b) == (2, 1) { int(1) } else { int(0) };
            ensure(t.get(1, a, b) == &want, || format!("N=2 S_1 entry ({a},{b}) = {}", t.get(1, a, b)))?;
        }
    }
    Ok("S_0 = Id for N ≤ 6; N=2 S_1 has the single entry (2,1) = 1".into())
}

fn c4() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        for alpha in 1..=n {
            for k in 0..=8u32 {
                for a in 0..=k {
                    let ok = s_column_residue_check(n, alpha, a, k as i64).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("N={n} α={alpha} a={a} k={k}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} residue identities"))
}

fn c5() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        for k in 0..=8 {
            let v = unstable01(n, k).map_err(|e| e.to_string())? * Rational::from_integer(factorial(k + 1));
            let o = Rational::from_integer(oracle(n, 0, &[k + 1])?);
            ensure(v == o, || format!("N={n} k={k}: closed form {v}, oracle {o}"))?;
            count += 1;
        }
        for k1 in 0..=8 {
            for k2 in 0..=8 - k1 {
                let f = factorial(k1 + 1) * factorial(k2 + 1);
                let v = unstable02(n, k1, k2).map_err(|e| e.to_string())? * Rational::from_integer(f);
                let o = Rational::from_integer(oracle(n, 0, &[k1 + 1, k2 + 1])?);
                ensure(v == o, || format!("N={n} k1={k1} k2={k2}: closed form {v}, oracle {o}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} unstable values match the oracle"))
}

fn c6() -> Outcome {
    let start = Instant::now();
    // The smallest relation, with hand-evaluated N=2 values.
    let fam = CoefficientFamily::new(2, 4).map_err(|e| e.to_string())?;
    let a = |p: &[u32]| fam.get(&Partition::new(p.to_vec())).cloned().unwrap();
    let hand = [
        (vec![], EpsLaurent::one()),
        (vec![2, 2], EpsLaurent::from_terms([(-2, rat(1, 4)), (0, rat(-1, 4))])),
        (vec![2], EpsLaurent::from_terms([(-1, rat(1, 2)), (0, rat(1, 2))])),
        (vec![1, 1], EpsLaurent::from_terms([(-1, rat(-1, 2)), (0, rat(1, 2))])),
    ];
    for (p, v) in &hand {
        ensure(&a(p) == v, || format!("A_{p:?} = {}", a(p)))?;
    }
    let gr = a(&[]).mul(&a(&[2, 2])).sub(&a(&[1]).mul(&a(&[2, 1]))).add(&a(&[2]).mul(&a(&[1, 1])));
    ensure(gr.is_zero(), || format!("three-term identity leaves {gr}"))?;
    let mut summary = Vec::new();
    for n in [2, 3] {
        let fam = CoefficientFamily::new(n, 8).map_err(|e| e.to_string())?;
        let r = pluecker_check(&fam).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("N={n}: {} violations, first {:?}", r.violations.len(), r.violations.first()))?;
        ensure(r.nontrivial > 0, || format!("N={n}: no nontrivial relation in window"))?;
        summary.push(format!("N={n}: {} relations ({} nontrivial)", r.relations_checked, r.nontrivial));
    }
    let t = start.elapsed();
    ensure(t <= Duration::from_secs(120), || format!("took {t:?}"))?;
    Ok(format!("{} in {:.1}s", summary.join(", "), t.as_secs_f64()))
}

fn c7() -> Outcome {
    for n in 2..=4 {
        let f = canonical_frame(n).map_err(|e| e.to_string())?;
        let et = eta(n).map_err(|e| e.to_string())?;
        for i in 1..=n as usize {
            ensure(f.x_at_critical(i).map_err(|e| e.to_string())? == f.u[i - 1], || format!("N={n}: u^{i} ≠ x(c_{i})"))?;
        }
        for a in 1..=n as usize {
            for b in 1..=n as usize {
                let g = f.psi_gram(a, b).map_err(|e| e.to_string())?;
                ensure(g.as_rational().as_ref() == Some(et.get(a, b)), || format!("N={n}: Ψ gram ({a},{b})"))?;
            }
        }
        let data = curverec::curve(n).map_err(|e| e.to_string())?;
        ensure(data.critical_values_match().map_err(|e| e.to_string())?, || format!("N={n}: x(a_i) ≠ u^i in the field"))?;
        let delta = data.delta_normalization().map_err(|e| e.to_string())?;
        ensure(delta.iter().all(|d| d.0), || format!("N={n}: Δ normalization {delta:?}"))?;
    }
    let mut tensors = 0;
    for n in 2..=4 {
        let local;
        let (e, g_max) = if n <= 3 {
            (tr_engine(n), 2)
        } else {
            local = TrEngine::new(n, TrConfig { cache_dir: None, ..TrConfig::new(1, 3) }).map_err(|e| e.to_string())?;
            (&local, 1)
        };
        for g in 0..=g_max {
            for k in 1..=3 {
                if 2 * g + k <= 2 {
                    continue;
                }
                let c = e.omega(g, k).map_err(|e| e.to_string())?;
                let bad = c.covariance_defects(&e.params().ram);
                ensure(bad.is_empty(), || format!("N={n} ω({g},{k}) not covariant at {:?}", bad.first()))?;
                tensors += 1;
            }
        }
    }
    Ok(format!("frame, curve and Δ identities for N ≤ 4; {tensors} covariant tensors"))
}

fn c8() -> Outcome {
    let order = TrConfig::new(2, 3).order();
    for n in 2..=4 {
        let p = normalized_params(n).map_err(|e| e.to_string())?;
        for i in 0..n as usize {
            let d = p.deck(i, order).map_err(|e| e.to_string())?;
            ensure(d.involution_defect().is_none(), || format!("N={n} point {i}: σ∘σ ≠ id"))?;
            let x = d.x_invariance_defect(&p).map_err(|e| e.to_string())?;
            ensure(x.is_none(), || format!("N={n} point {i}: x∘σ ≠ x at order {x:?}"))?;
        }
    }
    for n in [2, 3] {
        let small = tau(n);
        let large = tau_z(n, small.cap + n).map_err(|e| e.to_string())?;
        let d = small.homogeneity_defects(&large);
        ensure(d.is_empty(), || format!("N={n}: {} coefficients move with the cap", d.len()))?;
        let p = small.parity_violations().map_err(|e| e.to_string())?;
        ensure(p.is_empty(), || format!("N={n}: ε-parity broken at {:?}", p.first()))?;
    }
    let mut cfg = RunConfig::parse("N = 2,3\ng_max = 1\nn_max = 3\nweight_cap = 8\nsweep_k_max = 6\npluecker_window = 6")
        .map_err(|e| e.to_string())?;
    cfg.cache_dir = None;
    let mut reports = Vec::new();
    for threads in [1, 2, 4] {
        cfg.threads = Some(threads);
        let r = run_crosscheck(&cfg).map_err(|e| e.to_string())?;
        ensure(r.all_passed(), || format!("report has {} failures", r.summary.failed))?;
        reports.push((emit(&r, "json").map_err(|e| e.to_string())?, emit(&r, "csv").map_err(|e| e.to_string())?));
    }
    ensure(reports.windows(2).all(|w| w[0] == w[1]), || "reports differ across thread budgets".into())?;
    Ok(format!("deck series to order {order}, tau homogeneity and parity, identical reports for 1/2/4 threads"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("three-way agreement", c1),
        ("anchored values", c2),
        ("S-matrix gates", c3),
        ("residue identity sweep", c4),
        ("unstable closed forms", c5),
        ("Plücker certification", c6),
        ("geometry identities", c7),
        ("property suites", c8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
