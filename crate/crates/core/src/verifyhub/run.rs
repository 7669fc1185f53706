use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::curverec::{self, rhm01_from_curve, rhm02_from_curve, TrConfig, TrEngine};
use crate::exactmath::{factorial, to_exact_string, Rational};
use crate::frobdata::{canonical_frame, eta, s_column_residue_check, unstable01, unstable02, SMatrixTable};
use crate::maporacle::{enumerate_rhm_with, rhm01_closed, Convention, OracleConfig, Profile};
use crate::tauschur::{pluecker_check, tau_z, CoefficientFamily, TauTruncation};

use super::config::{Engine, RunConfig};
use super::report::{Record, Report};
use super::HubError;

/// Stable profiles `g ≤ g_max`, `1 ≤ n ≤ n_max`, nondecreasing degrees with
/// sum at most `w`.
pub fn profile_grid(g_max: u32, n_max: u32, w: u32) -> Vec<(u32, Vec<u32>)> {
    fn rec(n: usize, min: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in min..=left {
            let remaining = (n - cur.len() - 1) as u32;
            if d + remaining * d > left {
                break;
            }
            cur.push(d);
            rec(n, d, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 1..=n_max {
            if 2 * g + n <= 2 {
                continue;
            }
            let mut tuples = Vec::new();
            rec(n as usize, 1, w, &mut Vec::new(), &mut tuples);
            out.extend(tuples.into_iter().map(|d| (g, d)));
        }
    }
    out
}

/// Engines shared by the checks for one `N`, built before the fan-out.
struct PerN {
    n: u32,
    w: u32,
    tr: Option<Result<TrEngine, String>>,
    tau: Option<Result<TauTruncation, String>>,
}

impl PerN {
    fn tr(&self) -> Result<&TrEngine, String> {
        match &self.tr {
            Some(Ok(e)) => Ok(e),
            Some(Err(e)) => Err(format!("tr engine unavailable: {e}")),
            None => Err("tr engine not selected".into()),
        }
    }

    fn tau(&self) -> Result<&TauTruncation, String> {
        match &self.tau {
            Some(Ok(t)) => Ok(t),
            Some(Err(e)) => Err(format!("tau engine unavailable: {e}")),
            None => Err("tau engine not selected".into()),
        }
    }
}

fn prepare(cfg: &RunConfig, n: u32) -> PerN {
    let w = cfg.weight_cap_for(n);
    let tr = cfg.engines.contains(&Engine::Tr).then(|| {
        let tc = TrConfig {
            cache_dir: cfg.cache_dir.clone(),
            ..TrConfig::new(cfg.g_max, cfg.n_max)
        };
        let e = TrEngine::new(n, tc).map_err(|e| e.to_string())?;
        // Correlators are built once here so that the checks only read them.
        for g in 0..=cfg.g_max {
            for k in 1..=cfg.n_max {
                if 2 * g + k > 2 {
                    e.omega(g, k).map_err(|e| e.to_string())?;
                }
            }
        }
        e.extractor(w).map_err(|e| e.to_string())?;
        Ok(e)
    });
    let tau = cfg.engines.contains(&Engine::Tau).then(|| {
        let cap = w.max(cfg.sweep_k_max + 2).max(n);
        let t = tau_z(n, cap).map_err(|e| e.to_string())?;
        t.log().map_err(|e| e.to_string())?;
        Ok(t)
    });
    PerN { n, w, tr, tau }
}

type Task<'a> = (String, Box<dyn Fn() -> Vec<Record> + Send + Sync + 'a>);

fn guarded(task: &Task<'_>) -> Vec<Record> {
    match catch_unwind(AssertUnwindSafe(|| (task.1)())) {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            vec![Record::new(&task.0).failed(format!("panic: {msg}"))]
        }
    }
}

fn oracle_value(cfg: &RunConfig, n: u32, g: u32, degrees: &[u32]) -> Result<String, String> {
    let p = Profile::new(n, g, degrees.to_vec()).map_err(|e| e.to_string())?;
    let oc = OracleConfig { cap: cfg.dart_cap, convention: cfg.convention };
    enumerate_rhm_with(&p, &oc).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Fills in one value per selected engine and compares them.
fn rhm_record(cfg: &RunConfig, ctx: &PerN, check: &str, g: u32, degrees: &[u32], extra: Option<(&str, String)>) -> Record {
    let mut r = Record::new(check)
        .input("N", ctx.n)
        .input("g", g)
        .input("degrees", format!("{degrees:?}"));
    if let Some((k, v)) = extra {
        r = r.value(k, v);
    }
    let stable = 2 * g + degrees.len() as u32 > 2;
    let mut errors = Vec::new();
    for e in &cfg.engines {
        let v = match e {
            Engine::Oracle => oracle_value(cfg, ctx.n, g, degrees),
            Engine::Tau => ctx.tau().and_then(|t| t.rhm(g, degrees).map(|v| v.to_string()).map_err(|e| e.to_string())),
            Engine::Tr => {
                let res = match (stable, degrees) {
                    (true, _) => ctx.tr().and_then(|t| t.rhm(g, degrees).map_err(|e| e.to_string())),
                    (false, [d]) => rhm01_from_curve(ctx.n, d - 1).map_err(|e| e.to_string()),
                    (false, [d1, d2]) => rhm02_from_curve(ctx.n, d1 - 1, d2 - 1).map_err(|e| e.to_string()),
                    _ => Err("unsupported profile".into()),
                };
                res.map(|v| v.to_string())
            }
        };
        match v {
            Ok(v) => r = r.value(e.name(), v),
            Err(msg) => errors.push(format!("{}: {msg}", e.name())),
        }
    }
    if errors.is_empty() {
        r.agree()
    } else {
        r.failed(errors.join("; "))
    }
}

fn frob_tasks<'a>(cfg: &'a RunConfig, ctxs: &'a [PerN], tasks: &mut Vec<Task<'a>>) {
    for ctx in ctxs {
        let n = ctx.n;
        tasks.push((
            "s0_identity".into(),
            Box::new(move || {
                let r = Record::new("s0_identity").input("N", n);
                match SMatrixTable::build(n, 0) {
                    Ok(t) => {
                        let ok = (1..=n).all(|a| (1..=n).all(|b| *t.get(0, a, b) == Rational::from_integer((a == b).into())));
                        vec![r.holds(ok, "S_0 is not the identity")]
                    }
                    Err(e) => vec![r.failed(e)],
                }
            }),
        ));
        if n == 2 {
            tasks.push((
                "s1_n2".into(),
                Box::new(|| {
                    let r = Record::new("s1_n2").input("N", 2);
                    match SMatrixTable::build(2, 1) {
                        Ok(t) => {
                            let ok = (1..=2).all(|a| {
                                (1..=2).all(|b| {
                                    let want = if (a, b) == (2, 1) { 1 } else { 0 };
                                    *t.get(1, a, b) == Rational::from_integer(want.into())
                                })
                            });
                            vec![r.holds(ok, "S_1 differs from the single entry (2,1) = 1")]
                        }
                        Err(e) => vec![r.failed(e)],
                    }
                }),
            ));
        }
        tasks.push((
            "psi_orthogonality".into(),
            Box::new(move || {
                let r = Record::new("psi_orthogonality").input("N", n);
                let res = (|| -> Result<bool, String> {
                    let f = canonical_frame(n).map_err(|e| e.to_string())?;
                    let et = eta(n).map_err(|e| e.to_string())?;
                    for a in 1..=n as usize {
                        for b in 1..=n as usize {
                            let gram = f.psi_gram(a, b).map_err(|e| e.to_string())?;
                            if gram.as_rational().as_ref() != Some(et.get(a, b)) {
                                return Ok(false);
                            }
                        }
                    }
                    Ok(true)
                })();
                vec![match res {
                    Ok(ok) => r.holds(ok, "Σ Ψ^i_α Ψ^i_β differs from η"),
                    Err(e) => r.failed(e),
                }]
            }),
        ));
        tasks.push((
            "residue_sweep".into(),
            Box::new(move || {
                let kmax = cfg.sweep_k_max;
                let mut r = Record::new("residue_sweep").input("N", n).input("k_max", kmax);
                let mut checked = 0u64;
                let mut bad = Vec::new();
                for alpha in 1..=n {
                    for k in 0..=kmax {
                        for a in 0..=k {
                            checked += 1;
                            match s_column_residue_check(n, alpha, a, k as i64) {
                                Ok(true) => {}
                                Ok(false) => bad.push(format!("α={alpha} a={a} k={k}")),
                                Err(e) => bad.push(format!("α={alpha} a={a} k={k}: {e}")),
                            }
                        }
                    }
                }
                r = r.value("checked", checked).value("failures", bad.len());
                let detail = bad.first().cloned().unwrap_or_default();
                vec![r.holds(bad.is_empty(), &format!("first failure {detail}"))]
            }),
        ));
        tasks.push((
            "unstable01".into(),
            Box::new(move || {
                (0..=cfg.sweep_k_max)
                    .map(|k| {
                        let closed = unstable01(n, k)
                            .map(|v| to_exact_string(&(v * Rational::from_integer(factorial(k + 1)))))
                            .unwrap_or_else(|e| format!("error: {e}"));
                        rhm_record(cfg, ctx, "unstable01", 0, &[k + 1], Some(("closed_form", closed)))
                    })
                    .collect()
            }),
        ));
        tasks.push((
            "unstable02".into(),
            Box::new(move || {
                let kmax = cfg.sweep_k_max;
                let mut out = Vec::new();
                for k1 in 0..=kmax {
                    for k2 in k1..=kmax - k1 {
                        let closed = unstable02(n, k1, k2)
                            .map(|v| {
                                let f = factorial(k1 + 1) * factorial(k2 + 1);
                                to_exact_string(&(v * Rational::from_integer(f)))
                            })
                            .unwrap_or_else(|e| format!("error: {e}"));
                        out.push(rhm_record(cfg, ctx, "unstable02", 0, &[k1 + 1, k2 + 1], Some(("closed_form", closed))));
                    }
                }
                out
            }),
        ));
    }
}

fn calibration_record(cfg: &RunConfig) -> Record {
    let cap = cfg.dart_cap.min(8);
    let mut r = Record::new("oracle_calibration").input("cap", cap);
    let oc = OracleConfig { cap, convention: cfg.convention };
    for n in 2..=4 {
        for k in 0..cap {
            let got = Profile::new(n, 0, vec![k + 1])
                .map_err(|e| e.to_string())
                .and_then(|p| enumerate_rhm_with(&p, &oc).map_err(|e| e.to_string()));
            let want = rhm01_closed(n, k);
            match got {
                Ok(v) if BigInt::from(v) == want => {}
                Ok(v) => {
                    let hint = match cfg.convention {
                        Convention::Standard => "",
                        Convention::FaceVertexSwap => {
                            "; vertices are being counted as cycles of φ_B instead of φ_W∘φ_B"
                        }
                    };
                    r = r.value("oracle", v).value("closed_form", want);
                    return r.failed(format!("RHM_{{0;{}}} at N={n} is off{hint}", k + 1));
                }
                Err(e) => return r.failed(e),
            }
        }
    }
    r
}

fn build_tasks<'a>(cfg: &'a RunConfig, ctxs: &'a [PerN]) -> Vec<Task<'a>> {
    let mut tasks: Vec<Task<'a>> = Vec::new();
    frob_tasks(cfg, ctxs, &mut tasks);
    if cfg.engines.contains(&Engine::Oracle) {
        tasks.push(("oracle_calibration".into(), Box::new(move || vec![calibration_record(cfg)])));
    }
    for ctx in ctxs {
        for (g, d) in profile_grid(cfg.g_max, cfg.n_max, ctx.w) {
            tasks.push(("rhm".into(), Box::new(move || vec![rhm_record(cfg, ctx, "rhm", g, &d, None)])));
        }
    }
    for ctx in ctxs {
        let n = ctx.n;
        let window = cfg.pluecker_window;
        tasks.push((
            "pluecker".into(),
            Box::new(move || {
                let r = Record::new("pluecker").input("N", n).input("window", window);
                let rep = CoefficientFamily::new(n, window)
                    .map_err(|e| e.to_string())
                    .and_then(|f| pluecker_check(&f).map_err(|e| e.to_string()));
                vec![match rep {
                    Ok(p) => r
                        .value("relations", p.relations_checked)
                        .value("nontrivial", p.nontrivial)
                        .value("violations", p.violations.len())
                        .holds(p.passed(), "Plücker relation violated"),
                    Err(e) => r.failed(e),
                }]
            }),
        ));
        if cfg.engines.contains(&Engine::Tau) {
            tasks.push((
                "tau_properties".into(),
                Box::new(move || tau_records(ctx)),
            ));
        }
    }
    for ctx in ctxs {
        let n = ctx.n;
        tasks.push(("curve_identities".into(), Box::new(move || curve_records(n))));
    }
    if cfg.engines.contains(&Engine::Tr) {
        for ctx in ctxs {
            tasks.push(("covariance".into(), Box::new(move || covariance_records(cfg, ctx))));
        }
    }
    tasks
}

fn tau_records(ctx: &PerN) -> Vec<Record> {
    let n = ctx.n;
    let t = match ctx.tau() {
        Ok(t) => t,
        Err(e) => return vec![Record::new("tau_homogeneity").input("N", n).failed(e)],
    };
    let hom = Record::new("tau_homogeneity").input("N", n).input("cap", t.cap);
    let hom = match tau_z(n, t.cap + n) {
        Ok(larger) => {
            let d = t.homogeneity_defects(&larger);
            hom.value("defects", d.len()).holds(d.is_empty(), "coefficients change with a larger cap")
        }
        Err(e) => hom.failed(e),
    };
    let par = Record::new("tau_parity").input("N", n).input("cap", t.cap);
    let par = match t.parity_violations() {
        Ok(v) => par.value("violations", v.len()).holds(v.is_empty(), "odd or too negative ε-power in log 𝒵"),
        Err(e) => par.failed(e),
    };
    vec![hom, par]
}

fn curve_records(n: u32) -> Vec<Record> {
    let data = match curverec::curve(n) {
        Ok(d) => d,
        Err(e) => return vec![Record::new("critical_values").input("N", n).failed(e)],
    };
    let cv = Record::new("critical_values").input("N", n);
    let cv = match data.critical_values_match() {
        Ok(ok) => cv.holds(ok, "x(a_i) differs from u^i"),
        Err(e) => cv.failed(e),
    };
    let dn = Record::new("delta_normalization").input("N", n);
    let dn = match data.delta_normalization() {
        Ok(v) => {
            let signs: Vec<String> = v.iter().map(|x| x.1.to_string()).collect();
            dn.value("branch_signs", signs.join(","))
                .holds(v.iter().all(|x| x.0), "Δ_j does not match x''(a_j)")
        }
        Err(e) => dn.failed(e),
    };
    vec![cv, dn]
}

fn covariance_records(cfg: &RunConfig, ctx: &PerN) -> Vec<Record> {
    let n = ctx.n;
    let e = match ctx.tr() {
        Ok(e) => e,
        Err(msg) => return vec![Record::new("covariance").input("N", n).failed(msg)],
    };
    let mut out = Vec::new();
    let order = e.config().order();
    let deck = Record::new("deck").input("N", n).input("order", order);
    let mut bad = None;
    for i in 0..n as usize {
        let res = e.params().deck(i, order).and_then(|d| {
            let inv = d.involution_defect();
            let xi = d.x_invariance_defect(e.params())?;
            Ok(inv.is_none() && xi.is_none())
        });
        match res {
            Ok(true) => {}
            Ok(false) => bad = Some(format!("deck series at point {i} fails below order {order}")),
            Err(err) => bad = Some(err.to_string()),
        }
    }
    out.push(match bad {
        Some(m) => deck.failed(m),
        None => deck,
    });
    for g in 0..=cfg.g_max {
        for k in 1..=cfg.n_max {
            if 2 * g + k <= 2 {
                continue;
            }
            let r = Record::new("covariance").input("N", n).input("g", g).input("n", k);
            out.push(match e.omega(g, k) {
                Ok(c) => {
                    let d = c.covariance_defects(&e.params().ram);
                    r.value("entries", c.entries.len())
                        .value("defects", d.len())
                        .holds(d.is_empty(), "tensor is not rotation covariant")
                }
                Err(err) => r.failed(err),
            });
        }
    }
    out
}

/// Runs every check selected by `cfg` and assembles the report in a fixed
/// order.
pub fn run_crosscheck(cfg: &RunConfig) -> Result<Report, HubError> {
    if cfg.engines.is_empty() {
        return Err(HubError::NoEngines);
    }
    if cfg.ns.is_empty() {
        return Err(HubError::Config("empty N list".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| HubError::Pool(e.to_string()))?;
    let records = pool.install(|| {
        let ctxs: Vec<PerN> = cfg.ns.iter().map(|&n| prepare(cfg, n)).collect();
        let tasks = build_tasks(cfg, &ctxs);
        tasks.par_iter().map(guarded).collect::<Vec<_>>()
    });
    Ok(Report::new(cfg.echo(), records.concat()))
}
