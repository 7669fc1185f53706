//! `hypermaps`: exact rooted-hypermap counts and the checks around them.
//!
//! Exit codes: 0 when everything requested passes, 1 on a verification
//! failure, 2 on invalid input.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypermap_core::curverec::{self, rhm01_from_curve, rhm02_from_curve, TrConfig, TrEngine};
use hypermap_core::exactmath::to_exact_string;
use hypermap_core::frobdata::{canonical_frame, eta, mu_charge, SMatrixTable};
use hypermap_core::maporacle::{enumerate_rhm_with, Convention, OracleConfig, Profile};
use hypermap_core::tauschur::{partitions_up_to, pluecker_check, tau_z, CoefficientFamily};
use hypermap_core::verifyhub::{emit_as, run_crosscheck, RunConfig};

#[derive(Parser)]
#[command(name = "hypermaps", version, about = "Exact rooted-hypermap computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Oracle,
    Tr,
    Tau,
}

#[derive(Clone, Copy, ValueEnum)]
enum TauEmit {
    Coefficients,
    Log,
    Pluecker,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count rooted hypermaps for one profile.
    Rhm {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Side counts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        /// Engines to run; all three when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        engine: Vec<EngineArg>,
        #[arg(long, default_value_t = 12)]
        dart_cap: u32,
        #[arg(long, env = "RHM_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Run the full verification chain and print a report.
    Crosscheck {
        /// Flat `key = value` configuration file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "N", value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long)]
        g_max: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        weight_cap: Option<u32>,
        #[arg(long)]
        dart_cap: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        engine: Vec<String>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, env = "RHM_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the matrices `S_0..=S_m`.
    Smatrix {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
    },
    /// Coefficients of the tau function, its logarithm, or Plücker checks.
    Tau {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 8)]
        weight_cap: u32,
        #[arg(long, value_enum, default_value = "coefficients")]
        emit: TauEmit,
        #[arg(long, default_value_t = 2)]
        g_max: u32,
    },
    /// Ramification data and geometric identities of the spectral curve.
    Curve {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
    /// Metric, charges and canonical frame at the special point.
    Frobenius {
        #[arg(long = "N")]
        n: u32,
    },
    /// Quadratic Plücker relations for the coefficient family.
    Pluecker {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 8)]
        weight_cap: u32,
    },
}

enum Failure {
    Verify(Value),
    Input(String),
}

type Outcome = Result<Value, Failure>;

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn cmd_rhm(
    n: u32,
    g: u32,
    degrees: Vec<u32>,
    engines: Vec<EngineArg>,
    dart_cap: u32,
    cache_dir: Option<PathBuf>,
) -> Outcome {
    let profile = Profile::new(n, g, degrees.clone()).map_err(input)?;
    let engines = if engines.is_empty() {
        vec![EngineArg::Oracle, EngineArg::Tr, EngineArg::Tau]
    } else {
        engines
    };
    let mut values = BTreeMap::new();
    for e in engines {
        let (name, v) = match e {
            EngineArg::Oracle => {
                let cfg = OracleConfig { cap: dart_cap, convention: Convention::Standard };
                ("oracle", enumerate_rhm_with(&profile, &cfg).map_err(input)?.to_string())
            }
            EngineArg::Tau => ("tau", hypermap_core::tauschur::rhm_from_tau(n, g, &degrees).map_err(input)?.to_string()),
            EngineArg::Tr => {
                let v = match (profile.is_stable(), degrees.as_slice()) {
                    (true, _) => {
                        let cfg = TrConfig { cache_dir: cache_dir.clone(), ..TrConfig::new(g, degrees.len() as u32) };
                        TrEngine::new(n, cfg).and_then(|e| e.rhm(g, &degrees))
                    }
                    (false, [d]) => rhm01_from_curve(n, d - 1),
                    (false, [d1, d2]) => rhm02_from_curve(n, d1 - 1, d2 - 1),
                    _ => unreachable!("unstable profiles have one or two faces"),
                };
                ("tr", v.map_err(input)?.to_string())
            }
        };
        values.insert(name, v);
    }
    let agree = values.values().collect::<std::collections::BTreeSet<_>>().len() <= 1;
    let out = json!({"N": n, "g": g, "degrees": degrees, "rhm": values, "agree": agree});
    if agree {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}

fn cmd_tau(n: u32, w: u32, emit: TauEmit, g_max: u32) -> Outcome {
    match emit {
        TauEmit::Coefficients => {
            let fam = CoefficientFamily::new(n, w).map_err(input)?;
            let rows: Vec<Value> = partitions_up_to(w)
                .iter()
                .map(|l| json!({"lambda": l, "A": fam.get(l)}))
                .collect();
            Ok(Value::Array(rows))
        }
        TauEmit::Log => {
            let t = tau_z(n, w).map_err(input)?;
            let log = t.log().map_err(input)?;
            let mut rows = Vec::new();
            for (m, c) in log.terms() {
                let degrees: Vec<u32> = m
                    .exponents()
                    .iter()
                    .flat_map(|&(k, e)| std::iter::repeat(k as u32).take(e as usize))
                    .collect();
                for g in 0..=g_max {
                    if c.coeff(2 * g as i32 - 2) == Default::default() {
                        continue;
                    }
                    let v = t.rhm(g, &degrees).map_err(input)?;
                    rows.push(json!({"degrees": degrees, "g": g, "rhm": v.to_string()}));
                }
            }
            Ok(Value::Array(rows))
        }
        TauEmit::Pluecker => cmd_pluecker(n, w),
    }
}

fn cmd_pluecker(n: u32, w: u32) -> Outcome {
    let fam = CoefficientFamily::new(n, w).map_err(input)?;
    let rep = pluecker_check(&fam).map_err(input)?;
    let v = serde_json::to_value(&rep).map_err(input)?;
    if rep.passed() {
        Ok(v)
    } else {
        Err(Failure::Verify(v))
    }
}

fn cmd_smatrix(n: u32, m_max: u32) -> Outcome {
    let t = SMatrixTable::build(n, m_max).map_err(input)?;
    let sym: Vec<Value> = t
        .symplectic_report()
        .map_err(input)?
        .into_iter()
        .map(|(k, ok)| json!({"k": k, "holds": ok}))
        .collect();
    Ok(json!({"table": t, "symplectic": sym}))
}

fn cmd_frobenius(n: u32) -> Outcome {
    let et = eta(n).map_err(input)?;
    let (mu, r) = mu_charge(n).map_err(input)?;
    let frame = canonical_frame(n).map_err(input)?;
    let mu: Vec<String> = mu.iter().map(to_exact_string).collect();
    Ok(json!({"eta": et, "mu": mu, "r": to_exact_string(&r), "frame": frame}))
}

fn cmd_curve(n: u32, order: u32) -> Outcome {
    let data = curverec::curve(n).map_err(input)?;
    let cv = data.critical_values_match().map_err(input)?;
    let delta = data.delta_normalization().map_err(input)?;
    let params = curverec::normalized_params(n).map_err(input)?;
    let mut deck_ok = true;
    for i in 0..n as usize {
        let d = params.deck(i, order).map_err(input)?;
        deck_ok &= d.involution_defect().is_none() && d.x_invariance_defect(&params).map_err(input)?.is_none();
    }
    let ram: Vec<Value> = data
        .ram()
        .iter()
        .map(|a| Value::Array(a.coeffs().iter().map(|c| Value::String(to_exact_string(c))).collect()))
        .collect();
    let delta_ok = delta.iter().all(|d| d.0);
    let out = json!({
        "N": n,
        "field": data.field().label(),
        "ramification_points": ram,
        "critical_values_match": cv,
        "delta_normalization": delta_ok,
        "delta_branch_signs": delta.iter().map(|d| d.1).collect::<Vec<_>>(),
        "deck_checks": deck_ok,
    });
    if cv && delta_ok && deck_ok {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}

fn print(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    let _ = writeln!(std::io::stdout(), "{text}");
}

#[allow(clippy::too_many_arguments)]
fn cmd_crosscheck(
    config: Option<PathBuf>,
    n: Vec<u32>,
    g_max: Option<u32>,
    n_max: Option<u32>,
    weight_cap: Option<u32>,
    dart_cap: Option<u32>,
    engine: Vec<String>,
    out: Option<String>,
    cache_dir: Option<PathBuf>,
    threads: Option<usize>,
    output: Option<PathBuf>,
) -> Result<bool, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(p) = config {
        let text = std::fs::read_to_string(&p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        cfg.apply_text(&text).map_err(input)?;
    }
    let list = |v: &[String]| v.join(",");
    let mut set = |k: &str, v: Option<String>| -> Result<(), Failure> {
        match v {
            Some(v) => cfg.set(k, &v).map_err(input),
            None => Ok(()),
        }
    };
    set("N", (!n.is_empty()).then(|| list(&n.iter().map(u32::to_string).collect::<Vec<_>>())))?;
    set("g_max", g_max.map(|v| v.to_string()))?;
    set("n_max", n_max.map(|v| v.to_string()))?;
    set("weight_cap", weight_cap.map(|v| v.to_string()))?;
    set("dart_cap", dart_cap.map(|v| v.to_string()))?;
    set("engines", (!engine.is_empty()).then(|| list(&engine)))?;
    set("format", out)?;
    set("cache_dir", cache_dir.map(|p| p.display().to_string()))?;
    set("threads", threads.map(|v| v.to_string()))?;
    let report = run_crosscheck(&cfg).map_err(input)?;
    let bytes = emit_as(&report, cfg.format).map_err(input)?;
    match output {
        Some(p) => std::fs::write(&p, &bytes).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => {
            use std::io::Write;
            let _ = std::io::stdout().write_all(&bytes);
        }
    }
    for r in report.failures() {
        eprintln!("FAIL {} {:?}: {}", r.check, r.inputs, r.detail);
    }
    eprintln!(
        "{} checks, {} passed, {} failed",
        report.summary.total, report.summary.passed, report.summary.failed
    );
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Crosscheck {
            config,
            n,
            g_max,
            n_max,
            weight_cap,
            dart_cap,
            engine,
            out,
            cache_dir,
            threads,
            output,
        } => {
            return match cmd_crosscheck(
                config, n, g_max, n_max, weight_cap, dart_cap, engine, out, cache_dir, threads, output,
            ) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(Failure::Input(m)) => {
                    eprintln!("error: {m}");
                    ExitCode::from(2)
                }
                Err(Failure::Verify(v)) => {
                    print(&v);
                    ExitCode::from(1)
                }
            };
        }
        Cmd::Rhm { n, genus, degrees, engine, dart_cap, cache_dir } => {
            cmd_rhm(n, genus, degrees, engine, dart_cap, cache_dir)
        }
        Cmd::Smatrix { n, m_max } => cmd_smatrix(n, m_max),
        Cmd::Tau { n, weight_cap, emit, g_max } => cmd_tau(n, weight_cap, emit, g_max),
        Cmd::Curve { n, order } => cmd_curve(n, order),
        Cmd::Frobenius { n } => cmd_frobenius(n),
        Cmd::Pluecker { n, weight_cap } => cmd_pluecker(n, weight_cap),
    };
    match outcome {
        Ok(v) => {
            print(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(v)) => {
            print(&v);
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
