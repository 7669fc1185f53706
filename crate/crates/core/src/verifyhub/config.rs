use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::maporacle::Convention;

use super::HubError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Oracle,
    Tr,
    Tau,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Tr => "tr",
            Engine::Tau => "tau",
        }
    }
}

impl FromStr for Engine {
    type Err = HubError;
    fn from_str(s: &str) -> Result<Self, HubError> {
        match s.trim() {
            "oracle" => Ok(Engine::Oracle),
            "tr" => Ok(Engine::Tr),
            "tau" => Ok(Engine::Tau),
            other => Err(HubError::Config(format!("unknown engine '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = HubError;
    fn from_str(s: &str) -> Result<Self, HubError> {
        match s.trim() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(HubError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// Settings for [`super::run_crosscheck`]. Parsed from flat `key = value`
/// text; later assignments override earlier ones.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub ns: Vec<u32>,
    pub g_max: u32,
    pub n_max: u32,
    /// Degree-sum cap per `N`; `None` uses [`RunConfig::default_weight_cap`].
    pub weight_cap: Option<u32>,
    pub dart_cap: u32,
    pub engines: BTreeSet<Engine>,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub convention: Convention,
    /// Largest `k` in the residue sweep and the unstable checks.
    pub sweep_k_max: u32,
    pub pluecker_window: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ns: vec![2, 3],
            g_max: 2,
            n_max: 3,
            weight_cap: None,
            dart_cap: 12,
            engines: [Engine::Oracle, Engine::Tr, Engine::Tau].into_iter().collect(),
            format: OutputFormat::Json,
            cache_dir: std::env::var_os("RHM_CACHE_DIR").map(PathBuf::from),
            threads: None,
            convention: Convention::Standard,
            sweep_k_max: 8,
            pluecker_window: 8,
        }
    }
}

fn parse_u32(key: &str, v: &str) -> Result<u32, HubError> {
    v.trim()
        .parse()
        .map_err(|_| HubError::Config(format!("{key}: expected a nonnegative integer, got '{v}'")))
}

fn positive(key: &str, v: &str) -> Result<u32, HubError> {
    let x = parse_u32(key, v)?;
    if x == 0 {
        return Err(HubError::Config(format!("{key} must be positive")));
    }
    Ok(x)
}

impl RunConfig {
    /// `10` for `N = 2`, `9` otherwise.
    pub fn default_weight_cap(n: u32) -> u32 {
        if n == 2 {
            10
        } else {
            9
        }
    }

    pub fn weight_cap_for(&self, n: u32) -> u32 {
        self.weight_cap.unwrap_or_else(|| Self::default_weight_cap(n))
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HubError> {
        let v = value.trim();
        match key.trim() {
            "N" | "n_list" => {
                let ns = v
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_u32("N", s))
                    .collect::<Result<Vec<_>, _>>()?;
                if ns.iter().any(|&n| n < 2) {
                    return Err(HubError::Config("N must be at least 2".into()));
                }
                self.ns = ns;
            }
            "g_max" => self.g_max = parse_u32("g_max", v)?,
            "n_max" => self.n_max = positive("n_max", v)?,
            "weight_cap" => self.weight_cap = Some(positive("weight_cap", v)?),
            "dart_cap" => self.dart_cap = positive("dart_cap", v)?,
            "engines" => {
                self.engines = v
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(Engine::from_str)
                    .collect::<Result<_, _>>()?;
            }
            "format" | "out" => self.format = v.parse()?,
            "cache_dir" => self.cache_dir = (!v.is_empty()).then(|| PathBuf::from(v)),
            "threads" => self.threads = Some(positive("threads", v)? as usize),
            "convention" => {
                self.convention = match v {
                    "standard" => Convention::Standard,
                    "face_vertex_swap" => Convention::FaceVertexSwap,
                    _ => return Err(HubError::Config(format!("unknown convention '{v}'"))),
                }
            }
            "sweep_k_max" => self.sweep_k_max = parse_u32("sweep_k_max", v)?,
            "pluecker_window" => self.pluecker_window = parse_u32("pluecker_window", v)?,
            other => return Err(HubError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), HubError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HubError::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, HubError> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// The settings that determine report content. Thread budget and cache
    /// location are left out so reports compare byte for byte.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let join = |v: Vec<String>| v.join(",");
        let mut m = BTreeMap::new();
        m.insert("N".into(), join(self.ns.iter().map(u32::to_string).collect()));
        m.insert("g_max".into(), self.g_max.to_string());
        m.insert("n_max".into(), self.n_max.to_string());
        let caps = self.ns.iter().map(|&n| format!("{n}:{}", self.weight_cap_for(n))).collect();
        m.insert("weight_cap".into(), join(caps));
        m.insert("dart_cap".into(), self.dart_cap.to_string());
        m.insert("engines".into(), join(self.engines.iter().map(|e| e.name().to_string()).collect()));
        m.insert(
            "convention".into(),
            match self.convention {
                Convention::Standard => "standard",
                Convention::FaceVertexSwap => "face_vertex_swap",
            }
            .into(),
        );
        m.insert("sweep_k_max".into(), self.sweep_k_max.to_string());
        m.insert("pluecker_window".into(), self.pluecker_window.to_string());
        m
    }
}
