//! Memoized topological recursion in a global pole basis
//! `ξ_{a,k}(z) = dz/(z-a)^k`.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::exactmath::{int, NFElem};

use super::cache;
use super::curve::CurveParams;
use super::extract::Extractor;
use super::local::Ser;
use super::CurveError;

/// `(index into the ramification list, pole order)`.
pub type Key = (u8, u16);

/// `ω_{g,n} = Σ coeff · ∏_i ξ_{a_i,k_i}(z_i)`, stored for every ordering of
/// the slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correlator {
    pub g: u32,
    pub n: u32,
    #[serde(serialize_with = "ser_entries")]
    pub entries: BTreeMap<Vec<Key>, NFElem>,
}

fn ser_entries<S: serde::Serializer>(m: &BTreeMap<Vec<Key>, NFElem>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter())
}

impl Correlator {
    pub fn max_pole_order(&self) -> u16 {
        self.entries.keys().flatten().map(|k| k.1).max().unwrap_or(0)
    }

    /// Invariance under all slot permutations, checked on a transposition
    /// and an `n`-cycle.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n as usize;
        if n < 2 {
            return true;
        }
        self.entries.iter().all(|(k, v)| {
            let mut sw = k.clone();
            sw.swap(0, 1);
            let mut rot = k.clone();
            rot.rotate_left(1);
            self.entries.get(&sw) == Some(v) && self.entries.get(&rot) == Some(v)
        })
    }
}

pub fn pole_bound(g: u32, n: u32) -> u32 {
    (6 * g + 2 * n).saturating_sub(4)
}

#[derive(Clone, Debug)]
pub struct TrConfig {
    pub g_max: u32,
    pub n_max: u32,
    /// Local expansion order; defaults to `6 g_max + 2 n_max + 6`.
    pub order: Option<u32>,
    pub check_symmetry: bool,
    /// Directory for serialized correlators; defaults to `$RHM_CACHE_DIR`.
    pub cache_dir: Option<PathBuf>,
}

impl TrConfig {
    pub fn new(g_max: u32, n_max: u32) -> Self {
        Self {
            g_max,
            n_max,
            order: None,
            check_symmetry: true,
            cache_dir: std::env::var_os("RHM_CACHE_DIR").map(PathBuf::from),
        }
    }

    pub fn order(&self) -> u32 {
        self.order.unwrap_or(6 * self.g_max + 2 * self.n_max + 6)
    }
}

/// Local data at one ramification point, `z = a + t`, `σ(z) = a + s(t)`.
struct PointData {
    /// `W_j = σ'(t^j - s^j) / (2(s - t) x'(a + t))`.
    w: Vec<Ser>,
    /// `(a - b + t)^{-k}` indexed `[b][k-1]`.
    pole_t: Vec<Vec<Ser>>,
    /// `(a - b + s)^{-k}`.
    pole_s: Vec<Vec<Ser>>,
    /// `s^m`.
    s_pow: Vec<Ser>,
    /// `(t - s)^{-2}`.
    diag: Ser,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Slot {
    Z,
    Sigma,
}

type LocalExp = Arc<Vec<(Vec<Key>, Ser)>>;

pub struct TrEngine {
    params: CurveParams,
    cfg: TrConfig,
    k_max: u32,
    order: i64,
    points: Vec<PointData>,
    cache_tag: Option<String>,
    memo: Mutex<BTreeMap<(u32, u32), Arc<Correlator>>>,
    extractor: Mutex<Option<Arc<Extractor>>>,
}

impl TrEngine {
    /// Engine on the rescaled curve over `Q(ζ_N)` (see
    /// [`super::normalized_params`]).
    pub fn new(n: u32, cfg: TrConfig) -> Result<Self, CurveError> {
        let params = super::curve::normalized_params(n)?;
        Self::build(params, cfg, Some("norm".into()))
    }

    /// Engine on arbitrary curve data; never cached on disk.
    pub fn with_params(params: CurveParams, cfg: TrConfig) -> Result<Self, CurveError> {
        Self::build(params, cfg, None)
    }

    fn build(params: CurveParams, cfg: TrConfig, cache_tag: Option<String>) -> Result<Self, CurveError> {
        let k_max = pole_bound(cfg.g_max, cfg.n_max);
        let order = cfg.order() as i64;
        if order < k_max as i64 + 1 {
            return Err(CurveError::Precision(format!("order {order} below pole bound {k_max} + 1")));
        }
        let points = (0..params.ram.len())
            .map(|i| point_data(&params, i, k_max as i64, order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            params,
            cfg,
            k_max,
            order,
            points,
            cache_tag,
            memo: Mutex::new(BTreeMap::new()),
            extractor: Mutex::new(None),
        })
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn config(&self) -> &TrConfig {
        &self.cfg
    }

    pub fn pole_limit(&self) -> u32 {
        self.k_max
    }

    pub(crate) fn extractor(&self, d_max: u32) -> Result<Arc<Extractor>, CurveError> {
        let mut slot = self.extractor.lock().unwrap();
        if let Some(e) = slot.as_ref().filter(|e| e.d_max >= d_max) {
            return Ok(e.clone());
        }
        let e = Arc::new(Extractor::new(&self.params, self.k_max, d_max)?);
        *slot = Some(e.clone());
        Ok(e)
    }

    pub fn omega(&self, g: u32, n: u32) -> Result<Arc<Correlator>, CurveError> {
        if n == 0 || 2 * g + n <= 2 {
            return Err(CurveError::Unstable { g, n });
        }
        if pole_bound(g, n) > self.k_max {
            return Err(CurveError::OutOfRange { g, n });
        }
        if let Some(c) = self.memo.lock().unwrap().get(&(g, n)) {
            return Ok(c.clone());
        }
        let cache_path = match (&self.cfg.cache_dir, &self.cache_tag) {
            (Some(dir), Some(tag)) => Some(cache::path(dir, tag, self.params.n, g, n, self.order as u32)),
            _ => None,
        };
        let loaded = match &cache_path {
            Some(p) => cache::load(p, &self.params.field, g, n).ok().flatten(),
            None => None,
        };
        let c = match loaded {
            Some(c) => c,
            None => {
                let c = self.compute(g, n)?;
                if let Some(p) = &cache_path {
                    cache::store(p, &c, self.params.n, self.order as u32)?;
                }
                c
            }
        };
        let c = Arc::new(c);
        self.memo.lock().unwrap().entry((g, n)).or_insert_with(|| c.clone());
        Ok(c)
    }

    fn compute(&self, g: u32, n: u32) -> Result<Correlator, CurveError> {
        let rest = n as usize - 1;
        // Make sure every input exists before the per-point work.
        if g >= 1 && !(g == 1 && rest == 0) {
            self.omega(g - 1, n + 1)?;
        }
        for g1 in 0..=g {
            for m1 in 0..=rest {
                let (n1, n2) = (1 + m1 as u32, 1 + (rest - m1) as u32);
                let g2 = g - g1;
                if (g1, n1) == (0, 1) || (g2, n2) == (0, 1) {
                    continue;
                }
                for (gg, nn) in [(g1, n1), (g2, n2)] {
                    if !(gg == 0 && nn == 2) {
                        self.omega(gg, nn)?;
                    }
                }
            }
        }
        let parts = (0..self.points.len())
            .into_par_iter()
            .map(|ai| self.contributions(g, n, ai))
            .collect::<Result<Vec<_>, _>>()?;
        let mut entries: BTreeMap<Vec<Key>, NFElem> = BTreeMap::new();
        for part in parts {
            for (k, v) in part {
                match entries.get_mut(&k) {
                    Some(x) => *x = x.add(&v),
                    None => {
                        entries.insert(k, v);
                    }
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        let bound = pole_bound(g, n) as u16;
        if let Some(k) = entries.keys().flatten().find(|k| k.1 > bound) {
            return Err(CurveError::PoleBound { g, n, order: k.1 as u32, bound: bound as u32 });
        }
        let c = Correlator { g, n, entries };
        if self.cfg.check_symmetry && !c.is_symmetric() {
            return Err(CurveError::Asymmetric { g, n });
        }
        Ok(c)
    }

    /// Local expansion of `ω_{g,n}` in its first slot at `z = a + t` (or at
    /// `σ(z)`), keyed by the remaining slots.
    fn local(&self, g: u32, n: u32, ai: usize, slot: Slot) -> Result<LocalExp, CurveError> {
        let p = &self.points[ai];
        let f = &self.params.field;
        let mut out = Vec::new();
        if (g, n) == (0, 2) {
            // dz dz'/(z - z')² = Σ_m (m+1) t^m ξ_{a,m+2}(z')
            for m in 0..=(self.k_max as usize + 1) {
                let base = match slot {
                    Slot::Z => Ser::mono(f.one(), m as i64),
                    Slot::Sigma => p.s_pow[m].clone(),
                };
                let key = vec![(ai as u8, m as u16 + 2)];
                out.push((key, base.scale(&f.from_rational(int(m as i64 + 1)))));
            }
            return Ok(Arc::new(out));
        }
        let corr = self.omega(g, n)?;
        let table = match slot {
            Slot::Z => &p.pole_t,
            Slot::Sigma => &p.pole_s,
        };
        let mut grouped: BTreeMap<&[Key], Ser> = BTreeMap::new();
        for (keys, c) in &corr.entries {
            let (b, k) = keys[0];
            let series = &table[b as usize][k as usize - 1];
            grouped
                .entry(&keys[1..])
                .or_insert_with(|| Ser::zero(f))
                .add_scaled(series, c);
        }
        out.extend(grouped.into_iter().map(|(k, s)| (k.to_vec(), s)));
        Ok(Arc::new(out))
    }

    fn contributions(&self, g: u32, n: u32, ai: usize) -> Result<Vec<(Vec<Key>, NFElem)>, CurveError> {
        let p = &self.points[ai];
        let f = &self.params.field;
        let rest = n as usize - 1;
        let mut out: BTreeMap<Vec<Key>, NFElem> = BTreeMap::new();
        let mut emit = |rest_keys: Vec<Key>, fser: &Ser| -> Result<(), CurveError> {
            if fser.is_zero() {
                return Ok(());
            }
            for (j, w) in p.w.iter().enumerate() {
                let r = fser.residue_pairing(w)?;
                if r.is_zero() {
                    continue;
                }
                let mut key = Vec::with_capacity(rest + 1);
                key.push((ai as u8, j as u16 + 1));
                key.extend_from_slice(&rest_keys);
                match out.get_mut(&key) {
                    Some(x) => *x = x.add(&r),
                    None => {
                        out.insert(key, r);
                    }
                }
            }
            Ok(())
        };

        // ω_{g-1,n+1}(z, σ(z), z_I)
        if g >= 1 {
            if g == 1 && rest == 0 {
                emit(Vec::new(), &p.diag)?;
            } else {
                let corr = self.omega(g - 1, n + 1)?;
                let mut grouped: BTreeMap<(&[Key], Key), Ser> = BTreeMap::new();
                for (keys, c) in &corr.entries {
                    let (b, k) = keys[1];
                    grouped
                        .entry((&keys[2..], keys[0]))
                        .or_insert_with(|| Ser::zero(f))
                        .add_scaled(&p.pole_s[b as usize][k as usize - 1], c);
                }
                let mut per_rest: BTreeMap<&[Key], Ser> = BTreeMap::new();
                for ((r, (b, k)), gs) in grouped {
                    let prod = p.pole_t[b as usize][k as usize - 1].mul(&gs, 1);
                    per_rest.entry(r).or_insert_with(|| Ser::zero(f)).add_scaled(&prod, &f.one());
                }
                for (r, s) in per_rest {
                    emit(r.to_vec(), &s)?;
                }
            }
        }

        // Σ' ω_{g1,1+|J|}(z, z_J) ω_{g2,1+|J'|}(σ(z), z_J')
        let mut cache: HashMap<(u32, u32, Slot), LocalExp> = HashMap::new();
        let mut get = |g: u32, n: u32, s: Slot| -> Result<LocalExp, CurveError> {
            if let Some(v) = cache.get(&(g, n, s)) {
                return Ok(v.clone());
            }
            let v = self.local(g, n, ai, s)?;
            cache.insert((g, n, s), v.clone());
            Ok(v)
        };
        for g1 in 0..=g {
            let g2 = g - g1;
            for mask in 0u32..(1 << rest) {
                let m1 = mask.count_ones();
                let (n1, n2) = (1 + m1, 1 + rest as u32 - m1);
                if (g1, n1) == (0, 1) || (g2, n2) == (0, 1) {
                    continue;
                }
                let l1 = get(g1, n1, Slot::Z)?;
                let l2 = get(g2, n2, Slot::Sigma)?;
                for (r1, s1) in l1.iter() {
                    for (r2, s2) in l2.iter() {
                        let fser = s1.mul(s2, 1);
                        if fser.is_zero() {
                            continue;
                        }
                        let (mut i1, mut i2) = (0, 0);
                        let merged: Vec<Key> = (0..rest)
                            .map(|pos| {
                                if mask >> pos & 1 == 1 {
                                    i1 += 1;
                                    r1[i1 - 1]
                                } else {
                                    i2 += 1;
                                    r2[i2 - 1]
                                }
                            })
                            .collect();
                        emit(merged, &fser)?;
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn point_data(params: &CurveParams, ai: usize, k_max: i64, order: i64) -> Result<PointData, CurveError> {
    let f = &params.field;
    let a = &params.ram[ai];
    let cap_s = 2 * order + 6;
    let s = params.deck_local(a, cap_s)?;
    let t = Ser::mono(f.one(), 1);
    let sp = s.derivative();
    let d = s.sub(&t).mul(&params.dx_local(a, cap_s)?, cap_s).scale(&f.from_rational(int(2)));
    let lam = sp.mul(&d.inv(cap_s)?, cap_s);
    let j_max = 2 * k_max + 1;
    let mut w = Vec::new();
    let mut sj = Ser::mono(f.one(), 0);
    for j in 0..=j_max {
        if j > 0 {
            sj = sj.mul(&s, cap_s);
        }
        let diff = Ser::mono(f.one(), j).sub(&sj);
        w.push(lam.mul(&diff, cap_s));
    }
    let mut pole_t = Vec::new();
    let mut pole_s = Vec::new();
    for (bi, b) in params.ram.iter().enumerate() {
        let mut rt = Vec::new();
        let mut rs = Vec::new();
        let shift = a.sub(b);
        let base_t = Ser::poly(f, 0, vec![shift.clone(), f.one()]);
        let base_s = Ser::mono(shift, 0).add(&s);
        let inv_t = if bi == ai { Ser::mono(f.one(), -1) } else { base_t.inv(order)? };
        let inv_s = base_s.inv(cap_s)?;
        let mut pt = Ser::mono(f.one(), 0);
        let mut ps = Ser::mono(f.one(), 0);
        for _ in 1..=k_max {
            pt = pt.mul(&inv_t, order);
            ps = ps.mul(&inv_s, cap_s);
            rt.push(pt.clone());
            rs.push(ps.truncate(order));
        }
        pole_t.push(rt);
        pole_s.push(rs);
    }
    let mut s_pow = vec![Ser::mono(f.one(), 0)];
    for m in 1..=(k_max + 1) {
        let next = s_pow[m as usize - 1].mul(&s, order);
        s_pow.push(next);
    }
    let ts = t.sub(&s);
    let diag = ts.mul(&ts, cap_s).inv(order)?;
    Ok(PointData {
        w,
        pole_t,
        pole_s,
        s_pow,
        diag,
    })
}

impl Correlator {
    /// Tuples breaking `c[(ζ^{-1}a_i, k_i)] = ∏ ζ^{1-k_i} c[(a_i, k_i)]`,
    /// where `ram[i] = ζ^{i+1}·const`.
    pub fn covariance_defects(&self, ram: &[NFElem]) -> Vec<Vec<Key>> {
        let n = ram.len();
        if n < 2 {
            return Vec::new();
        }
        let zeta = ram[1].mul(&ram[0].inv().expect("nonzero ramification point"));
        let field = zeta.field().clone();
        let mut keys: Vec<&Vec<Key>> = self.entries.keys().collect();
        // Zero entries must map to zero entries as well.
        let images: Vec<Vec<Key>> = keys
            .iter()
            .map(|k| k.iter().map(|&(a, p)| (((a as usize + n - 1) % n) as u8, p)).collect())
            .collect();
        let mut bad = Vec::new();
        for (k, img) in keys.drain(..).zip(images) {
            let e: i64 = k.iter().map(|&(_, p)| 1 - p as i64).sum();
            let want = self.entries[k].mul(&zeta.pow(e).expect("nonzero"));
            let got = self.entries.get(&img).cloned().unwrap_or_else(|| field.zero());
            if got != want {
                bad.push(k.clone());
            }
        }
        bad
    }
}

/// Compares `ω_{g,n}` computed on [`super::curve`]`(N)` with the engine on
/// the rescaled curve, mapped through `z = w/ρ`.
pub fn tower_agreement(n: u32, g: u32, nn: u32) -> Result<bool, CurveError> {
    let data = super::curve::curve(n)?;
    let cfg = TrConfig { cache_dir: None, ..TrConfig::new(g, nn) };
    let tower = TrEngine::with_params(data.params.clone(), cfg.clone())?;
    let norm = TrEngine::new(n, cfg)?;
    let cz = tower.omega(g, nn)?;
    let cw = norm.omega(g, nn)?;
    let a0 = data.tower.rho.inv().expect("nonzero");
    if cz.entries.len() != cw.entries.len() {
        return Ok(false);
    }
    for (k, v) in &cw.entries {
        let e: i64 = k.iter().map(|&(_, p)| p as i64 - 1).sum();
        let mapped = v.embed(&data.tower.zeta).mul(&a0.pow(e).expect("nonzero"));
        if cz.entries.get(k) != Some(&mapped) {
            return Ok(false);
        }
    }
    Ok(true)
}
