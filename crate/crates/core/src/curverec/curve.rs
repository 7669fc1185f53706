//! The curve `x = c·z^{N-1} + 1/z`, `y = -z`, its ramification data and
//! deck involutions.

use std::sync::Arc;

use serde::Serialize;

use crate::exactmath::{int, NFElem, NumberField, RadicalTower};
use crate::frobdata::{canonical_frame, ExactPolar};

use super::local::Ser;
use super::CurveError;

/// `x = c·z^{N-1} + 1/z` over a field containing its ramification points.
#[derive(Clone, Debug)]
pub struct CurveParams {
    pub n: u32,
    pub field: Arc<NumberField>,
    pub c: NFElem,
    /// Roots of `c(N-1)z^N = 1`, in the order `i = 1..=N`.
    pub ram: Vec<NFElem>,
}

impl CurveParams {
    pub fn x_at(&self, z: &NFElem) -> NFElem {
        self.c
            .mul(&z.pow(self.n as i64 - 1).unwrap())
            .add(&z.inv().expect("z nonzero"))
    }

    pub fn dx_at(&self, z: &NFElem) -> NFElem {
        let n = self.n as i64;
        self.c
            .scale(&int(n - 1))
            .mul(&z.pow(n - 2).unwrap())
            .sub(&z.pow(-2).expect("z nonzero"))
    }

    pub fn d2x_at(&self, z: &NFElem) -> NFElem {
        let n = self.n as i64;
        self.c
            .scale(&int((n - 1) * (n - 2)))
            .mul(&z.pow(n - 3).unwrap())
            .add(&z.pow(-3).expect("z nonzero").scale(&int(2)))
    }

    /// `(a + t)^e` up to `t^cap`.
    pub(crate) fn shifted_pow(&self, a: &NFElem, e: i64, cap: i64) -> Result<Ser, CurveError> {
        let base = Ser::poly(&self.field, 0, vec![a.clone(), self.field.one()]);
        if e >= 0 {
            Ok(base.pow(e as u32, cap))
        } else {
            Ok(base.inv(cap)?.pow((-e) as u32, cap))
        }
    }

    /// `x'(a + t)` up to `t^cap`.
    pub(crate) fn dx_local(&self, a: &NFElem, cap: i64) -> Result<Ser, CurveError> {
        let n = self.n as i64;
        let p = self.shifted_pow(a, n - 2, cap)?.scale(&self.c.scale(&int(n - 1)));
        Ok(p.sub(&self.shifted_pow(a, -2, cap)?))
    }

    /// `x(a + t) - x(a)` up to `t^cap`.
    pub(crate) fn x_local(&self, a: &NFElem, cap: i64) -> Result<Ser, CurveError> {
        let n = self.n as i64;
        let p = self.shifted_pow(a, n - 1, cap)?.scale(&self.c);
        let full = p.add(&self.shifted_pow(a, -1, cap)?);
        Ok(full.sub(&Ser::mono(self.x_at(a), 0)))
    }

    /// Deck involution at ramification point `ram[i]`.
    pub fn deck(&self, i: usize, order: u32) -> Result<DeckSeries, CurveError> {
        let a = self.ram.get(i).ok_or(CurveError::NoSuchPoint(i))?.clone();
        let s = self.deck_local(&a, order as i64 - 1)?;
        let coeffs = (1..order as i64).map(|m| s.coeff(m)).collect::<Result<Vec<_>, _>>()?;
        Ok(DeckSeries { a, coeffs, order })
    }

    /// `s(t)` with `σ(a + t) = a + s(t)`, known up to `t^cap`.
    pub(crate) fn deck_local(&self, a: &NFElem, cap: i64) -> Result<Ser, CurveError> {
        if !self.dx_at(a).is_zero() {
            return Err(CurveError::NotRamification);
        }
        if self.d2x_at(a).is_zero() {
            return Err(CurveError::Deck("ramification is not simple".into()));
        }
        // Off the diagonal, x(z1) = x(z2) reduces to c·Σ_{i=0}^{N-2} z1^{i+1} z2^{N-1-i} = 1.
        let n = self.n as i64;
        let f = &self.field;
        let z1 = Ser::poly(f, 0, vec![a.clone(), f.one()]);
        let z1p: Vec<Ser> = (0..=n).map(|k| z1.pow(k as u32, cap)).collect();
        let one = Ser::mono(f.one(), 0);
        let mut s = Ser::mono(f.one().neg(), 1).truncate(cap);
        for _ in 0..64 {
            let z2 = Ser::mono(a.clone(), 0).add(&s);
            let z2p: Vec<Ser> = (0..n).map(|k| z2.pow(k as u32, cap)).collect();
            let mut p = one.scale(&f.one().neg()).truncate(cap);
            let mut dp = Ser::zero(f).truncate(cap);
            for i in 0..=n - 2 {
                let e2 = (n - 1 - i) as usize;
                p.add_scaled(&z1p[(i + 1) as usize].mul(&z2p[e2], cap), &self.c);
                dp.add_scaled(&z1p[(i + 1) as usize].mul(&z2p[e2 - 1], cap), &self.c.scale(&int(e2 as i64)));
            }
            if p.is_zero() {
                return Ok(s);
            }
            if p.val() < 1 {
                return Err(CurveError::Deck("inconsistent constant term".into()));
            }
            s = s.sub(&p.mul(&dp.inv(cap)?, cap));
        }
        Err(CurveError::Deck("deck iteration did not converge".into()))
    }
}

/// `σ_a(z) = a + Σ_{m=1}^{order-1} coeffs[m-1] (z-a)^m`.
#[derive(Clone, Debug, Serialize)]
pub struct DeckSeries {
    pub a: NFElem,
    pub coeffs: Vec<NFElem>,
    pub order: u32,
}

impl DeckSeries {
    pub(crate) fn local(&self) -> Ser {
        let f = self.a.field();
        let mut c = vec![f.zero()];
        c.extend(self.coeffs.iter().cloned());
        Ser::poly(f, 0, c).truncate(self.order as i64 - 1)
    }

    /// Lowest exponent below `order` where `σ(σ(z)) - z` is nonzero.
    pub fn involution_defect(&self) -> Option<i64> {
        let s = self.local();
        let cap = self.order as i64 - 1;
        let f = self.a.field();
        let mut acc = Ser::zero(f).truncate(cap);
        let mut pw = Ser::mono(f.one(), 0);
        for c in &self.coeffs {
            pw = pw.mul(&s, cap);
            acc.add_scaled(&pw, c);
        }
        let diff = acc.sub(&Ser::mono(f.one(), 1));
        (!diff.is_zero()).then(|| diff.val())
    }

    /// Lowest exponent below `order` where `x(σ(z)) - x(z)` is nonzero.
    pub fn x_invariance_defect(&self, curve: &CurveParams) -> Result<Option<i64>, CurveError> {
        let cap = self.order as i64 - 1;
        let xl = curve.x_local(&self.a, cap)?;
        let s = self.local();
        let f = &curve.field;
        let mut comp = Ser::zero(f).truncate(cap);
        let mut pw = Ser::mono(f.one(), 0);
        for e in 1..=cap {
            pw = pw.mul(&s, cap);
            comp.add_scaled(&pw, &xl.coeff(e)?);
        }
        let diff = comp.sub(&xl);
        Ok((!diff.is_zero()).then(|| diff.val()))
    }
}

/// The curve with `c = 1` over the splitting field of `(N-1)z^N = 1`.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub params: CurveParams,
    pub tower: RadicalTower,
}

impl CurveData {
    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.params.field
    }

    pub fn ram(&self) -> &[NFElem] {
        &self.params.ram
    }

    /// `ω_{0,1}/dz = -(N-1)z^{N-1} + z^{-1}` at `z`.
    pub fn omega01_at(&self, z: &NFElem) -> NFElem {
        let n = self.params.n as i64;
        z.pow(n - 1)
            .unwrap()
            .scale(&int(1 - n))
            .add(&z.inv().expect("z nonzero"))
    }

    /// The value of an [`ExactPolar`] in this field, when it lies there.
    pub fn polar_to_field(&self, p: &ExactPolar) -> Option<NFElem> {
        let n = self.params.n as i64;
        if p.is_zero() {
            return Some(self.field().zero());
        }
        let r = p.pow_nm1() * int(n);
        let z = p.angle() * int(n);
        let nn = self.field().from_rational(int(n));
        if !r.is_integer() || !z.is_integer() {
            return None;
        }
        if !p.pow_n().is_integer() {
            return None;
        }
        let r: i64 = r.to_integer().try_into().ok()?;
        let z: i64 = z.to_integer().try_into().ok()?;
        let pn: i64 = p.pow_n().to_integer().try_into().ok()?;
        let v = self
            .tower
            .rho
            .pow(r)?
            .mul(&self.tower.zeta.pow(z)?)
            .mul(&nn.pow(pn)?)
            .scale(p.scalar());
        Some(v)
    }

    /// `x(a_i) = u^i` for every `i`.
    pub fn critical_values_match(&self) -> Result<bool, CurveError> {
        let frame = canonical_frame(self.params.n)?;
        for (i, a) in self.params.ram.iter().enumerate() {
            let want = self
                .polar_to_field(&frame.u[i])
                .ok_or_else(|| CurveError::Frame("u^i outside the field".into()))?;
            if self.params.x_at(a) != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x''(a_j) = (Δ_j^{1/2})²` for every `j`, with the frame's branch
    /// bookkeeping alongside.
    pub fn delta_normalization(&self) -> Result<Vec<(bool, i8)>, CurveError> {
        let frame = canonical_frame(self.params.n)?;
        let mut out = Vec::new();
        for (i, a) in self.params.ram.iter().enumerate() {
            let sq = frame.delta_half[i].mul(&frame.delta_half[i]);
            let want = self
                .polar_to_field(&sq)
                .ok_or_else(|| CurveError::Frame("Δ_j outside the field".into()))?;
            let branch = frame.delta_branch(i + 1)?;
            out.push((self.params.d2x_at(a) == want && branch.passes(), branch.sign_vs_principal));
        }
        Ok(out)
    }
}

/// The curve for a given `N` over the cyclotomic field, then the radical.
pub fn curve(n: u32) -> Result<CurveData, CurveError> {
    if n < 2 {
        return Err(CurveError::InvalidN(n));
    }
    let tower = RadicalTower::new(n, n as u64 - 1)?;
    let field = tower.field.clone();
    let rho_inv = tower.rho.inv().expect("nonzero");
    let ram = (1..=n as i64)
        .map(|i| tower.zeta.pow(i).unwrap().mul(&rho_inv))
        .collect();
    let params = CurveParams {
        n,
        c: field.one(),
        field,
        ram,
    };
    for a in &params.ram {
        if !params.dx_at(a).is_zero() || params.d2x_at(a).is_zero() {
            return Err(CurveError::NotRamification);
        }
    }
    Ok(CurveData { params, tower })
}

/// The rescaled curve `x = z^{N-1}/(N-1) + 1/z` over `Q(ζ_N)`, whose
/// ramification points are the `N`-th roots of unity.
pub fn normalized_params(n: u32) -> Result<CurveParams, CurveError> {
    if n < 2 {
        return Err(CurveError::InvalidN(n));
    }
    let field = NumberField::cyclotomic(n);
    let zeta = field.generator();
    let ram = (1..=n as i64).map(|i| zeta.pow(i).unwrap()).collect();
    Ok(CurveParams {
        n,
        c: field.from_rational(crate::exactmath::rat(1, n as i64 - 1)),
        field,
        ram,
    })
}
