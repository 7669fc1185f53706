//! Dense truncated Laurent series over a number field with explicit
//! accuracy: coefficients are known exactly for exponents `lo..=hi`, and
//! beyond `hi` only when the series is exact.

use std::sync::Arc;

use crate::exactmath::{NFElem, NumberField};

use super::CurveError;

#[derive(Clone, Debug)]
pub(crate) struct Ser {
    field: Arc<NumberField>,
    lo: i64,
    c: Vec<NFElem>,
    /// Last exponent known; `None` when all further coefficients vanish.
    acc: Option<i64>,
}

fn min_acc(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Ser {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self {
            field: field.clone(),
            lo: 0,
            c: Vec::new(),
            acc: None,
        }
    }

    pub fn mono(coef: NFElem, e: i64) -> Self {
        Self {
            field: coef.field().clone(),
            lo: e,
            c: vec![coef],
            acc: None,
        }
        .normalized()
    }

    /// Exact polynomial `Σ c_i t^(lo+i)`.
    pub fn poly(field: &Arc<NumberField>, lo: i64, c: Vec<NFElem>) -> Self {
        Self {
            field: field.clone(),
            lo,
            c,
            acc: None,
        }
        .normalized()
    }


    #[cfg(test)]
    pub fn acc(&self) -> Option<i64> {
        self.acc
    }

    fn normalized(mut self) -> Self {
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.acc.is_none() {
            while self.c.last().is_some_and(NFElem::is_zero) {
                self.c.pop();
            }
        }
        if self.c.is_empty() {
            self.lo = self.acc.map_or(0, |a| a + 1);
        }
        self
    }

    /// Lowest exponent with a nonzero coefficient among the known ones.
    pub fn val(&self) -> i64 {
        self.lo
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Result<NFElem, CurveError> {
        if let Some(a) = self.acc {
            if e > a {
                return Err(CurveError::Precision(format!("coefficient {e} requested beyond accuracy {a}")));
            }
        }
        if e < self.lo || e >= self.lo + self.c.len() as i64 {
            Ok(self.field.zero())
        } else {
            Ok(self.c[(e - self.lo) as usize].clone())
        }
    }

    /// Coefficient known to be available.
    fn at(&self, e: i64) -> Option<&NFElem> {
        if e < self.lo {
            return None;
        }
        self.c.get((e - self.lo) as usize)
    }

    pub fn truncate(&self, cap: i64) -> Self {
        if self.acc.is_some_and(|a| a <= cap) {
            return self.clone();
        }
        let keep = (cap - self.lo + 1).clamp(0, self.c.len() as i64) as usize;
        Self {
            field: self.field.clone(),
            lo: self.lo,
            c: self.c[..keep].to_vec(),
            acc: Some(cap),
        }
        .normalized()
    }

    /// Product, keeping exponents up to `cap`.
    pub fn mul(&self, other: &Self, cap: i64) -> Self {
        if self.is_zero() && self.acc.is_none() || other.is_zero() && other.acc.is_none() {
            return Self::zero(&self.field);
        }
        let natural = min_acc(self.acc.map(|a| a + other.lo), other.acc.map(|a| a + self.lo));
        let top = natural.map_or(cap, |n| n.min(cap));
        let lo = self.lo + other.lo;
        let len = (top - lo + 1).max(0) as usize;
        let mut c = vec![self.field.zero(); len];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.c.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                c[k].add_mul(x, y);
            }
        }
        let exact_top = self.lo + self.c.len() as i64 - 1 + other.lo + other.c.len() as i64 - 1;
        let acc = if natural.is_none() && exact_top <= cap { None } else { Some(top) };
        Self {
            field: self.field.clone(),
            lo,
            c,
            acc,
        }
        .normalized()
    }

    pub fn scale(&self, k: &NFElem) -> Self {
        Self {
            field: self.field.clone(),
            lo: self.lo,
            c: self.c.iter().map(|x| x.mul(k)).collect(),
            acc: self.acc,
        }
        .normalized()
    }

    /// `self += k · other`.
    pub fn add_scaled(&mut self, other: &Self, k: &NFElem) {
        let acc = min_acc(self.acc, other.acc);
        if other.is_zero() {
            if acc != self.acc {
                *self = self.truncate(acc.unwrap());
            }
            return;
        }
        let lo = if self.is_zero() { other.lo } else { self.lo.min(other.lo) };
        let hi_self = self.lo + self.c.len() as i64 - 1;
        let hi_other = other.lo + other.c.len() as i64 - 1;
        let mut hi = if self.is_zero() { hi_other } else { hi_self.max(hi_other) };
        if let Some(a) = acc {
            hi = hi.min(a);
        }
        let len = (hi - lo + 1).max(0) as usize;
        let mut c = vec![self.field.zero(); len];
        for (i, x) in self.c.iter().enumerate() {
            let p = self.lo + i as i64 - lo;
            if (0..len as i64).contains(&p) {
                c[p as usize] = x.clone();
            }
        }
        for (i, x) in other.c.iter().enumerate() {
            let p = other.lo + i as i64 - lo;
            if (0..len as i64).contains(&p) {
                c[p as usize].add_mul(x, k);
            }
        }
        *self = Self {
            field: self.field.clone(),
            lo,
            c,
            acc,
        }
        .normalized();
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &self.field.one());
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &self.field.one().neg());
        s
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale(&crate::exactmath::int(self.lo + i as i64)))
            .collect();
        Self {
            field: self.field.clone(),
            lo: self.lo - 1,
            c,
            acc: self.acc.map(|a| a - 1),
        }
        .normalized()
    }

    /// Inverse up to exponent `cap`.
    pub fn inv(&self, cap: i64) -> Result<Self, CurveError> {
        let v = self.lo;
        let lead = self
            .c
            .first()
            .ok_or_else(|| CurveError::Precision("inverse of a series with no known nonzero term".into()))?;
        let top = match self.acc {
            Some(a) => (a - 2 * v).min(cap),
            None => cap,
        };
        let lead_inv = lead.inv().expect("nonzero in a field");
        let len = (top + v + 1).max(0) as usize;
        let mut out: Vec<NFElem> = Vec::with_capacity(len);
        for m in 0..len {
            let mut s = if m == 0 { self.field.one() } else { self.field.zero() };
            for i in 1..=m.min(self.c.len().saturating_sub(1)) {
                s.add_mul(&self.c[i], &out[m - i].neg());
            }
            out.push(s.mul(&lead_inv));
        }
        Ok(Self {
            field: self.field.clone(),
            lo: -v,
            c: out,
            acc: Some(top),
        }
        .normalized())
    }

    pub fn pow(&self, k: u32, cap: i64) -> Self {
        let mut r = Self::mono(self.field.one(), 0);
        for _ in 0..k {
            r = r.mul(self, cap);
        }
        r
    }

    /// `Σ_e self[e] · other[-1-e]`, the residue of the product.
    pub fn residue_pairing(&self, other: &Self) -> Result<NFElem, CurveError> {
        let mut s = self.field.zero();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let e = self.lo + i as i64;
            let f = -1 - e;
            if let Some(a) = other.acc {
                if f > a {
                    return Err(CurveError::Precision(format!("residue needs exponent {f} beyond accuracy {a}")));
                }
            }
            if let Some(y) = other.at(f) {
                s.add_mul(x, y);
            }
        }
        if let Some(a) = self.acc {
            let needed = -1 - other.lo;
            if !other.is_zero() && needed > a {
                return Err(CurveError::Precision(format!("residue needs exponent {needed} beyond accuracy {a}")));
            }
        }
        Ok(s)
    }
}
