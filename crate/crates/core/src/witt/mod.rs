//! Length-l p-typical Witt vectors over F_p((T)).
//!
//! Ring operations run through the lifted ghost circuit in [`circuit`];
//! the explicit universal polynomials of [`polys`] exist for small
//! (p, l) and serve as an independent cross-check.

mod circuit;
pub mod polys;

use std::fmt;

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::series::kernel::ModSeries;
use circuit::Lifted;
use crate::series::LaurentSeries;

pub use polys::{gen_universal_polys, Monomial, Polynomial, UniversalPolys, LENGTH_CAP, TERM_BUDGET};

/// Precision used for components that are exactly zero by construction.
pub(crate) const EXACT: i64 = i64::MAX / 4;

pub(crate) fn is_exact(precision: i64) -> bool {
    precision >= EXACT / 2
}

#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    p: Prime,
    comps: Vec<LaurentSeries>,
}

impl WittVector {
    pub fn new(comps: Vec<LaurentSeries>) -> Result<Self> {
        let first = comps.first().ok_or_else(|| Error::BadIndex("Witt vector of length 0".into()))?;
        let p = first.prime();
        if let Some(bad) = comps.iter().find(|c| c.prime() != p) {
            return Err(Error::PrimeMismatch(p.get(), bad.prime().get()));
        }
        Ok(WittVector { p, comps })
    }

    pub fn one(p: Prime, len: usize, precision: i64) -> Self {
        Self::teichmuller(&LaurentSeries::one(p, precision), len)
    }

    pub fn zero(p: Prime, len: usize, precision: i64) -> Self {
        WittVector { p, comps: vec![LaurentSeries::zero(p, precision); len.max(1)] }
    }

    /// `[f] = (f, 0, ..., 0)`; the zero tail is exact.
    pub fn teichmuller(f: &LaurentSeries, len: usize) -> Self {
        let p = f.prime();
        let mut comps = vec![f.clone()];
        comps.resize(len.max(1), LaurentSeries::zero(p, EXACT));
        WittVector { p, comps }
    }

    /// `1 + V^n[t]` at length `len`; the other components are exact.
    pub fn one_plus_v(n: usize, t: &LaurentSeries, len: usize) -> Self {
        let p = t.prime();
        let mut comps = vec![LaurentSeries::zero(p, EXACT); len];
        comps[0] = LaurentSeries::one(p, EXACT);
        if n < len {
            comps[n] = t.clone();
        }
        WittVector { p, comps }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn component(&self, i: usize) -> &LaurentSeries {
        &self.comps[i]
    }

    pub fn components(&self) -> &[LaurentSeries] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<LaurentSeries> {
        self.comps
    }

    pub fn is_unit(&self) -> bool {
        !self.comps[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.comps[0].is_one() && self.comps[1..].iter().all(|c| c.is_zero())
    }

    /// Truncates every component to absolute precision `n`.
    pub fn truncate_precision(&self, n: i64) -> Self {
        WittVector { p: self.p, comps: self.comps.iter().map(|c| c.truncate(n)).collect() }
    }

    /// Precision of each component.
    pub fn precisions(&self) -> Vec<i64> {
        self.comps.iter().map(|c| c.precision()).collect()
    }

    /// `pi_m`: keeps the first `m` components.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.len() {
            return Err(Error::BadIndex(format!("cannot truncate length {} to {m}", self.len())));
        }
        Ok(WittVector { p: self.p, comps: self.comps[..m].to_vec() })
    }

    /// `V(x) = (0, x_0, ..., x_{l-2})` at fixed length.
    pub fn verschiebung(&self) -> Self {
        let mut comps = vec![LaurentSeries::zero(self.p, EXACT)];
        comps.extend_from_slice(&self.comps[..self.len() - 1]);
        WittVector { p: self.p, comps }
    }

    /// `F(x) = (x_0^p, x_1^p, ...)`.
    pub fn frobenius(&self) -> Self {
        WittVector { p: self.p, comps: self.comps.iter().map(|c| c.frobenius()).collect() }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p.get(), o.p.get()));
        }
        if self.len() != o.len() {
            return Err(Error::LengthMismatch(self.len(), o.len()));
        }
        Ok(())
    }

    fn inners(&self) -> Vec<&ModSeries> {
        self.comps.iter().map(|c| &c.inner).collect()
    }

    fn from_solved(p: Prime, comps: Vec<ModSeries>) -> Self {
        WittVector { p, comps: comps.into_iter().map(|c| LaurentSeries::from_inner(p, c)).collect() }
    }

    fn combine(&self, o: &Self, op: impl Fn(&Lifted, &Lifted, u64) -> Lifted) -> Result<Self> {
        self.check(o)?;
        let p = self.p.as_u64();
        let cx = circuit::chains(&self.inners(), p);
        let cy = circuit::chains(&o.inners(), p);
        let comps = circuit::solve_ghost(p, self.len(), |n| {
            op(&circuit::ghost_mod(&cx, p, n), &circuit::ghost_mod(&cy, p, n), p)
        })?;
        Ok(Self::from_solved(self.p, comps))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.combine(o, |a, b, _| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.combine(o, |a, b, _| a.sub(b))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if o.is_teichmuller() {
            self.check(o)?;
            return Ok(self.mul_teichmuller(&o.comps[0]));
        }
        if self.is_teichmuller() {
            self.check(o)?;
            return Ok(o.mul_teichmuller(&self.comps[0]));
        }
        self.combine(o, Lifted::mul)
    }

    pub fn neg(&self) -> Self {
        if self.p.get() != 2 {
            return WittVector { p: self.p, comps: self.comps.iter().map(|c| c.neg()).collect() };
        }
        let p = self.p.as_u64();
        let cx = circuit::chains(&self.inners(), p);
        let comps = circuit::solve_ghost(p, self.len(), |n| circuit::ghost_mod(&cx, p, n).neg())
            .expect("negation is integral");
        Self::from_solved(self.p, comps)
    }

    fn is_teichmuller(&self) -> bool {
        self.comps[1..].iter().all(|c| c.is_zero() && is_exact(c.precision()))
    }

    /// `[a] x = (a x_0, a^p x_1, a^(p^2) x_2, ...)`.
    pub fn mul_teichmuller(&self, a: &LaurentSeries) -> Self {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&a.frobenius_iter(i as u32)))
            .collect();
        WittVector { p: self.p, comps }
    }

    /// Inverse of a unit, one component at a time: with `y_i` still zero,
    /// the i-th component of `x y` is `z_i` and the true `y_i` is
    /// `-z_i / x_0^(p^i)`.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let y0 = self.comps[0].inv()?;
        let mut y = Self::teichmuller(&y0, self.len());
        if self.is_teichmuller() {
            return Ok(y);
        }
        for i in 1..self.len() {
            let z = self.mul(&y)?;
            y.comps[i] = z.comps[i].mul(&y0.frobenius_iter(i as u32)).neg();
        }
        Ok(y)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// Integer power by square-and-multiply; negative exponents need a unit.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            self.inv().map_err(|_| Error::NegativePowerOfNonUnit)?
        } else {
            self.clone()
        };
        let mut k = k.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.p, self.len(), EXACT)))
    }

    /// `q(x) = F(x) / x`.
    pub fn q_map(&self) -> Result<Self> {
        self.frobenius().mul(&self.inv()?)
    }

    /// Parses `(f_0; f_1; ...)`, each component in the series grammar.
    pub fn parse(p: Prime, text: &str, precision: i64) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (f_0; ...; f_l-1), got {text:?}")))?;
        let comps = inner
            .split(';')
            .map(|c| LaurentSeries::parse(p, c, precision))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            if f.alternate() && !is_exact(c.precision()) {
                write!(f, "{c:#}")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:#} [p={}]", self.p)
    }
}

pub fn teichmuller(f: &LaurentSeries, len: usize) -> WittVector {
    WittVector::teichmuller(f, len)
}

pub fn verschiebung(x: &WittVector) -> WittVector {
    x.verschiebung()
}

pub fn frobenius_witt(x: &WittVector) -> WittVector {
    x.frobenius()
}

pub fn truncate(x: &WittVector, m: usize) -> Result<WittVector> {
    x.truncate(m)
}

pub fn witt_add(x: &WittVector, y: &WittVector) -> Result<WittVector> {
    x.add(y)
}

pub fn witt_mul(x: &WittVector, y: &WittVector) -> Result<WittVector> {
    x.mul(y)
}

pub fn witt_neg(x: &WittVector) -> WittVector {
    x.neg()
}

pub fn witt_inv(x: &WittVector) -> Result<WittVector> {
    x.inv()
}

pub fn witt_pow(x: &WittVector, k: i64) -> Result<WittVector> {
    x.pow(k)
}

pub fn q_map(x: &WittVector) -> Result<WittVector> {
    x.q_map()
}

#[cfg(test)]
mod tests;
