//! Roots and the multiplicative normal form of K^x.

use serde::Serialize;

use super::LaurentSeries;
use crate::error::{Error, Result};
use crate::fp::FpElement;

/// `m`-th root of `f` for `p ∤ m`, by Newton iteration on the unit part.
/// `None` when `m ∤ v(f)` or the leading coefficient is not an `m`-th power.
pub fn nth_root(f: &LaurentSeries, m: u64) -> Result<Option<LaurentSeries>> {
    let p = f.prime();
    if m == 0 || m % p.as_u64() == 0 {
        return Err(Error::BadModulus(m));
    }
    let Some(v) = f.valuation() else {
        return Ok(Some(f.clone()));
    };
    if v.rem_euclid(m as i64) != 0 {
        return Ok(None);
    }
    let c = f.coeff(v);
    let Some(r) = c.root(m) else {
        return Ok(None);
    };
    let rel = f.precision().saturating_sub(v);
    if f.terms().count() == 1 {
        let e = v / m as i64;
        return Ok(Some(LaurentSeries::monomial(p, r.residue() as i64, e, rel + e)));
    }
    let w = f.shift(-v).scale(c.inv()?);
    let m_fp = FpElement::new(p, m as i64);
    let mut g = LaurentSeries::one(p, rel);
    let mut known = 1;
    while known < rel {
        let gm1 = g.pow(m as i64 - 1)?;
        let err = gm1.mul(&g).sub(&w);
        g = g.sub(&err.mul(&gm1.scale(m_fp).inv()?)).truncate(rel);
        known *= 2;
    }
    debug_assert_eq!(g.pow(m as i64)?.truncate(rel), w.truncate(rel));
    Ok(Some(g.scale(r).shift(v / m as i64)))
}

/// `f = c T^d prod (1 - c_jk T^j)^(p^k)`, known to `precision`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitDecomposition {
    pub c: FpElement,
    pub d: i64,
    /// `(j, k, c_jk)` with `p ∤ j`, `j > 0`, `c_jk != 0`, in increasing `j p^k`.
    pub factors: Vec<(i64, u32, FpElement)>,
    pub precision: i64,
}

impl UnitDecomposition {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> LaurentSeries {
        let p = self.c.prime();
        let rel = self.precision - self.d;
        let mut acc = LaurentSeries::monomial(p, self.c.residue() as i64, 0, rel);
        for &(j, k, c) in &self.factors {
            let base = LaurentSeries::from_terms(p, [(0, 1), (j, -(c.residue() as i64))], rel);
            acc = acc.mul(&base.frobenius_iter(k).truncate(rel));
        }
        acc.shift(self.d)
    }
}

pub fn unit_decompose(f: &LaurentSeries) -> Result<UnitDecomposition> {
    let p = f.prime();
    let pm = p.as_u64();
    let d = f.valuation().ok_or(Error::ZeroInput)?;
    let c = f.coeff(d);
    let rel = (f.precision() - d).max(0) as usize;
    let cinv = c.inv()?.residue() as u64;
    let mut u = vec![0u64; rel];
    for (e, a) in f.terms() {
        u[(e - d) as usize] = a as u64 * cinv % pm;
    }
    let mut factors = Vec::new();
    let mut pos = 1;
    while pos < rel {
        if u[pos] == 0 {
            pos += 1;
            continue;
        }
        // u = (1 + a T^m + ...) ; divide by (1 - b T^m) with b = -a
        let b = pm - u[pos];
        let m = pos;
        for e in m..rel {
            u[e] = (u[e] + b * u[e - m]) % pm;
        }
        debug_assert_eq!(u[m], 0);
        let k = p.valuation(m as u128).unwrap();
        let j = m as i64 / p.pow(k) as i64;
        factors.push((j, k, FpElement::new(p, b as i64)));
    }
    Ok(UnitDecomposition { c, d, factors, precision: f.precision() })
}
