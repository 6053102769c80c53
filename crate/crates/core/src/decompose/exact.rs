//! Exact factorization of a Witt unit into Teichmuller and `u_{i,n}` parts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{FpElement, Prime};
use crate::series::{unit_decompose, LaurentSeries};
use crate::witt::{WittVector, EXACT};

/// `x = [c T^d] prod [1 - c_jk T^j]^(p^k) prod u_{i1,i2}^(k)` where
/// `u_{i,m} = 1 + V^(m-1)[T^i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactFactorization {
    pub p: Prime,
    pub len: usize,
    pub c: FpElement,
    pub d: i64,
    pub teich1units: Vec<(i64, u32, FpElement)>,
    /// `(i1, i2, k)` with `i2 >= 2` and `0 < k < p`.
    pub deep_units: Vec<(i64, usize, u32)>,
    /// Precision of the Teichmuller part and of each corrected level.
    pub precisions: Vec<i64>,
}

impl ExactFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Result<WittVector> {
        let p = self.p;
        let level0 = crate::series::UnitDecomposition {
            c: self.c,
            d: self.d,
            factors: self.teich1units.clone(),
            precision: self.precisions[0],
        };
        let mut x = WittVector::teichmuller(&level0.expand(), self.len);
        for &(i, m, k) in &self.deep_units {
            let t = LaurentSeries::monomial(p, 1, i, EXACT);
            x = x.mul(&WittVector::one_plus_v(m - 1, &t, self.len).pow(k as i64)?)?;
        }
        Ok(x)
    }
}

/// Level 0 comes from [`unit_decompose`]; at level `n` the residual
/// `x / ([x_0] prod ...)` is `1 + V^n[f] + ...` and the coefficients of `f`
/// are the exponents of the `u_{i,n+1}`.
pub fn decompose_exact(x: &WittVector, precision: i64) -> Result<ExactFactorization> {
    if !x.is_unit() {
        return Err(Error::NotAUnit);
    }
    let x = x.truncate_precision(precision);
    let p = x.prime();
    let len = x.len();
    let x0 = x.component(0);
    let level0 = unit_decompose(x0)?;
    let mut rest = x.mul_teichmuller(&x0.inv()?);
    let mut deep_units = Vec::new();
    let mut precisions = vec![x0.precision()];
    for n in 1..len {
        let f = rest.component(n).clone();
        if f.precision() <= 0 {
            return Err(Error::PrecisionExhausted(format!(
                "level {n} of the residual is only known below T^{}",
                f.precision()
            )));
        }
        precisions.push(f.precision());
        for (i, a) in f.terms() {
            let u = WittVector::one_plus_v(n, &LaurentSeries::monomial(p, 1, i, EXACT), len);
            rest = rest.mul(&u.pow(-(a as i64))?)?;
            deep_units.push((i, n + 1, a));
        }
        debug_assert!(rest.component(n).is_zero());
    }
    Ok(ExactFactorization {
        p,
        len,
        c: level0.c,
        d: level0.d,
        teich1units: level0.factors,
        deep_units,
        precisions,
    })
}
