//! Solving `q(y) = a` inside W(K)^x.

use crate::error::{Error, Result};
use crate::series::{nth_root, solve_artin_schreier};
use crate::witt::WittVector;

/// `q(1 + V^n[t])`.
pub(crate) fn q_level(n: usize, t: &crate::LaurentSeries, len: usize) -> Result<WittVector> {
    WittVector::one_plus_v(n, t, len).q_map()
}

/// Finds `y` with `F(y) = a y`, components known to `precision`, or `None`
/// when some level is obstructed.
///
/// Level 0 is `y_0^(p-1) = a_0`. After dividing `a` by `q([y_0]) = [a_0]`
/// the remaining unit is `1 + V(..)`, and each level `n` asks for
/// `s^p - s = b_n` where `b_n` is the n-th component of what is left.
pub fn q_solve(a: &WittVector, precision: i64) -> Result<Option<WittVector>> {
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    let a = &a.truncate_precision(precision);
    let p = a.prime();
    let len = a.len();
    let a0 = a.component(0);
    let Some(y0) = nth_root(a0, p.as_u64() - 1)? else {
        return Ok(None);
    };
    let mut rest = a.mul_teichmuller(&a0.inv()?);
    let mut z = WittVector::one(p, len, crate::witt::EXACT);
    for n in 1..len {
        debug_assert!(rest.components()[1..n].iter().all(|c| c.is_zero()));
        let f = rest.component(n).truncate(precision);
        if f.is_zero() && f.precision() > 0 {
            continue;
        }
        let Some(s) = solve_artin_schreier(&f, precision)? else {
            return Ok(None);
        };
        z = z.mul(&WittVector::one_plus_v(n, &s, len))?;
        rest = rest.div(&q_level(n, &s, len)?)?;
    }
    Ok(Some(z.mul_teichmuller(&y0)))
}
