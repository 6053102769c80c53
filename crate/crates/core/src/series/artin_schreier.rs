//! The Artin-Schreier operator h -> h^p - h on F_p((T)).

use super::LaurentSeries;
use crate::error::{Error, Result};

/// `h^p - h`.
pub fn wp(h: &LaurentSeries) -> LaurentSeries {
    h.frobenius().sub(h)
}

/// Splits `f = wp(witness) + reduced` where every polar exponent of
/// `reduced` is prime to p. Terms `c T^(pj)` with `j < 0` are swept from
/// the deepest pole upwards into `c T^j` (valid since `c^p = c`); the
/// constant and positive parts pass through untouched.
///
/// The witness is a Laurent polynomial in `T^-1` and is exact; it is given
/// the precision of `f`.
pub fn artin_schreier_reduce(f: &LaurentSeries) -> (LaurentSeries, LaurentSeries) {
    let p = f.prime();
    let pi = p.get() as i64;
    let Some(v) = f.valuation() else {
        return (f.clone(), LaurentSeries::zero(p, f.precision()));
    };
    let top = f.precision().min(0);
    let mut polar: Vec<i64> = (v.min(0)..top).map(|e| f.coeff(e).residue() as i64).collect();
    let off = v.min(0);
    let mut witness = Vec::new();
    for e in off..top {
        let c = polar[(e - off) as usize];
        if c != 0 && e % pi == 0 {
            let j = e / pi;
            polar[(e - off) as usize] = 0;
            let slot = &mut polar[(j - off) as usize];
            *slot = (*slot + c) % pi;
            witness.push((j, c));
        }
    }
    let mut reduced: Vec<(i64, i64)> = (off..top).zip(polar).filter(|t| t.1 != 0).collect();
    reduced.extend(f.terms().filter(|t| t.0 >= top).map(|(e, c)| (e, c as i64)));
    (
        LaurentSeries::from_terms(p, reduced, f.precision()),
        LaurentSeries::from_terms(p, witness, f.precision()),
    )
}

/// Solves `y^p - y = f` in K, choosing the solution with zero constant
/// term. Returns `Ok(None)` when the reduced polar part or the constant
/// term survives. The result is known to `min(target, prec f)`.
pub fn solve_artin_schreier(f: &LaurentSeries, target: i64) -> Result<Option<LaurentSeries>> {
    let prec = f.precision().min(target);
    if f.precision() <= 0 {
        return Err(Error::PrecisionExhausted(format!(
            "Artin-Schreier equation only known below T^{}",
            f.precision()
        )));
    }
    let (reduced, witness) = artin_schreier_reduce(f);
    if !reduced.polar_part().is_zero() || !reduced.coeff(0).is_zero() {
        return Ok(None);
    }
    // positive part: y = -(h + h^p + h^(p^2) + ...)
    let h = reduced.truncate(prec);
    let mut acc = LaurentSeries::zero(f.prime(), prec);
    let mut term = h;
    while !term.is_zero() && term.valuation().unwrap() < prec {
        acc = acc.add(&term.truncate(prec));
        term = term.frobenius();
    }
    Ok(Some(witness.truncate(prec).sub(&acc)))
}
