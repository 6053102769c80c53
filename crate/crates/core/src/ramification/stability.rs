//! Detection of genus sequences that are exactly quadratic in p^n.

use serde::Serialize;

use super::genus::PlaceSpec;
use super::{exponent_at, int, ppow, ratio_str, Rational};
use crate::error::{Error, Result};
use crate::fp::Prime;

pub const DEFAULT_N_MIN: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stability {
    #[serde(serialize_with = "ratio_str::one")]
    pub a: Rational,
    #[serde(serialize_with = "ratio_str::one")]
    pub b: Rational,
    #[serde(serialize_with = "ratio_str::one")]
    pub c: Rational,
    /// Read off the arithmetic criterion; `None` without wild ramification.
    pub s: Option<u64>,
    pub m: Option<u32>,
    pub t: Option<u64>,
    /// Whether the arithmetic criterion is stable on the same window.
    pub criterion_agrees: bool,
}

/// Fits `g_n = a p^(2n) + b p^n + c` on `genus_seq[n_min..]` (index = level)
/// from its first three values and checks every later one.
pub fn stability_check(p: Prime, genus_seq: &[Rational], places: &[PlaceSpec], n_min: u32) -> Result<Option<Stability>> {
    let window: Vec<(u32, &Rational)> =
        genus_seq.iter().enumerate().skip(n_min as usize).map(|(n, g)| (n as u32, g)).collect();
    if window.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} values at n >= {n_min}, need 4",
            window.len()
        )));
    }
    let x = |n: u32| ppow(p, n as i64);
    let (x0, x1, x2) = (x(window[0].0), x(window[1].0), x(window[2].0));
    let (g0, g1, g2) = (window[0].1, window[1].1, window[2].1);
    let d01 = (g1 - g0) / (&x1 - &x0);
    let d12 = (g2 - g1) / (&x2 - &x1);
    let a = (&d12 - &d01) / (&x2 - &x0);
    let b = &d01 - &a * (&x0 + &x1);
    let c = g0 - &a * &x0 * &x0 - &b * &x0;
    for &(n, g) in &window[3..] {
        let xn = x(n);
        if &a * &xn * &xn + &b * &xn + &c != *g {
            return Ok(None);
        }
    }
    let maxima: Vec<Option<Rational>> =
        window.iter().filter(|w| w.0 >= 2).map(|w| criterion_max(p, places, w.0)).collect();
    let criterion_agrees = maxima.windows(2).all(|w| w[0] == w[1]);
    let (s, m, t) = match maxima.first().cloned().flatten() {
        Some(mx) if criterion_agrees => {
            let lhs = mx * int(p.get() as i128 - 1);
            let m = p.valuation(lhs.denom().try_into().unwrap_or(0)).unwrap_or(0);
            let s: u64 = lhs.numer().try_into().unwrap_or(0);
            (Some(s), Some(m), Some(0))
        }
        _ => (None, None, None),
    };
    let checks = match (s, t) {
        (Some(s), Some(t)) => s % p.as_u64() != 0 && (s as i128 - t as i128) % (p.get() as i128 - 1) == 0,
        _ => true,
    };
    Ok(Some(Stability { a, b, c, s, m, t, criterion_agrees: criterion_agrees && checks }))
}

/// `max_i |i| p^(-v_p(k_i))` over all places, exponents read mod p^(n-1).
fn criterion_max(p: Prime, places: &[PlaceSpec], n: u32) -> Option<Rational> {
    places
        .iter()
        .flat_map(|s| s.word.u.iter())
        .filter(|(&i, _)| i < 0)
        .filter_map(|(&i, k)| p.valuation(exponent_at(p, k, n - 1)).map(|v| int(-(i as i128)) / ppow(p, v as i64)))
        .max()
}
