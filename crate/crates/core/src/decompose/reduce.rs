//! Reduction of a unit to its canonical word modulo q(W(K)^x).

use std::collections::BTreeMap;

use super::solve::q_level;
use super::word::{GeneratorWord, PadicExponent};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::series::{artin_schreier_reduce, solve_artin_schreier, LaurentSeries};
use crate::witt::{WittVector, EXACT};

/// Which generator carries level `n` for index `i`, and what one copy of
/// it adds to the exponent of which letter.
struct Letter {
    is_v: bool,
    weight: u64,
}

fn letter(p: Prime, n: usize) -> Letter {
    if p.get() == 2 && n >= 2 {
        Letter { is_v: true, weight: 1 << (n - 2) }
    } else {
        Letter { is_v: false, weight: p.pow(n as u32 - 1) as u64 }
    }
}

fn generator(p: Prime, n: usize, i: i64, len: usize) -> Result<WittVector> {
    let t = LaurentSeries::monomial(p, 1, i, EXACT);
    let l = letter(p, n);
    let depth = if l.is_v { 2 } else { 1 };
    WittVector::one_plus_v(depth, &t, len).pow(l.weight as i64)
}

fn mod_exps(p: Prime, len: usize) -> (u32, u32) {
    if p.get() == 2 {
        (1, len.saturating_sub(2) as u32)
    } else {
        (len as u32 - 1, 0)
    }
}

/// Canonical word of `x`, processed level by level from the shallowest.
///
/// The Teichmuller part keeps the leading coefficient `c` and `d mod (p-1)`
/// (one-units of K are (p-1)-th powers). At level `n` the residual is
/// `1 + V^n[f] + ...`; `f` is split by the Artin-Schreier normal form,
/// everything but the reduced polar part and constant is removed by a
/// q-image, and each surviving coefficient is paid for with the level-n
/// generator. `x` is first truncated to `precision`.
pub fn reduce_mod_q(x: &WittVector, precision: i64) -> Result<GeneratorWord> {
    if !x.is_unit() {
        return Err(Error::NotAUnit);
    }
    let x = &x.truncate_precision(precision);
    let p = x.prime();
    let pm = p.get();
    let len = x.len();
    let x0 = x.component(0);
    let v = x0.valuation().expect("unit");
    let c = x0.coeff(v);
    let dm = v.rem_euclid(pm as i64 - 1) as u32;
    let d = match (dm, c.residue()) {
        (0, 1) => None,
        (0, _) => Some(pm - 1),
        (d, _) => Some(d),
    };

    let (mu, mv) = mod_exps(p, len);
    let mut acc_u: BTreeMap<i64, u64> = BTreeMap::new();
    let mut acc_v: BTreeMap<i64, u64> = BTreeMap::new();
    let mut rest = x.mul_teichmuller(&x0.inv()?);
    for n in 1..len {
        for round in 0.. {
            assert!(round < 8, "level {n} failed to clear");
            let f = rest.component(n).clone();
            if f.precision() <= 0 {
                return Err(Error::PrecisionExhausted(format!(
                    "level {n} of the residual is only known below T^{}",
                    f.precision()
                )));
            }
            if f.is_zero() {
                break;
            }
            let (reduced, witness) = artin_schreier_reduce(&f);
            let s = solve_artin_schreier(&reduced.positive_part(), f.precision())?
                .expect("positive parts are always solvable");
            let t = witness.add(&s);
            if !t.is_zero() {
                rest = rest.div(&q_level(n, &t, len)?)?;
            }
            let letter = letter(p, n);
            for (i, a) in reduced.terms().filter(|t| t.0 <= 0) {
                let g = generator(p, n, i, len)?;
                rest = rest.div(&g.pow(a as i64)?)?;
                let slot = if letter.is_v { acc_v.entry(i) } else { acc_u.entry(i) }.or_insert(0);
                *slot += a as u64 * letter.weight;
            }
        }
        debug_assert!(rest.components()[1..=n].iter().all(|c| c.is_zero()));
    }
    let finish = |acc: BTreeMap<i64, u64>, m: u32| {
        acc.into_iter()
            .map(|(i, k)| (i, PadicExponent::new(p, k as i128, m)))
            .filter(|(_, k)| !k.is_zero())
            .collect()
    };
    Ok(GeneratorWord { p, c: c.residue(), d, u: finish(acc_u, mu), v: finish(acc_v, mv) })
}

/// `[c T^d] prod u_i^(k_i) prod v_i^(k'_i)` at length `len`. Exponents are
/// used as integers in `[0, p^M)`. Every component is a Laurent polynomial
/// and is returned exactly.
pub fn reconstruct(word: &GeneratorWord, len: usize) -> Result<WittVector> {
    let p = word.p;
    let teich = LaurentSeries::monomial(p, word.c as i64, word.d_or_zero(), EXACT);
    let mut x = WittVector::teichmuller(&teich, len);
    for (depth, map) in [(1, &word.u), (2, &word.v)] {
        if depth >= len {
            continue;
        }
        for (&i, k) in map {
            let t = LaurentSeries::monomial(p, 1, i, EXACT);
            x = x.mul(&WittVector::one_plus_v(depth, &t, len).pow(k.value as i64)?)?;
        }
    }
    Ok(x)
}
