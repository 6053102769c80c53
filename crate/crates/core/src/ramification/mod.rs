//! Ramification invariants, different valuations and genera of Z_p^x-towers
//! over P^1, together with the genus-stability verdict.
//!
//! Index conventions follow [`GeneratorWord`]: wild generators `u_i` have
//! `i < 0` prime to p, `u_0` is the constant (unramified) generator.

mod genus;
mod local;
mod stability;

pub use genus::{
    genus_sequence, genus_sequence_with_base, GenusReport, Mode, ModeChoice, Place, PlaceDifferents, PlaceSpec,
    TowerSpec,
};
pub use stability::{stability_check, Stability, DEFAULT_N_MIN};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::decompose::{GeneratorWord, PadicExponent};
use crate::error::{Error, Result};
use crate::fp::{FpElement, Prime};

pub type Rational = BigRational;

pub(crate) fn int(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn frac(n: i128, d: i128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p^e` for any integer `e`.
pub(crate) fn ppow(p: Prime, e: i64) -> Rational {
    int(p.get() as i128).pow(e as i32)
}

pub(crate) mod ratio_str {
    use super::Rational;
    use serde::Serializer;

    pub fn one<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn many<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }
}

/// `k mod p^n` with the stored residue as the integer lift.
pub(crate) fn exponent_at(p: Prime, k: &PadicExponent, n: u32) -> u128 {
    k.value as u128 % p.pow(n)
}

/// Wild indices whose exponent survives at level n, with `v_p` of it.
pub(crate) fn wild_at(word: &GeneratorWord, n: u32) -> Vec<(i64, u32)> {
    word.u
        .iter()
        .filter(|(&i, _)| i < 0)
        .filter_map(|(&i, k)| word.p.valuation(exponent_at(word.p, k, n)).map(|v| (i, v)))
        .collect()
}

/// `(e, f)` of `K(y)/K` for `y^(p-1) = c T^d`: the class of `c T^d` in
/// `K^x / (K^x)^(p-1)` is `(d mod p-1, c)`, the valuation part gives the
/// ramification and the rest is residue extension.
pub fn kummer_ramification(c: FpElement, d: i64) -> Result<(u64, u64)> {
    let n = c.prime().as_u64() as i64 - 1;
    let r = d.rem_euclid(n);
    let e = if r == 0 { 1 } else { (n / r.gcd(&n)) as u64 };
    let order = e.lcm(&c.order()?);
    Ok((e, order / e))
}

/// `p - 1 - gcd(-d, m, p-1)` with `d` brought into `[-p+1, -1]` and `m` the
/// largest divisor of p-1 for which `c` is an m-th power.
pub fn kummer_different(c: FpElement, d: i64) -> Result<i64> {
    let n = c.prime().as_u64() as i64 - 1;
    let r = d.rem_euclid(n);
    let d = if r == 0 { -n } else { r - n };
    let m = c.max_power_divisor()? as i64;
    Ok(n - (-d).gcd(&m).gcd(&n))
}

fn check_wild_index(p: Prime, i: i64) -> Result<()> {
    if i >= 0 || i % p.get() as i64 == 0 {
        return Err(Error::BadIndex(format!("{i} is not negative and prime to {p}")));
    }
    Ok(())
}

/// `[sum_{j=1}^{n-1-nu} (p^(2j) - p^(2j-1)) + 1] i`.
pub fn y_valuation(p: Prime, i: i64, n: u32, nu: u32) -> Result<i64> {
    check_wild_index(p, i)?;
    if n == 0 {
        return Err(Error::BadIndex("level must be at least 1".into()));
    }
    let top = n as i64 - 1 - nu as i64;
    let pp = p.get() as i128;
    let bracket: i128 = (1..=top).map(|j| pp.pow(2 * j as u32) - pp.pow(2 * j as u32 - 1)).sum::<i128>() + 1;
    Ok((bracket * i as i128) as i64)
}

/// `|i|/(p+1) p^(2(n-nu)) + p^(n-nu) + i/(p+1) - 1`.
pub fn different_single_u(p: Prime, i: i64, k: &PadicExponent, n: u32, nu: u32) -> Result<Rational> {
    check_wild_index(p, i)?;
    if k.is_zero() {
        return Err(Error::BadIndex(format!("exponent of u_{i} is zero")));
    }
    let e = n as i64 - nu as i64;
    let q = p.get() as i128 + 1;
    Ok(frac(-(i as i128), q) * ppow(p, 2 * e) + ppow(p, e) + frac(i as i128, q) - int(1))
}

/// `p^(n-nu) (p - gcd(-d, m, p-1)) + max_i {|i|/(p+1) p^(2(n-nu)) + i/(p+1)} - 1`,
/// the max over the wild indices visible at level n.
pub fn different_combined(word: &GeneratorWord, n: u32) -> Result<Rational> {
    let p = word.p;
    let wild = wild_at(word, n);
    if wild.is_empty() {
        return Err(Error::NoWildPart);
    }
    let nu = ramification_profile(word, n)?.nu;
    let e = n as i64 - nu as i64;
    let kd = kummer_different(word.c_elem(), word.d_or_zero())?;
    let q = p.get() as i128 + 1;
    let best = wild
        .iter()
        .map(|&(i, _)| frac(-(i as i128), q) * ppow(p, 2 * e) + frac(i as i128, q))
        .max()
        .expect("nonempty");
    Ok(ppow(p, e) * int(1 + kd as i128) + best - int(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub e1: u64,
    pub f1: u64,
    /// `None` is infinity.
    pub n1: Option<u32>,
    pub n2: u32,
    pub nu: u32,
    pub nc: u32,
    pub trivial: bool,
}

/// Profile of `word` at level n, exponents taken mod p^n.
pub fn ramification_profile(word: &GeneratorWord, n: u32) -> Result<RamificationProfile> {
    let p = word.p;
    let n1 = word.u.get(&0).and_then(|k| p.valuation(exponent_at(p, k, n)));
    let n2 = wild_at(word, n).iter().map(|w| w.1).min().unwrap_or(n);
    let nu = n1.map_or(0, |a| n2.saturating_sub(a));
    let (e1, f1) = kummer_ramification(word.c_elem(), word.d_or_zero())?;
    Ok(RamificationProfile { e1, f1, n1, n2, nu, nc: nu, trivial: word.is_trivial() })
}
