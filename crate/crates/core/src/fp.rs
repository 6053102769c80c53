//! The prime field F_p for small runtime primes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = 97;

/// A validated prime `2 <= p <= 97`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME as u64 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::BadPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    /// `p^k` as u128; callers keep `k` small.
    pub fn pow(self, k: u32) -> u128 {
        (self.0 as u128).pow(k)
    }

    /// p-adic valuation of a nonzero integer.
    pub fn valuation(self, n: u128) -> Option<u32> {
        if n == 0 {
            return None;
        }
        let p = self.0 as u128;
        let mut n = n;
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        Some(v)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0 as u64
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p. The modulus travels with the element so that
/// mixed-prime arithmetic is caught instead of silently wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    residue: u32,
    p: Prime,
}

impl FpElement {
    pub fn new(p: Prime, value: i64) -> Self {
        let m = p.get() as i64;
        FpElement { residue: value.rem_euclid(m) as u32, p }
    }

    pub fn zero(p: Prime) -> Self {
        FpElement { residue: 0, p }
    }

    pub fn one(p: Prime) -> Self {
        FpElement { residue: 1, p }
    }

    #[inline]
    pub fn residue(self) -> u32 {
        self.residue
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn add(self, o: Self) -> Self {
        FpElement { residue: (self.residue + o.residue) % self.p.get(), p: self.p }
    }

    pub fn sub(self, o: Self) -> Self {
        let m = self.p.get();
        FpElement { residue: (self.residue + m - o.residue) % m, p: self.p }
    }

    pub fn neg(self) -> Self {
        FpElement::zero(self.p).sub(self)
    }

    pub fn mul(self, o: Self) -> Self {
        FpElement { residue: mul_mod(self.residue, o.residue, self.p.get()), p: self.p }
    }

    pub fn pow(self, e: u64) -> Self {
        FpElement { residue: pow_mod(self.residue, e, self.p.get()), p: self.p }
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(self.pow(self.p.as_u64() - 2))
    }

    /// Multiplicative order in F_p^x.
    pub fn order(self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut x = self;
        let mut k = 1;
        while x.residue != 1 {
            x = x.mul(self);
            k += 1;
        }
        Ok(k)
    }

    /// Smallest `r` with `r^m = self`, if any.
    pub fn root(self, m: u64) -> Option<Self> {
        (0..self.p.get())
            .map(|r| FpElement { residue: r, p: self.p })
            .find(|r| r.pow(m) == self)
    }

    /// Largest divisor `m` of `p-1` such that `self` is an m-th power in F_p^x.
    pub fn max_power_divisor(self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = self.p.as_u64() - 1;
        Ok((1..=n).rev().find(|m| n % m == 0 && self.root(*m).is_some()).unwrap_or(1))
    }
}

impl Serialize for FpElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.residue)
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 * b as u64) % m as u64) as u32
}

pub(crate) fn pow_mod(mut b: u32, mut e: u64, m: u32) -> u32 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a as i64, b as i64) as u64 * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_validated() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(9), Err(Error::BadPrime(9)));
        assert_eq!(Prime::new(101), Err(Error::BadPrime(101)));
        assert_eq!(Prime::new(1), Err(Error::BadPrime(1)));
    }

    #[test]
    fn frobenius_is_identity_on_fp() {
        for p in [2u64, 3, 5, 7, 11, 97] {
            let p = Prime::new(p).unwrap();
            for a in 0..p.get() as i64 {
                let x = FpElement::new(p, a);
                assert_eq!(x.pow(p.as_u64()), x);
            }
        }
    }

    #[test]
    fn power_divisors() {
        let p5 = Prime::new(5).unwrap();
        assert_eq!(FpElement::new(p5, 1).max_power_divisor().unwrap(), 4);
        assert_eq!(FpElement::new(p5, 2).max_power_divisor().unwrap(), 1);
        assert_eq!(FpElement::new(p5, 4).max_power_divisor().unwrap(), 2);
        assert_eq!(FpElement::new(p5, 2).order().unwrap(), 4);
        assert!(FpElement::new(p5, 2).root(2).is_none());
    }
}
