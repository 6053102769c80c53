//! Truncated Laurent series over F_p: the local field K = F_p((T)).
//!
//! Every series carries an absolute precision `N`: coefficients of `T^e`
//! are exact for `e < N` and unknown from `N` on. Results of arithmetic
//! never report digits at or beyond their own precision.
//!
//! Precision rules:
//! - sum: `min(N_a, N_b)`
//! - product: `min(N_a + v_b, N_b + v_a)`, where the valuation of a zero
//!   operand is taken to be its precision
//! - inverse: `N_a - 2 v_a` (relative precision is preserved)
//! - p-th power: `p N_a`

mod artin_schreier;
pub(crate) mod kernel;
mod text;
mod units;

use std::fmt;

pub use artin_schreier::{artin_schreier_reduce, solve_artin_schreier, wp};
pub use units::{nth_root, unit_decompose, UnitDecomposition};

use crate::error::{Error, Result};
use crate::fp::{FpElement, Prime};
use kernel::ModSeries;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    p: Prime,
    pub(crate) inner: ModSeries,
}

impl LaurentSeries {
    pub fn zero(p: Prime, precision: i64) -> Self {
        LaurentSeries { p, inner: ModSeries::zero(p.as_u64(), precision) }
    }

    pub fn one(p: Prime, precision: i64) -> Self {
        Self::monomial(p, 1, 0, precision)
    }

    /// `c T^e + O(T^precision)`.
    pub fn monomial(p: Prime, c: i64, e: i64, precision: i64) -> Self {
        let c = c.rem_euclid(p.get() as i64) as u64;
        LaurentSeries { p, inner: ModSeries::monomial(p.as_u64(), c, e, precision) }
    }

    /// Builds `sum c T^e` from (exponent, coefficient) pairs; coefficients
    /// are reduced mod p and repeated exponents accumulate.
    pub fn from_terms<I>(p: Prime, terms: I, precision: i64) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let terms: Vec<(i64, i64)> = terms.into_iter().filter(|&(e, _)| e < precision).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(p, precision);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let m = p.get() as i64;
        let mut coeffs = vec![0u64; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = ((*slot as i64 + c).rem_euclid(m)) as u64;
        }
        LaurentSeries { p, inner: ModSeries::from_raw(p.as_u64(), lo, coeffs, precision) }
    }

    pub(crate) fn from_inner(p: Prime, inner: ModSeries) -> Self {
        debug_assert_eq!(inner.m, p.as_u64());
        LaurentSeries { p, inner }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.inner.prec
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.inner.valuation()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn coeff(&self, e: i64) -> FpElement {
        FpElement::new(self.p, self.inner.coeff(e) as i64)
    }

    pub fn leading_coeff(&self) -> Option<FpElement> {
        self.valuation().map(|v| self.coeff(v))
    }

    /// Nonzero terms as (exponent, residue) pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.inner.terms().map(|(e, c)| (e, c as u32))
    }

    /// Forgets everything at or beyond `precision` (never raises precision).
    pub fn truncate(&self, precision: i64) -> Self {
        Self::from_inner(self.p, self.inner.with_prec(precision))
    }

    /// Same coefficients with a stated precision; used to declare a finite
    /// expression exact up to some bound.
    pub fn with_precision(&self, precision: i64) -> Self {
        let mut inner = self.inner.with_prec(i64::MAX);
        inner.prec = precision;
        Self::from_inner(self.p, inner.with_prec(precision))
    }

    /// Part with exponents `< 0`.
    pub fn polar_part(&self) -> Self {
        self.select(|e| e < 0)
    }

    /// Part with exponents `> 0`.
    pub fn positive_part(&self) -> Self {
        self.select(|e| e > 0)
    }

    fn select(&self, keep: impl Fn(i64) -> bool) -> Self {
        let terms: Vec<(i64, i64)> =
            self.terms().filter(|t| keep(t.0)).map(|(e, c)| (e, c as i64)).collect();
        Self::from_terms(self.p, terms, self.precision())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p.get(), o.p.get()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::from_inner(self.p, self.inner.add(&o.inner)))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::from_inner(self.p, self.inner.sub(&o.inner)))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::from_inner(self.p, self.inner.mul(&o.inner)))
    }

    /// Panicking convenience wrappers for same-prime operands.
    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("series over different primes")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("series over different primes")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("series over different primes")
    }

    pub fn neg(&self) -> Self {
        Self::from_inner(self.p, self.inner.neg())
    }

    pub fn scale(&self, c: FpElement) -> Self {
        Self::from_inner(self.p, self.inner.scale(c.residue() as u64))
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_inner(self.p, self.inner.shift(k))
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::InversionOfZero)?;
        let p = self.p.as_u64();
        if self.inner.coeffs.len() == 1 {
            let c = self.coeff(v).inv()?;
            let prec = self.precision().saturating_sub(2 * v);
            return Ok(Self::from_inner(self.p, ModSeries::monomial(p, c.residue() as u64, -v, prec)));
        }
        let rel = self.precision() - v;
        assert!(rel < 1 << 32, "inverse of a non-monomial needs a finite precision");
        let n = rel.max(0) as usize;
        // unit part a(T) = sum a_k T^k, inverse b with a b = 1 mod T^n
        let a = &self.inner.coeffs;
        let a0_inv = FpElement::new(self.p, a[0] as i64).inv()?.residue() as u64;
        let mut b = vec![0u64; n];
        for k in 0..n {
            let mut s: u64 = if k == 0 { 1 } else { 0 };
            for j in 1..=k.min(a.len() - 1) {
                s = (s + p * p - (a[j] * b[k - j]) % p) % p;
            }
            b[k] = (s * a0_inv) % p;
        }
        Ok(Self::from_inner(self.p, ModSeries::from_raw(p, -v, b, rel - v)))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.inv()?)
    }

    /// `f -> f^p`: exponents scale by p, precision scales by p.
    pub fn frobenius(&self) -> Self {
        self.frobenius_iter(1)
    }

    /// `f -> f^(p^k)`.
    pub fn frobenius_iter(&self, k: u32) -> Self {
        let q = self.p.pow(k) as i64;
        let inner = &self.inner;
        if inner.is_zero() {
            return Self::zero(self.p, inner.prec.saturating_mul(q).min(i64::MAX / 4));
        }
        let mut coeffs = vec![0u64; (inner.coeffs.len() - 1) * q as usize + 1];
        for (i, &c) in inner.coeffs.iter().enumerate() {
            coeffs[i * q as usize] = c;
        }
        let prec = inner.prec.saturating_mul(q).min(i64::MAX / 4);
        let m = ModSeries::from_raw(self.p.as_u64(), inner.start * q, coeffs, prec);
        Self::from_inner(self.p, m)
    }

    /// Integer power; p-power factors of `k` go through Frobenius, which
    /// keeps more precision than repeated multiplication.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let p = self.p.as_u64();
        let mut k = k as u64;
        let mut e = 0;
        while k > 0 && k % p == 0 {
            k /= p;
            e += 1;
        }
        let base = Self::from_inner(self.p, self.inner.pow(k));
        Ok(if e > 0 { base.frobenius_iter(e) } else { base })
    }

    pub(crate) fn is_one(&self) -> bool {
        self.valuation() == Some(0) && self.inner.coeffs == [1]
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(T^{}) [p={}]", self, self.precision(), self.p)
    }
}

#[cfg(test)]
mod tests;
