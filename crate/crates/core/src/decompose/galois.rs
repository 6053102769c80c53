//! Orders of Kummer classes and the Galois-structure predicates.

use crate::error::{Error, Result};
use crate::fp::{gcd, lcm};
use crate::witt::WittVector;

/// Order of the class of `a_0` in `K^x / (K^x)^(p-1)`: the lcm of the
/// orders of `v(a_0) mod (p-1)` and of the leading coefficient.
fn kummer_order(a: &WittVector) -> Result<u64> {
    let a0 = a.component(0);
    let v = a0.valuation().ok_or(Error::NotAUnit)?;
    let n = a.prime().as_u64() - 1;
    let d_ord = n / gcd(v, n as i64) as u64;
    Ok(lcm(d_ord, a0.coeff(v).order()?))
}

/// `(s, attains_max)`: the class of `a` has order dividing `p^s (p-1)`,
/// with equality exactly when `attains_max`.
pub fn class_order(a: &WittVector) -> Result<(usize, bool)> {
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    let n = a.len();
    let r = (1..n).find(|&i| !a.component(i).is_zero()).unwrap_or(n);
    Ok((n - r, kummer_order(a)? == a.prime().as_u64() - 1))
}

/// p odd: the extension cut out by `a` has group `(Z/p^n)^x` iff `a_0`
/// generates a subgroup of order p-1 modulo (p-1)-th powers and `a_1 != 0`.
pub fn galois_group_check(a: &WittVector) -> Result<bool> {
    if a.prime().get() == 2 {
        return Err(Error::WrongPrime("galois_group_check needs p > 2; use galois_group_check_p2".into()));
    }
    if !a.is_unit() {
        return Err(Error::NotAUnit);
    }
    let a1 = a.len() > 1 && !a.component(1).is_zero();
    Ok(a1 && kummer_order(a)? == a.prime().as_u64() - 1)
}

/// p = 2: the compositum of the extensions of `a` and `b` has group
/// `(Z/2^n)^x` iff, up to swapping, `a = (1, a_1, a_2, ..)` with
/// `a_1, a_2 != 0` and `b = (1, 0, b_2, ..)` with `b_2 != 0`.
pub fn galois_group_check_p2(a: &WittVector, b: &WittVector) -> Result<bool> {
    if a.prime().get() != 2 || b.prime().get() != 2 {
        return Err(Error::WrongPrime("galois_group_check_p2 needs p = 2".into()));
    }
    if a.len() < 3 || b.len() < 3 {
        return Err(Error::BadIndex(format!("need length >= 3, got {} and {}", a.len(), b.len())));
    }
    let first = |x: &WittVector| {
        x.component(0).is_one() && !x.component(1).is_zero() && !x.component(2).is_zero()
    };
    let second = |x: &WittVector| {
        x.component(0).is_one() && x.component(1).is_zero() && !x.component(2).is_zero()
    };
    Ok((first(a) && second(b)) || (first(b) && second(a)))
}
