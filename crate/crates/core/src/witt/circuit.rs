//! Witt arithmetic through lifted ghost components.
//!
//! For a vector x over F_p((T)) let X_i be the canonical lift of x_i to
//! (Z/p^l)((T)). The n-th ghost component of any lift is determined mod
//! p^(n+1) by x alone, because p^i a^(p^(n-i)) mod p^(n+1) only depends on
//! a mod p. So a result with prescribed ghost components g_n (mod p^(n+1))
//! is found one component at a time:
//!
//!   s_n = (g_n - sum_{i<n} p^i S_i^(p^(n-i))) / p^n  mod p
//!
//! and the division by p^n has to be exact.

use crate::error::{Error, Result};
use crate::series::kernel::ModSeries;

const INF: i64 = i64::MAX / 4;

fn clamp(x: i128) -> i64 {
    x.clamp(-(INF as i128), INF as i128) as i64
}

fn sat(a: i64, b: i64) -> i64 {
    clamp(a as i128 + b as i128)
}

/// A series mod p^k together with a T-adic precision for each p-adic digit:
/// the value is known up to an error `sum_j p^j e_j` with `v(e_j) >= np[j]`.
/// A single precision would forget that the poles of ghost components of
/// exact vectors are divisible by high powers of p. `np` is non-increasing
/// and `val` stores coefficients below `np[0]`.
#[derive(Debug, Clone)]
pub(crate) struct Lifted {
    pub(crate) val: ModSeries,
    pub(crate) np: Vec<i64>,
}

fn canonical(mut np: Vec<i64>) -> Vec<i64> {
    for j in 1..np.len() {
        np[j] = np[j].min(np[j - 1]);
    }
    np
}

impl Lifted {
    fn digits(&self) -> usize {
        self.np.len()
    }

    /// Lowest exponent at which digit t of the stored value is nonzero.
    fn digit_vals(&self, p: u64) -> Vec<i64> {
        let mut out = vec![INF; self.digits()];
        for (e, mut c) in self.val.terms() {
            for slot in out.iter_mut() {
                if c % p != 0 && *slot == INF {
                    *slot = e;
                }
                c /= p;
            }
        }
        out
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        let np = self.np.iter().zip(&o.np).map(|(a, b)| *a.min(b)).collect();
        Lifted { val: self.val.add(&o.val), np }
    }

    pub(crate) fn sub(&self, o: &Self) -> Self {
        let np = self.np.iter().zip(&o.np).map(|(a, b)| *a.min(b)).collect();
        Lifted { val: self.val.sub(&o.val), np }
    }

    pub(crate) fn neg(&self) -> Self {
        Lifted { val: self.val.neg(), np: self.np.clone() }
    }

    pub(crate) fn mul(&self, o: &Self, p: u64) -> Self {
        let (va, vb) = (self.digit_vals(p), o.digit_vals(p));
        let k = self.digits();
        let mut np = vec![INF; k];
        for (s, slot) in np.iter_mut().enumerate() {
            for t in 0..=s {
                let j = s - t;
                *slot = (*slot)
                    .min(sat(va[t], o.np[j]))
                    .min(sat(vb[t], self.np[j]))
                    .min(sat(self.np[t], o.np[j]));
            }
        }
        let np = canonical(np);
        Lifted { val: self.val.mul_trunc(&o.val, np[0]), np }
    }

    /// `p^i` times the canonical lift into `digits` digits.
    fn lift_scale(&self, p: u64, i: usize, digits: usize) -> Self {
        let m = p.pow(digits as u32);
        let mut np = vec![INF; i];
        np.extend_from_slice(&self.np[..digits - i]);
        let mut val = self.val.lift_to(m).scale(p.pow(i as u32));
        val.prec = np[0];
        Lifted { val, np }
    }
}

/// `chain[k] = X^(p^k) mod p^(k+1)`, where `X` lifts a series mod p.
///
/// With `x` known below N and `v = v(x)`, changing `x` by `d` changes the
/// power by `sum_j C(p^k, j) X^(p^k - j) d^j`, and `p^(k-t)` exactly divides
/// the smallest `j` that reaches digit `t`. Digit `t` is therefore known
/// below `p^k v + p^(k-t) (N - v)`.
pub(crate) fn power_chain(x: &ModSeries, p: u64, depth: usize) -> Vec<Lifted> {
    let v = x.eff_val() as i128;
    let rel = x.prec as i128 - v;
    let pw = |k: usize| (p as i128).saturating_pow(k as u32);
    let mut out: Vec<Lifted> = Vec::with_capacity(depth);
    for k in 0..depth {
        let np: Vec<i64> =
            (0..=k).map(|t| clamp(pw(k).saturating_mul(v).saturating_add(pw(k - t).saturating_mul(rel)))).collect();
        let val = if k == 0 {
            x.clone()
        } else {
            out[k - 1].val.lift_to(p.pow(k as u32 + 1)).pow_trunc(p, np[0])
        };
        out.push(Lifted { val, np });
    }
    out
}

/// Chains for every component of a vector; component i needs depth l - i.
pub(crate) fn chains(comps: &[&ModSeries], p: u64) -> Vec<Vec<Lifted>> {
    let l = comps.len();
    comps.iter().enumerate().map(|(i, x)| power_chain(x, p, l - i)).collect()
}

/// The n-th ghost component mod p^(n+1).
pub(crate) fn ghost_mod(ch: &[Vec<Lifted>], p: u64, n: usize) -> Lifted {
    let mut acc: Option<Lifted> = None;
    for (i, c) in ch.iter().enumerate().take(n + 1) {
        let term = c[n - i].lift_scale(p, i, n + 1);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.expect("ghost of an empty vector")
}

/// Digit n of `acc`, which has to vanish below digit n where it is known.
fn top_digit(acc: &Lifted, p: u64, n: usize) -> Result<ModSeries> {
    let prec = acc.np[n];
    let d = p.pow(n as u32);
    let mut out = Vec::new();
    let start = acc.val.start;
    for (e, c) in acc.val.terms() {
        if e >= prec {
            break;
        }
        if c % d != 0 {
            return Err(Error::InexactDivision(n));
        }
        out.resize((e - start) as usize, 0);
        out.push(c / d);
    }
    Ok(ModSeries::from_raw(p, start, out, prec))
}

/// Components (mod p) of the vector whose n-th ghost component is
/// `target(n)` mod p^(n+1).
pub(crate) fn solve_ghost(
    p: u64,
    len: usize,
    mut target: impl FnMut(usize) -> Lifted,
) -> Result<Vec<ModSeries>> {
    let mut comps = Vec::with_capacity(len);
    let mut ch: Vec<Vec<Lifted>> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = target(n);
        debug_assert_eq!(acc.digits(), n + 1);
        for (i, c) in ch.iter().enumerate() {
            acc = acc.sub(&c[n - i].lift_scale(p, i, n + 1));
        }
        let s = top_digit(&acc, p, n)?;
        ch.push(power_chain(&s, p, len - n));
        comps.push(s);
    }
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(p: u64, c: u64) -> ModSeries {
        ModSeries::monomial(p, c, 0, 10)
    }

    #[test]
    fn one_plus_one_mod_three() {
        // (1,0) + (1,0) = (2,1) in W_2(F_3)
        let x = [constant(3, 1), ModSeries::zero(3, 10)];
        let refs: Vec<&ModSeries> = x.iter().collect();
        let ch = chains(&refs, 3);
        let s = solve_ghost(3, 2, |n| {
            let g = ghost_mod(&ch, 3, n);
            g.add(&g)
        })
        .unwrap();
        assert_eq!(s[0], constant(3, 2));
        assert_eq!(s[1], constant(3, 1));
    }

    #[test]
    fn non_integral_target_is_caught() {
        // ghost (0, 1) is not the ghost vector of anything integral
        let r = solve_ghost(3, 2, |n| {
            let val = if n == 0 { ModSeries::zero(3, 10) } else { ModSeries::monomial(9, 1, 0, 10) };
            Lifted { val, np: vec![10; n + 1] }
        });
        assert_eq!(r, Err(Error::InexactDivision(1)));
    }
}
