//! Newton-polygon computations in towers of Artin-Schreier extensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A symbol with a known valuation in the current normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedUnknown {
    pub name: String,
    pub val: Q,
}

impl ValuedUnknown {
    pub fn new(name: impl Into<String>, val: Q) -> Self {
        ValuedUnknown { name: name.into(), val }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ValuedUnknown::new(format!("{}*{}", self.name, o.name), &self.val + &o.val)
    }

    pub fn pow(&self, k: i64) -> Self {
        ValuedUnknown::new(format!("{}^{k}", self.name), &self.val * q(k))
    }

    /// Valuation of a sum of terms with pairwise distinct valuations.
    pub fn sum_of(terms: &[Self]) -> Option<Q> {
        let mut vals: Vec<&Q> = terms.iter().map(|t| &t.val).collect();
        vals.sort();
        if vals.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        vals.first().map(|v| (*v).clone())
    }

    /// Passing to an extension with ramification index `e`.
    fn rescale(&mut self, e: &Q) {
        self.val = &self.val * e;
    }
}

/// Root valuations with multiplicities for a polynomial with the given
/// (degree, coefficient valuation) points.
pub fn newton_slopes(points: &[(usize, Q)]) -> Vec<(Q, usize)> {
    let mut pts: Vec<(usize, Q)> = points.to_vec();
    pts.sort_by_key(|a| a.0);
    let mut hull: Vec<(usize, Q)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let cross = (&b.1 - &a.1) * q((pt.0 - a.0) as i64) - (&pt.1 - &a.1) * q((b.0 - a.0) as i64);
            if cross >= Q::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            (-(&w[1].1 - &w[0].1) / q(len as i64), len)
        })
        .collect()
}

/// Valuation of a root of `Y^p - Y = c` with `v(c) < 0`, and the
/// ramification index of the extension it generates.
fn artin_schreier_root(p: u64, vc: &Q) -> Result<(Q, Q)> {
    if !vc.is_negative() {
        return Err(Error::DegenerateInput(format!("right side has valuation {vc} >= 0")));
    }
    let slopes = newton_slopes(&[(0, vc.clone()), (1, Q::zero()), (p as usize, Q::zero())]);
    let (r, m) = slopes.into_iter().next().expect("nonempty polygon");
    if m != p as usize {
        return Err(Error::DegenerateInput("polygon splits".into()));
    }
    let e = Q::from_integer(r.denom().clone());
    Ok((r, e))
}

fn check_index(p: u64, i: i64) -> Result<()> {
    if i >= 0 || i % p as i64 == 0 {
        return Err(Error::BadIndex(format!("{i} is not negative and prime to {p}")));
    }
    Ok(())
}

/// `a (a-1) ... (a-k+1) / k!`.
fn binomial(a: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(a - t as i64);
        den *= BigInt::from(t + 1);
    }
    num / den
}

/// Different exponent of `y^p - y = T^i` over F_p((T)), summed over the
/// nontrivial automorphisms `y -> y + j` acting on a uniformizer.
pub fn as_conductor_oracle(p: u64, i: i64) -> Result<i64> {
    check_index(p, i)?;
    let (r, e) = artin_schreier_root(p, &q(i))?;
    let vy = (&r * &e).to_integer().to_i64().expect("small");
    let e = e.to_integer().to_i64().expect("small");
    let g = vy.extended_gcd(&e);
    debug_assert_eq!(g.gcd, 1);
    // uniformizer y^a T^b; sigma(y)^a - y^a = sum_k C(a,k) j^k y^(a-k)
    let (a, b) = (g.x, g.y);
    let pb = BigInt::from(p);
    let mut total = 0;
    for j in 1..p {
        let k = (1..=4 * p)
            .find(|&k| !(binomial(a, k) * BigInt::from(j).pow(k as u32)).mod_floor(&pb).is_zero())
            .ok_or_else(|| Error::DegenerateInput("no surviving binomial term".into()))?;
        total += b * e + (a - k as i64) * vy;
    }
    Ok(total)
}

pub const RECURRENCE_DEPTH_CAP: u32 = 3;

/// Valuation of the level-n unknown of the tower solving `q(y) = u_i`,
/// followed level by level through the principal terms of the recurrence.
pub fn recurrence_valuation_oracle(p: u64, i: i64, n: u32) -> Result<i64> {
    check_index(p, i)?;
    if n == 0 {
        return Err(Error::BadIndex("level must be at least 1".into()));
    }
    if n > RECURRENCE_DEPTH_CAP {
        return Err(Error::DepthCapExceeded(format!("level {n} exceeds {RECURRENCE_DEPTH_CAP}")));
    }
    let mut t = ValuedUnknown::new("T", q(1));
    let mut ys = vec![ValuedUnknown::new("y0", q(0))];
    for k in 1..=n {
        let rhs = if k == 1 {
            t.pow(i).mul(&ys[0].pow(p as i64))
        } else {
            let m = (p.pow(k - 1) - p.pow(k - 2)) as i64 * i;
            t.pow(m).mul(&ys[k as usize - 1])
        };
        let (r, e) = artin_schreier_root(p, &rhs.val)?;
        t.rescale(&e);
        for y in ys.iter_mut() {
            y.rescale(&e);
        }
        ys.push(ValuedUnknown::new(format!("y{k}"), r * e));
    }
    let v = &ys[n as usize].val;
    if !v.is_integer() {
        return Err(Error::DegenerateInput(format!("valuation {v} is not integral")));
    }
    Ok(v.to_integer().to_i64().expect("small"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductor_examples() {
        assert_eq!(as_conductor_oracle(3, -1).unwrap(), 4);
        assert_eq!(as_conductor_oracle(3, -2).unwrap(), 6);
        assert_eq!(as_conductor_oracle(5, -1).unwrap(), 8);
        assert!(as_conductor_oracle(3, -3).is_err());
        assert!(as_conductor_oracle(3, 2).is_err());
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(recurrence_valuation_oracle(3, -1, 1).unwrap(), -1);
        assert_eq!(recurrence_valuation_oracle(3, -1, 2).unwrap(), -7);
        assert_eq!(recurrence_valuation_oracle(5, -2, 2).unwrap(), -42);
        assert!(matches!(recurrence_valuation_oracle(3, -1, 4), Err(Error::DepthCapExceeded(_))));
    }

    #[test]
    fn polygon_of_a_split_polynomial() {
        // (Y - T)(Y - T^3): points (0, 4), (1, 1), (2, 0)
        let s = newton_slopes(&[(0, q(4)), (1, q(1)), (2, q(0))]);
        assert_eq!(s, vec![(q(3), 1), (q(1), 1)]);
    }

    #[test]
    fn distinct_valuations_add_by_min() {
        let a = ValuedUnknown::new("a", q(-2));
        let b = ValuedUnknown::new("b", q(3));
        assert_eq!(ValuedUnknown::sum_of(&[a.clone(), b]), Some(q(-2)));
        assert_eq!(ValuedUnknown::sum_of(&[a.clone(), a]), None);
    }
}
