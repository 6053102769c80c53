//! Explicit universal Witt polynomials over Z.
//!
//! `S_n` and `P_n` come from the triangular ghost system with exact
//! division by `p^n`. Their size grows roughly like the number of
//! weighted-homogeneous monomials of weight `p^(l-1)`, so generation is
//! refused beyond a term budget; the ring itself never needs them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::series::LaurentSeries;

pub const LENGTH_CAP: usize = 5;
pub const TERM_BUDGET: u128 = 5000;

/// Exponents of `X_0..X_{l-1}, Y_0..Y_{l-1}`.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut m = vec![0; nvars];
        m[j] = 1;
        Polynomial { nvars, terms: BTreeMap::from([(m, BigInt::one())]) }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// Multivariate polynomial from explicit terms (duplicates accumulate).
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, BigInt::from(c));
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Polynomial { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut r = Self::constant(self.nvars, BigInt::one());
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    /// Value at integer arguments.
    pub fn eval_int(&self, vals: &[BigInt]) -> BigInt {
        assert_eq!(vals.len(), self.nvars);
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in vals.iter().zip(m) {
                if e > 0 {
                    t *= Pow::pow(x, e);
                }
            }
            total += t;
        }
        total
    }

    /// Value over F_p((T)): coefficients are reduced mod p first, so terms
    /// divisible by p never get evaluated.
    pub fn eval_series(&self, p: Prime, vals: &[LaurentSeries]) -> Result<LaurentSeries> {
        assert_eq!(vals.len(), self.nvars);
        let pb = BigInt::from(p.get());
        let mut powers: HashMap<(usize, u32), LaurentSeries> = HashMap::new();
        let prec = vals.iter().map(|v| v.precision()).min().unwrap_or(0);
        let mut total: Option<LaurentSeries> = None;
        for (m, c) in &self.terms {
            let r = c.mod_floor(&pb);
            if r.is_zero() {
                continue;
            }
            let r: i64 = r.try_into().expect("residue fits");
            let mut t = LaurentSeries::monomial(p, r, 0, i64::MAX / 4);
            for (j, &e) in m.iter().enumerate() {
                if e > 0 {
                    if !powers.contains_key(&(j, e)) {
                        powers.insert((j, e), vals[j].pow(e as i64)?);
                    }
                    t = t.mul(&powers[&(j, e)]);
                }
            }
            total = Some(match total {
                None => t,
                Some(s) => s.add(&t),
            });
        }
        Ok(total.unwrap_or_else(|| LaurentSeries::zero(p, prec)))
    }

    /// True when every coefficient is divisible by p.
    pub fn vanishes_mod(&self, p: Prime) -> bool {
        let pb = BigInt::from(p.get());
        self.terms.values().all(|c| c.mod_floor(&pb).is_zero())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalPolys {
    pub p: Prime,
    pub len: usize,
    pub sum: Vec<Polynomial>,
    pub prod: Vec<Polynomial>,
}

/// Number of monomials of weighted degree `d` with weights `ws`.
fn weighted_count(ws: &[u128], d: u128) -> u128 {
    let d = d as usize;
    let mut f = vec![0u128; d + 1];
    f[0] = 1;
    for &w in ws {
        let w = w as usize;
        for k in w..=d {
            f[k] = f[k].saturating_add(f[k - w]);
        }
    }
    f[d]
}

/// Upper bound on the number of terms of `S_{l-1}` and `P_{l-1}`.
pub fn estimated_terms(p: Prime, len: usize) -> u128 {
    let n = len as u32 - 1;
    let d = p.pow(n);
    if d > 1 << 20 {
        return u128::MAX;
    }
    let ws: Vec<u128> = (0..len as u32).map(|i| p.pow(i)).collect();
    let both: Vec<u128> = ws.iter().chain(&ws).copied().collect();
    let s = weighted_count(&both, d);
    let one = weighted_count(&ws, d);
    s.max(one.saturating_mul(one))
}

fn ghost_poly(p: &BigInt, nvars: usize, offset: usize, n: usize) -> Polynomial {
    let mut g = Polynomial::zero(nvars);
    for i in 0..=n {
        let e = Pow::pow(p, (n - i) as u32);
        let e: u64 = (&e).try_into().expect("small exponent");
        g = g.add(&Polynomial::var(nvars, offset + i).pow(e).scale(&Pow::pow(p, i as u32)));
    }
    g
}

fn solve_tower(p: &BigInt, len: usize, targets: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(len);
    for (n, t) in targets.iter().enumerate() {
        let mut acc = t.clone();
        for (i, s) in out.iter().enumerate() {
            let e: u64 = (&Pow::pow(p, (n - i) as u32)).try_into().expect("small exponent");
            acc = acc.sub(&s.pow(e).scale(&Pow::pow(p, i as u32)));
        }
        out.push(acc.div_exact(&Pow::pow(p, n as u32)).ok_or(Error::InexactDivision(n))?);
    }
    Ok(out)
}

fn generate(p: Prime, len: usize) -> Result<UniversalPolys> {
    let nvars = 2 * len;
    let pb = BigInt::from(p.get());
    let gx: Vec<Polynomial> = (0..len).map(|n| ghost_poly(&pb, nvars, 0, n)).collect();
    let gy: Vec<Polynomial> = (0..len).map(|n| ghost_poly(&pb, nvars, len, n)).collect();
    let sums: Vec<Polynomial> = gx.iter().zip(&gy).map(|(a, b)| a.add(b)).collect();
    let prods: Vec<Polynomial> = gx.iter().zip(&gy).map(|(a, b)| a.mul(b)).collect();
    Ok(UniversalPolys { p, len, sum: solve_tower(&pb, len, &sums)?, prod: solve_tower(&pb, len, &prods)? })
}

type Cache = Mutex<HashMap<(u32, usize), Arc<UniversalPolys>>>;

/// Universal sum and product polynomials, generated once per (p, l).
pub fn gen_universal_polys(p: Prime, len: usize) -> Result<Arc<UniversalPolys>> {
    if len == 0 || len > LENGTH_CAP {
        return Err(Error::LengthCapExceeded { got: len, cap: LENGTH_CAP });
    }
    let terms = estimated_terms(p, len);
    if terms > TERM_BUDGET {
        return Err(Error::TermBudgetExceeded { p: p.get(), len, terms, budget: TERM_BUDGET });
    }
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(p.get(), len)) {
        return Ok(hit.clone());
    }
    let polys = Arc::new(generate(p, len)?);
    cache.lock().unwrap().insert((p.get(), len), polys.clone());
    Ok(polys)
}

impl UniversalPolys {
    /// Evaluates `S` (or `P`) at two vectors over F_p((T)).
    pub fn eval(&self, sum: bool, x: &[LaurentSeries], y: &[LaurentSeries]) -> Result<Vec<LaurentSeries>> {
        if x.len() != self.len || y.len() != self.len {
            return Err(Error::LengthMismatch(x.len(), self.len));
        }
        let vals: Vec<LaurentSeries> = x.iter().chain(y).cloned().collect();
        let polys = if sum { &self.sum } else { &self.prod };
        polys.iter().map(|q| q.eval_series(self.p, &vals)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(len: usize, xs: &[(usize, u32)]) -> Monomial {
        let mut m = vec![0; 2 * len];
        for &(j, e) in xs {
            m[j] = e;
        }
        m
    }

    #[test]
    fn level_zero_and_one() {
        let p3 = Prime::new(3).unwrap();
        let u = gen_universal_polys(p3, 2).unwrap();
        // S_0 = X_0 + Y_0, P_0 = X_0 Y_0
        assert_eq!(u.sum[0], Polynomial::from_terms(4, [(mono(2, &[(0, 1)]), 1), (mono(2, &[(2, 1)]), 1)]));
        assert_eq!(u.prod[0], Polynomial::from_terms(4, [(mono(2, &[(0, 1), (2, 1)]), 1)]));
        // S_1 = X_1 + Y_1 - X_0^2 Y_0 - X_0 Y_0^2
        let s1 = Polynomial::from_terms(
            4,
            [
                (mono(2, &[(1, 1)]), 1),
                (mono(2, &[(3, 1)]), 1),
                (mono(2, &[(0, 2), (2, 1)]), -1),
                (mono(2, &[(0, 1), (2, 2)]), -1),
            ],
        );
        assert_eq!(u.sum[1], s1);
    }

    #[test]
    fn product_level_one_any_prime() {
        for p in [2u64, 3, 5, 7] {
            let pr = Prime::new(p).unwrap();
            let u = gen_universal_polys(pr, 2).unwrap();
            let pe = p as u32;
            let p1 = Polynomial::from_terms(
                4,
                [
                    (mono(2, &[(0, pe), (3, 1)]), 1),
                    (mono(2, &[(1, 1), (2, pe)]), 1),
                    (mono(2, &[(1, 1), (3, 1)]), p as i64),
                ],
            );
            assert_eq!(u.prod[1], p1);
        }
    }

    #[test]
    fn budget_and_cap() {
        let p = |n| Prime::new(n).unwrap();
        assert!(matches!(gen_universal_polys(p(2), 6), Err(Error::LengthCapExceeded { .. })));
        assert!(matches!(gen_universal_polys(p(7), 4), Err(Error::TermBudgetExceeded { .. })));
        assert!(matches!(gen_universal_polys(p(5), 4), Err(Error::TermBudgetExceeded { .. })));
        assert!(gen_universal_polys(p(3), 4).is_ok());
        assert!(gen_universal_polys(p(7), 3).is_ok());
        assert!(Arc::ptr_eq(&gen_universal_polys(p(3), 3).unwrap(), &gen_universal_polys(p(3), 3).unwrap()));
    }
}
