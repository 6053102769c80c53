//! Witt vectors over Z through their ghost components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use rand::Rng;

use super::Divergence;
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::series::LaurentSeries;
use crate::witt::polys::gen_universal_polys;
use crate::witt::WittVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerWittVector {
    pub p: u64,
    pub comps: Vec<BigInt>,
}

impl IntegerWittVector {
    pub fn new(p: u64, comps: Vec<BigInt>) -> Self {
        IntegerWittVector { p, comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// `w_n = sum_{i <= n} p^i a_i^(p^(n-i))`.
    pub fn ghost(&self, n: usize) -> BigInt {
        let p = BigInt::from(self.p);
        (0..=n).map(|i| Pow::pow(&p, i as u32) * Pow::pow(&self.comps[i], self.p.pow((n - i) as u32))).sum()
    }

    pub fn ghosts(&self) -> Vec<BigInt> {
        (0..self.len()).map(|n| self.ghost(n)).collect()
    }

    /// The integer vector with the given ghost components, if there is one.
    pub fn from_ghosts(p: u64, ghosts: &[BigInt]) -> Result<Self> {
        let pb = BigInt::from(p);
        let mut comps: Vec<BigInt> = Vec::with_capacity(ghosts.len());
        for (n, g) in ghosts.iter().enumerate() {
            let mut rest = g.clone();
            for (i, a) in comps.iter().enumerate() {
                rest -= Pow::pow(&pb, i as u32) * Pow::pow(a, p.pow((n - i) as u32));
            }
            let (q, r) = rest.div_rem(&Pow::pow(&pb, n as u32));
            if !r.is_zero() {
                return Err(Error::InexactDivision(n));
            }
            comps.push(q);
        }
        Ok(IntegerWittVector { p, comps })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let g: Vec<BigInt> = self.ghosts().iter().zip(o.ghosts()).map(|(a, b)| a + b).collect();
        Self::from_ghosts(self.p, &g)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let g: Vec<BigInt> = self.ghosts().iter().zip(o.ghosts()).map(|(a, b)| a * b).collect();
        Self::from_ghosts(self.p, &g)
    }

    fn random(p: u64, len: usize, rng: &mut impl Rng) -> Self {
        let r = (p * p) as i64;
        IntegerWittVector { p, comps: (0..len).map(|_| BigInt::from(rng.gen_range(-r..=r))).collect() }
    }

    /// Reduction mod p as a vector of constant series.
    fn constants(&self, prime: Prime) -> WittVector {
        let m = BigInt::from(self.p);
        let comps = self
            .comps
            .iter()
            .map(|a| {
                let r: i64 = a.mod_floor(&m).try_into().expect("small residue");
                LaurentSeries::monomial(prime, r, 0, 4)
            })
            .collect();
        WittVector::new(comps).expect("nonempty")
    }
}

fn constants_match(w: &WittVector, z: &IntegerWittVector) -> bool {
    let m = BigInt::from(z.p);
    w.components().iter().zip(&z.comps).all(|(c, a)| {
        let r: i64 = a.mod_floor(&m).try_into().expect("small residue");
        c.precision() > 0 && c == &LaurentSeries::monomial(w.prime(), r, 0, c.precision())
    })
}

/// Runs `trials` random pairs; returns the divergences found. Explicit
/// polynomials are compared where they fit the term budget, the series
/// circuit is compared always.
pub fn universal_poly_divergences(p: u64, len: usize, trials: usize, rng: &mut impl Rng) -> Result<Vec<Divergence>> {
    let prime = Prime::new(p)?;
    let polys = gen_universal_polys(prime, len).ok();
    let mut out = Vec::new();
    for _ in 0..trials {
        let x = IntegerWittVector::random(p, len, rng);
        let y = IntegerWittVector::random(p, len, rng);
        let (s, m) = (x.add(&y)?, x.mul(&y)?);
        let gs: Vec<BigInt> = x.ghosts().iter().zip(y.ghosts()).map(|(a, b)| a + b).collect();
        let gm: Vec<BigInt> = x.ghosts().iter().zip(y.ghosts()).map(|(a, b)| a * b).collect();
        if s.ghosts() != gs || m.ghosts() != gm {
            out.push(Divergence::new("ghost map is a ring map", "equal", format!("{x:?} {y:?}")));
        }
        if let Some(u) = &polys {
            let vals: Vec<BigInt> = x.comps.iter().chain(&y.comps).cloned().collect();
            let es: Vec<BigInt> = u.sum.iter().map(|q| q.eval_int(&vals)).collect();
            let em: Vec<BigInt> = u.prod.iter().map(|q| q.eval_int(&vals)).collect();
            if es != s.comps || em != m.comps {
                out.push(Divergence::new("universal polynomials", format!("{:?} {:?}", s.comps, m.comps), format!("{es:?} {em:?}")));
            }
        }
        let (wx, wy) = (x.constants(prime), y.constants(prime));
        if !constants_match(&wx.add(&wy)?, &s) || !constants_match(&wx.mul(&wy)?, &m) {
            out.push(Divergence::new("witt circuit mod p", format!("{:?} {:?}", s.comps, m.comps), format!("{x:?} {y:?}")));
        }
    }
    Ok(out)
}

/// True iff every trial agrees with the ghost identities.
pub fn verify_universal_polys(p: u64, len: usize, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = super::rng(seed ^ (p << 32) ^ len as u64);
    Ok(universal_poly_divergences(p, len, trials, &mut rng)?.is_empty())
}
