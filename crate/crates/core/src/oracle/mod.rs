//! Independent checks of the arithmetic, decomposition and genus code.
//!
//! Each suite compares a library value with a value computed here by other
//! means and reports every mismatch as a [`Divergence`]. Mismatches that
//! are known and explained are marked `documented` and do not fail a suite.

mod curves;
mod ghost;
mod local;

pub use curves::{as_kummer_genus_oracle, kummer_genus_oracle};
pub use ghost::{universal_poly_divergences, verify_universal_polys, IntegerWittVector};
pub use local::{as_conductor_oracle, newton_slopes, recurrence_valuation_oracle, ValuedUnknown, RECURRENCE_DEPTH_CAP};

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::decompose::{q_solve, reconstruct, reduce_mod_q, GeneratorWord, PadicExponent};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::ramification::{
    different_single_u, genus_sequence, int, y_valuation, Mode, Place, PlaceSpec, TowerSpec,
};
use crate::series::LaurentSeries;
use crate::witt::{WittVector, EXACT};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divergence {
    pub claim: String,
    pub expected: Value,
    pub got: Value,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub documented: bool,
}

impl Divergence {
    pub fn new(claim: impl Into<String>, expected: impl Serialize, got: impl Serialize) -> Self {
        Divergence {
            claim: claim.into(),
            expected: serde_json::to_value(expected).expect("serializable"),
            got: serde_json::to_value(got).expect("serializable"),
            documented: false,
        }
    }

    fn documented(mut self) -> Self {
        self.documented = true;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub divergences: Vec<Divergence>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.divergences.iter().all(|d| d.documented)
    }
}

pub const SUITES: [&str; 8] = ["ghost", "class", "roundtrip", "solvability", "conductor", "recurrence", "kummer", "genus"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `x` and `y` differ by an element of `q W(K)^x`.
pub fn brute_force_class_equal(x: &WittVector, y: &WittVector, precision: i64) -> Result<bool> {
    Ok(q_solve(&x.div(y)?, precision)?.is_some())
}

/// A unit whose first component has valuation in `[-1, 1]`; the other
/// components are Laurent polynomials supported in `[-3, 5]`.
pub fn random_unit(rng: &mut impl Rng, p: Prime, len: usize, precision: i64) -> WittVector {
    let m = p.get() as i64;
    let poly = |rng: &mut dyn rand::RngCore, lo: i64, hi: i64| {
        let terms: Vec<(i64, i64)> = (lo..=hi).map(|e| (e, rng.gen_range(0..m))).collect();
        LaurentSeries::from_terms(p, terms, precision)
    };
    let v = rng.gen_range(-1..=1);
    let lead = LaurentSeries::monomial(p, rng.gen_range(1..m), v, precision);
    let mut comps = vec![lead.add(&poly(rng, v + 1, v + 4))];
    for _ in 1..len {
        comps.push(poly(rng, -3, 5));
    }
    WittVector::new(comps).expect("nonempty")
}

pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport> {
    let (name, (checks, divergences)) = match name {
        "ghost" => ("ghost", ghost_suite(seed, trials)?),
        "class" => ("class", class_suite(seed)?),
        "roundtrip" => ("roundtrip", roundtrip_suite(seed, 200, 48)?),
        "solvability" => ("solvability", solvability_suite()?),
        "conductor" => ("conductor", conductor_suite()?),
        "recurrence" => ("recurrence", recurrence_suite()?),
        "kummer" => ("kummer", kummer_suite()?),
        "genus" => ("genus", genus_suite()?),
        other => return Err(Error::Parse(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport { name, checks, divergences })
}

pub fn run_all(seed: u64, trials: usize) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, seed, trials)).collect()
}

type Outcome = (usize, Vec<Divergence>);

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("small prime")
}

fn ghost_suite(seed: u64, trials: usize) -> Result<Outcome> {
    let mut out = Vec::new();
    let mut checks = 0;
    for p in [2u64, 3, 5, 7] {
        for len in 1..=4 {
            let mut r = rng(seed ^ (p << 32) ^ len as u64);
            out.extend(universal_poly_divergences(p, len, trials, &mut r)?);
            checks += trials;
        }
    }
    Ok((checks, out))
}

fn class_suite(seed: u64) -> Result<Outcome> {
    let p = prime(3);
    let prec = 40;
    let u = |i: i64| WittVector::one_plus_v(1, &LaurentSeries::monomial(p, 1, i, prec), 2);
    let mut out = Vec::new();
    let mut checks = 0;
    let mut expect = |claim: &str, want: bool, got: bool, out: &mut Vec<Divergence>| {
        checks += 1;
        if want != got {
            out.push(Divergence::new(claim, want, got));
        }
    };
    expect("class of a unit is itself", true, brute_force_class_equal(&u(-1), &u(-1), prec)?, &mut out);
    expect("u_-3 and u_-1 share a class", true, brute_force_class_equal(&u(-3), &u(-1), prec)?, &mut out);
    let one = WittVector::one(p, 2, EXACT);
    expect("u_-1 is not a q-image", false, brute_force_class_equal(&u(-1), &one, prec)?, &mut out);

    let mut r = rng(seed);
    let mut sample = Vec::new();
    for _ in 0..4 {
        let b = random_unit(&mut r, p, 2, prec);
        let z = WittVector::new(vec![
            LaurentSeries::from_terms(p, [(0, 1), (1, r.gen_range(0..3))], prec),
            LaurentSeries::from_terms(p, [(r.gen_range(0..4), 1)], prec),
        ])?;
        sample.push(b.mul(&z.q_map()?)?);
        sample.push(b);
    }
    let n = sample.len();
    let mut rel = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            rel[a][b] = brute_force_class_equal(&sample[a], &sample[b], prec)?;
        }
    }
    for a in 0..n {
        expect("reflexive", true, rel[a][a], &mut out);
        if a % 2 == 0 {
            expect("x q(z) shares the class of x", true, rel[a][a + 1], &mut out);
        }
        for b in 0..n {
            expect("symmetric", rel[a][b], rel[b][a], &mut out);
            for c in 0..n {
                if rel[a][b] && rel[b][c] {
                    expect("transitive", true, rel[a][c], &mut out);
                }
            }
        }
    }
    Ok((checks, out))
}

/// Class equality of `x` with the reconstruction of its word, and
/// idempotence of the reduction on the reconstruction.
pub fn roundtrip_suite(seed: u64, count: usize, precision: i64) -> Result<Outcome> {
    let p = prime(3);
    let mut r = rng(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let x = random_unit(&mut r, p, 3, precision);
        let w = reduce_mod_q(&x, precision)?;
        let back = reconstruct(&w, x.len())?;
        if !brute_force_class_equal(&x, &back, precision)? {
            out.push(Divergence::new("reconstructed word is in the class of x", true, x.to_string()));
        }
        let again = reduce_mod_q(&back, EXACT)?;
        if again != w {
            out.push(Divergence::new("reduction is idempotent", w, again));
        }
    }
    Ok((2 * count, out))
}

fn solvability_suite() -> Result<Outcome> {
    let mut out = Vec::new();
    let mut checks = 0;
    for p in [3u64, 5] {
        let pr = prime(p);
        let solvable = |i: i64| -> Result<bool> {
            let x = WittVector::one_plus_v(1, &LaurentSeries::monomial(pr, 1, i, 60), 2);
            Ok(q_solve(&x, 60)?.is_some())
        };
        for (i, want) in [(1, true), (2, true), (3, true), (5, true), (0, false), (-1, false), (-2, false), (-4, false)] {
            checks += 1;
            let got = solvable(i)?;
            if got != want {
                out.push(Divergence::new(format!("q(y) = u_{i} solvable, p={p}"), want, got));
            }
        }
        for i in [-(p as i64), -(p as i64 * p as i64)] {
            checks += 1;
            let got = solvable(i)?;
            let claim = format!("p | i < 0 makes q(y) = u_{i} solvable, p={p}");
            if got {
                out.push(Divergence::new(format!("q(y) = u_{i} unsolvable, p={p}"), false, got));
            } else {
                // u_{-p m} is congruent to u_{-m}, which is obstructed
                out.push(Divergence::new(claim, true, got).documented());
            }
        }
    }
    Ok((checks, out))
}

fn conductor_suite() -> Result<Outcome> {
    let mut out = Vec::new();
    let mut checks = 0;
    for p in [3u64, 5, 7] {
        for i in [-1i64, -2, -4, -5].into_iter().filter(|i| i % p as i64 != 0) {
            checks += 1;
            let classical = int((p as i128 - 1) * (1 - i as i128));
            let oracle = as_conductor_oracle(p, i)?;
            let k = PadicExponent::new(prime(p), 1, 1);
            let formula = different_single_u(prime(p), i, &k, 1, 0)?;
            if formula != classical || int(oracle as i128) != classical {
                out.push(Divergence::new(
                    format!("level-1 different of u_{i}, p={p}"),
                    classical.to_string(),
                    format!("formula {formula}, filtration {oracle}"),
                ));
            }
        }
    }
    Ok((checks, out))
}

fn recurrence_suite() -> Result<Outcome> {
    let mut out = Vec::new();
    let mut checks = 0;
    for p in [3u64, 5] {
        for i in [-1i64, -2] {
            for n in 1..=3 {
                checks += 1;
                let oracle = recurrence_valuation_oracle(p, i, n)?;
                let formula = y_valuation(prime(p), i, n, 0)?;
                if oracle != formula {
                    out.push(Divergence::new(format!("valuation of y_{n} for u_{i}, p={p}"), oracle, formula));
                }
            }
        }
    }
    Ok((checks, out))
}

fn tower(p: u64, word: GeneratorWord, n_max: u32) -> TowerSpec {
    TowerSpec::new(prime(p), vec![PlaceSpec { at: Place::Infinity, word }], n_max)
}

fn kummer_suite() -> Result<Outcome> {
    let mut out = Vec::new();
    let mut checks = 0;
    for p in [3u64, 5, 7] {
        for c in 1..p as u32 {
            for d in 1..p as u32 {
                checks += 1;
                let word = GeneratorWord { c, d: Some(d), ..GeneratorWord::trivial(prime(p)) };
                let g = genus_sequence(&tower(p, word, 0), Mode::FullRh)?.genus_seq[0].clone();
                let oracle = kummer_genus_oracle(p, c as u64, d as i64)?;
                if g != int(oracle as i128) {
                    out.push(Divergence::new(format!("level-0 genus, p={p} c={c} d={d}"), oracle, g.to_string()));
                }
            }
        }
    }
    Ok((checks, out))
}

fn genus_suite() -> Result<Outcome> {
    let mut out = Vec::new();
    let mut checks = 0;
    for p in [3u64, 5, 7] {
        let pr = prime(p);
        let index_sets: Vec<Vec<i64>> = vec![vec![-1], vec![-2], vec![-1, -2], vec![-4, -1]];
        for d in (1..p as i64).filter(|d| num_integer::gcd(*d, p as i64 - 1) == 1) {
            for idx in &index_sets {
                for k in [1i64, 2] {
                    let u: BTreeMap<i64, PadicExponent> =
                        idx.iter().map(|&i| (i, PadicExponent::new(pr, k as i128, 4))).collect();
                    let word = GeneratorWord { d: Some(d as u32), u, ..GeneratorWord::trivial(pr) };
                    let r = genus_sequence(&tower(p, word, 1), Mode::FullRh)?;
                    let h: BTreeMap<i64, i64> = idx.iter().map(|&i| (i, k)).collect();
                    let want = [kummer_genus_oracle(p, 1, d)?, as_kummer_genus_oracle(p, d, &h)?];
                    for (n, w) in want.iter().enumerate() {
                        checks += 1;
                        if r.genus_seq[n] != int(*w as i128) {
                            out.push(Divergence::new(
                                format!("level-{n} genus, p={p} d={d} u={idx:?}^{k}"),
                                w,
                                r.genus_seq[n].to_string(),
                            ));
                        }
                    }
                }
            }
        }
    }
    // the closed form at level 1 omits the tame place over 0
    let word = GeneratorWord {
        d: Some(1),
        u: BTreeMap::from([(-1, PadicExponent::new(prime(3), 1, 4))]),
        ..GeneratorWord::trivial(prime(3))
    };
    let lit = genus_sequence(&tower(3, word, 1), Mode::PaperLiteral)?;
    let oracle = as_kummer_genus_oracle(3, 1, &BTreeMap::from([(-1, 1)]))?;
    checks += 1;
    if lit.genus_seq[1] != int(oracle as i128) {
        out.push(Divergence::new("paper-literal level-1 genus, p=3 d=1 u_-1", oracle, lit.genus_seq[1].to_string()).documented());
    }
    Ok((checks, out))
}
