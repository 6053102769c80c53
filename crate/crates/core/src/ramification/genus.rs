//! Genus sequences of towers given by generator words at rational places.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::local::local_data;
use super::stability::{stability_check, Stability, DEFAULT_N_MIN};
use super::{different_combined, int, kummer_different, kummer_ramification, ppow, ratio_str, wild_at, Rational};
use crate::decompose::GeneratorWord;
use crate::error::{Error, Result};
use crate::fp::Prime;

/// A rational point of P^1 over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlaceRepr", into = "PlaceRepr")]
pub enum Place {
    Finite(u32),
    Infinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PlaceRepr {
    Num(u32),
    Text(String),
}

impl TryFrom<PlaceRepr> for Place {
    type Error = String;

    fn try_from(r: PlaceRepr) -> std::result::Result<Self, String> {
        match r {
            PlaceRepr::Num(x) => Ok(Place::Finite(x)),
            PlaceRepr::Text(s) if s == "inf" => Ok(Place::Infinity),
            PlaceRepr::Text(s) => s.parse().map(Place::Finite).map_err(|_| format!("bad place {s:?}")),
        }
    }
}

impl From<Place> for PlaceRepr {
    fn from(p: Place) -> Self {
        match p {
            Place::Finite(x) => PlaceRepr::Num(x),
            Place::Infinity => PlaceRepr::Text("inf".into()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(x) => write!(f, "{x}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// The local class at one place, written in the uniformizer `X - x`
/// (or `1/X` at infinity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceSpec {
    pub at: Place,
    pub word: GeneratorWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    PaperLiteral,
    FullRh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeChoice {
    PaperLiteral,
    FullRh,
    #[default]
    Both,
}

impl ModeChoice {
    pub fn modes(self) -> Vec<Mode> {
        match self {
            ModeChoice::PaperLiteral => vec![Mode::PaperLiteral],
            ModeChoice::FullRh => vec![Mode::FullRh],
            ModeChoice::Both => vec![Mode::PaperLiteral, Mode::FullRh],
        }
    }
}

pub const MAX_LEVEL: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub p: Prime,
    pub places: Vec<PlaceSpec>,
    pub n_max: u32,
    #[serde(default)]
    pub mode: ModeChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
}

impl TowerSpec {
    pub fn new(p: Prime, places: Vec<PlaceSpec>, n_max: u32) -> Self {
        TowerSpec { p, places, n_max, mode: ModeChoice::Both, precision: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TowerSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.places.is_empty() {
            return bad("no places".into());
        }
        if self.n_max > MAX_LEVEL {
            return bad(format!("n_max = {} exceeds {MAX_LEVEL}", self.n_max));
        }
        let mut seen = BTreeSet::new();
        for pl in &self.places {
            if pl.word.p != self.p {
                return Err(Error::WrongPrime(format!("word at {} is over {}", pl.at, pl.word.p)));
            }
            if let Place::Finite(x) = pl.at {
                if x >= self.p.get() {
                    return bad(format!("place {x} is not a residue mod {}", self.p));
                }
            }
            if !seen.insert(pl.at) {
                return bad(format!("place {} listed twice", pl.at));
            }
            pl.word.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceDifferents {
    pub at: Place,
    /// Added to balance the divisor of the level-0 function.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub implicit: bool,
    #[serde(serialize_with = "ratio_str::many")]
    pub values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub mode: Mode,
    #[serde(rename = "genusSeq", serialize_with = "ratio_str::many")]
    pub genus_seq: Vec<Rational>,
    #[serde(rename = "differentSeq")]
    pub different_seq: Vec<PlaceDifferents>,
    pub stability: Option<Stability>,
    #[serde(rename = "integralityFlags")]
    pub integrality_flags: Vec<bool>,
}

impl GenusReport {
    /// `2 g_n - 2` for every level.
    pub fn euler_seq(&self) -> Vec<Rational> {
        self.genus_seq.iter().map(|g| g * int(2) - int(2)).collect()
    }
}

/// Genus sequence over P^1.
pub fn genus_sequence(spec: &TowerSpec, mode: Mode) -> Result<GenusReport> {
    genus_sequence_with_base(spec, mode, 0)
}

/// Genus sequence over a base curve of genus `g_base`, with the places
/// treated as if they were the only ramified ones.
pub fn genus_sequence_with_base(spec: &TowerSpec, mode: Mode, g_base: u32) -> Result<GenusReport> {
    spec.validate()?;
    let p = spec.p;
    if p.get() == 2 {
        return Err(Error::UnsupportedPrime("genus formulas need p > 2".into()));
    }
    let places = match mode {
        Mode::PaperLiteral => spec.places.iter().map(|s| (s.clone(), false)).collect(),
        Mode::FullRh => balanced(spec)?,
    };
    let base = int(2 * g_base as i128 - 2);
    let mut euler = Vec::new();
    let mut diffs: Vec<Vec<Rational>> = vec![Vec::new(); places.len()];
    for n in 0..=spec.n_max {
        let (chi, d) = match mode {
            Mode::PaperLiteral => paper_literal_level(p, &places, n, &base)?,
            Mode::FullRh => full_rh_level(&places, n, &base)?,
        };
        euler.push(chi);
        for (slot, v) in diffs.iter_mut().zip(d) {
            slot.push(v);
        }
    }
    let genus_seq: Vec<Rational> = euler.iter().map(|e| (e + int(2)) / int(2)).collect();
    let integrality_flags = genus_seq.iter().map(|g| !g.is_integer()).collect();
    let words: Vec<PlaceSpec> = places.iter().map(|(s, _)| s.clone()).collect();
    let stability = match stability_check(p, &genus_seq, &words, DEFAULT_N_MIN) {
        Ok(s) => s,
        Err(Error::InsufficientData(_)) => None,
        Err(e) => return Err(e),
    };
    let different_seq = places
        .iter()
        .zip(diffs)
        .map(|((s, implicit), values)| PlaceDifferents { at: s.at, implicit: *implicit, values })
        .collect();
    Ok(GenusReport { mode, genus_seq, different_seq, stability, integrality_flags })
}

/// The listed places plus, when the Teichmuller exponents do not sum to a
/// multiple of p-1, the place 0 carrying the balancing tame ramification.
fn balanced(spec: &TowerSpec) -> Result<Vec<(PlaceSpec, bool)>> {
    let pm1 = spec.p.get() as i64 - 1;
    let total: i64 = spec.places.iter().map(|s| s.word.d_or_zero()).sum();
    let r = total.rem_euclid(pm1);
    let mut out: Vec<(PlaceSpec, bool)> = spec.places.iter().map(|s| (s.clone(), false)).collect();
    if r != 0 {
        if spec.places.iter().any(|s| s.at == Place::Finite(0)) {
            return Err(Error::InvalidSpec(format!(
                "Teichmuller exponents sum to {total}, not a multiple of {pm1}, and place 0 is taken"
            )));
        }
        let mut word = GeneratorWord::trivial(spec.p);
        word.d = Some((pm1 - r) as u32);
        out.push((PlaceSpec { at: Place::Finite(0), word }, true));
    }
    Ok(out)
}

fn paper_literal_level(
    p: Prime,
    places: &[(PlaceSpec, bool)],
    n: u32,
    base: &Rational,
) -> Result<(Rational, Vec<Rational>)> {
    let pm1 = p.get() as i64 - 1;
    let kummer = places.iter().any(|(s, _)| s.word.c != 1 || s.word.d.is_some());
    let deg0 = if kummer { pm1 } else { 1 };
    let mut e1 = 1u64;
    let mut nc: Option<u32> = None;
    let mut diffs = Vec::new();
    for (s, _) in places {
        let w = &s.word;
        e1 = e1.lcm(&kummer_ramification(w.c_elem(), w.d_or_zero())?.0);
        if !wild_at(w, n).is_empty() {
            let nu = super::ramification_profile(w, n)?.nu;
            nc = Some(nc.map_or(nu, |c| c.min(nu)));
        }
        diffs.push(match different_combined(w, n) {
            Ok(v) => v,
            Err(Error::NoWildPart) => ppow(p, n as i64) * int(kummer_different(w.c_elem(), w.d_or_zero())? as i128),
            Err(e) => return Err(e),
        });
    }
    let nc = nc.unwrap_or(0).min(n);
    let factor = int(deg0 as i128) / int(e1 as i128) * ppow(p, nc as i64);
    let rhs = int(deg0 as i128) * ppow(p, n as i64) * base + diffs.iter().sum::<Rational>();
    Ok((rhs / factor, diffs))
}

fn full_rh_level(places: &[(PlaceSpec, bool)], n: u32, base: &Rational) -> Result<(Rational, Vec<Rational>)> {
    let local = places.iter().map(|(s, _)| local_data(&s.word, n)).collect::<Result<Vec<_>>>()?;
    let group = local.iter().fold(BigInt::one(), |g, l| g.lcm(&l.order));
    let e_all = local.iter().fold(BigInt::one(), |g, l| g.lcm(&l.ramification_index()));
    let constants = &group / &e_all;
    let mut deg = BigInt::zero();
    for l in &local {
        deg += &group / &l.order * &l.disc;
    }
    let chi = (Rational::from_integer(group) * base + Rational::from_integer(deg)) / Rational::from_integer(constants);
    let diffs = local.iter().map(|l| Rational::new(l.disc.clone(), l.unramified.clone())).collect();
    Ok((chi, diffs))
}
