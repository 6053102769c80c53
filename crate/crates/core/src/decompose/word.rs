//! Canonical generator words and their JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpElement, Prime};

/// An element of Z_p known modulo `p^mod_exp`, stored as its residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PadicExponent {
    pub value: u64,
    pub mod_exp: u32,
}

impl PadicExponent {
    /// Reduces `value` into `[0, p^mod_exp)`.
    pub fn new(p: Prime, value: i128, mod_exp: u32) -> Self {
        let m = p.pow(mod_exp) as i128;
        PadicExponent { value: value.rem_euclid(m) as u64, mod_exp }
    }

    /// `v_p` of the exponent; `None` means "at least `mod_exp`".
    pub fn valuation(&self, p: Prime) -> Option<u32> {
        p.valuation(self.value as u128)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// `[c T^d] * prod u_i^(k_i) * prod v_i^(k'_i)` with `u_i = 1 + V[T^i]` and,
/// for p = 2, `v_i = 1 + V^2[T^i]`. Indices are `0` or negative and prime
/// to p; zero exponents are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorWord {
    pub p: Prime,
    pub c: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default)]
    pub u: BTreeMap<i64, PadicExponent>,
    #[serde(default)]
    pub v: BTreeMap<i64, PadicExponent>,
}

impl GeneratorWord {
    pub fn trivial(p: Prime) -> Self {
        GeneratorWord { p, c: 1, d: None, u: BTreeMap::new(), v: BTreeMap::new() }
    }

    pub fn c_elem(&self) -> FpElement {
        FpElement::new(self.p, self.c as i64)
    }

    /// True when the class is trivial.
    pub fn is_trivial(&self) -> bool {
        self.c == 1 && self.d.is_none() && self.u.is_empty() && self.v.is_empty()
    }

    /// Exponent of `T` in the Teichmuller part, 0 when absent.
    pub fn d_or_zero(&self) -> i64 {
        self.d.map_or(0, i64::from)
    }

    /// Checks the canonical-form constraints.
    pub fn validate(&self) -> Result<()> {
        let p = self.p.get();
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.c == 0 || self.c >= p {
            return bad(format!("c = {} is not a nonzero residue mod {p}", self.c));
        }
        match self.d {
            Some(d) if d == 0 || d > p - 1 => return bad(format!("d = {d} outside (0, {}]", p - 1)),
            None if self.c != 1 => return bad("d is absent but c != 1".into()),
            _ => {}
        }
        if p != 2 && !self.v.is_empty() {
            return bad("v exponents only exist for p = 2".into());
        }
        for (name, map) in [("u", &self.u), ("v", &self.v)] {
            for (&i, k) in map {
                if i > 0 || (i < 0 && i % p as i64 == 0) {
                    return bad(format!("{name}-index {i} is not 0 or negative and prime to {p}"));
                }
                if k.value == 0 || k.value as u128 >= self.p.pow(k.mod_exp) {
                    return bad(format!("{name}-exponent at {i} is not a nonzero residue mod {p}^{}", k.mod_exp));
                }
            }
        }
        Ok(())
    }

    /// Length of the Witt vectors that see exactly this word's precision.
    pub fn natural_length(&self) -> usize {
        let from_u = self.u.values().map(|k| k.mod_exp as usize + 1).max();
        let from_v = self.v.values().map(|k| k.mod_exp as usize + 2).max();
        from_u.max(from_v).unwrap_or(1).max(if self.v.is_empty() { 1 } else { 3 })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("words serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w: GeneratorWord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        w.validate()?;
        Ok(w)
    }
}
