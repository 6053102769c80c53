//! Local discriminant of one level of the tower at one place, summed from
//! the conductors of the characters of the local Galois group.
//!
//! The local group is (tame part) x (p-part). A tame character `j` is
//! ramified iff `p-1` does not divide `j d`. The p-part character attached
//! to `prod u_i^(k_i)` raised to `b` sees `u_i^(b k_i)`, whose upper break is
//! `|i| p^(s-1)` when it has order `p^s`; breaks of distinct admissible
//! indices are distinct, so a product has the largest of them. A character
//! with wild break `u` has conductor `u + 1`, a ramified tame one has 1.

use num_bigint::BigInt;
use num_integer::Integer;

use super::exponent_at;
use crate::decompose::GeneratorWord;
use crate::error::Result;

pub(crate) struct LocalData {
    /// Degree of the local extension.
    pub order: BigInt,
    /// Exponent of the local discriminant, in the base normalization.
    pub disc: BigInt,
    /// Number of unramified characters, i.e. the residue degree.
    pub unramified: BigInt,
}

impl LocalData {
    pub fn ramification_index(&self) -> BigInt {
        &self.order / &self.unramified
    }
}

pub(crate) fn local_data(word: &GeneratorWord, n: u32) -> Result<LocalData> {
    let p = word.p;
    let pm1 = p.as_u64() as i64 - 1;
    let d = word.d_or_zero().rem_euclid(pm1);
    let e_t = if d == 0 { 1 } else { pm1 / d.gcd(&pm1) };
    let tame_ord = BigInt::from(e_t.lcm(&(word.c_elem().order()? as i64)));
    let tame_unram = &tame_ord / e_t;
    let tame_ram = &tame_ord - &tame_unram;

    let visible: Vec<(i64, u32)> = word
        .u
        .iter()
        .filter_map(|(&i, k)| p.valuation(exponent_at(p, k, n)).map(|v| (i, v)))
        .collect();
    let depth = visible.iter().map(|w| n - w.1).max().unwrap_or(0);
    let pb = BigInt::from(p.get());

    let mut disc = BigInt::from(0);
    let mut unramified = BigInt::from(0);
    for v in 0..=depth {
        let count = if v == depth { BigInt::from(1) } else { pb.pow(depth - v) - pb.pow(depth - v - 1) };
        let brk = visible
            .iter()
            .filter(|&&(i, vk)| i < 0 && v + vk < n)
            .map(|&(i, vk)| BigInt::from(-i) * pb.pow(n - v - vk - 1))
            .max();
        match brk {
            Some(u) => disc += &count * &tame_ord * (u + 1),
            None => {
                disc += &count * &tame_ram;
                unramified += &count * &tame_unram;
            }
        }
    }
    Ok(LocalData { order: tame_ord * pb.pow(depth), disc, unramified })
}
