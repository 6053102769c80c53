//! Genera of small covers of P^1, straight from Riemann-Hurwitz.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Genus of `y^(p-1) = c x^d`. Over the algebraic closure the curve splits
/// into `gcd(d, p-1)` components `y^M = c' x^(d/g)`, each a cover of degree
/// M branched over 0 and infinity only.
pub fn kummer_genus_oracle(p: u64, c: u64, d: i64) -> Result<i64> {
    if c % p == 0 {
        return Err(Error::DegenerateInput("c = 0".into()));
    }
    let n = p as i64 - 1;
    let g = d.gcd(&n);
    let g = if g == 0 { n } else { g };
    let m = n / g;
    let v = d / g;
    let branch: i64 = [v, -v].iter().map(|&w| m - m.gcd(&w)).sum();
    let chi = -2 * m + branch;
    if chi % 2 != 0 {
        return Err(Error::DegenerateInput(format!("odd Euler characteristic {chi}")));
    }
    Ok(chi / 2 + 1)
}

/// Pole order left after removing p-th powers from `sum c_e pi^e`.
fn reduced_pole_order(p: u64, mut h: BTreeMap<i64, i64>) -> i64 {
    let m = p as i64;
    loop {
        h.retain(|_, c| c.rem_euclid(m) != 0);
        let Some((&e, &c)) = h.iter().next() else { return 0 };
        if e >= 0 {
            return 0;
        }
        if e % m != 0 {
            return -e;
        }
        h.remove(&e);
        *h.entry(e / m).or_insert(0) += c;
    }
}

/// Genus of the degree (p-1)p cover of P^1 given by `y^(p-1) = x^d` followed
/// by `z^p - z = sum k_i T^i`, with `T = 1/x` and `gcd(d, p-1) = 1`. Above
/// infinity `T = pi^(p-1)` for a uniformizer `pi` of the Kummer level.
pub fn as_kummer_genus_oracle(p: u64, d: i64, h: &BTreeMap<i64, i64>) -> Result<i64> {
    let n = p as i64 - 1;
    if d.gcd(&n) != 1 {
        return Err(Error::DegenerateInput(format!("gcd({d}, {n}) != 1")));
    }
    let in_pi: BTreeMap<i64, i64> = h.iter().map(|(&e, &c)| (e * n, c)).collect();
    let m = reduced_pole_order(p, in_pi);
    if m == 0 {
        return Err(Error::DegenerateInput("Artin-Schreier part is unramified".into()));
    }
    let deg = n * p as i64;
    // tame: one place above 0 and above infinity at the Kummer level, each
    // with p places (infinity: one) above it
    let tame = p as i64 * (n - 1) * 2;
    let wild = n * (m + 1);
    let chi = -2 * deg + tame + wild;
    if chi % 2 != 0 {
        return Err(Error::DegenerateInput(format!("odd Euler characteristic {chi}")));
    }
    Ok(chi / 2 + 1)
}
