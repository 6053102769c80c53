//! Textual form `2*T^-1 + 1 + T^3`, optionally followed by `+ O(T^N)`.

use std::fmt;

use super::LaurentSeries;
use crate::error::{Error, Result};
use crate::fp::Prime;

impl LaurentSeries {
    /// Parses a series; `precision` applies unless the text carries an
    /// explicit `O(T^N)` term.
    pub fn parse(p: Prime, text: &str, precision: i64) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        let mut terms = Vec::new();
        let mut prec = precision;
        for (sign, body) in split_terms(&compact)? {
            if let Some(rest) = body.strip_prefix("O(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unterminated O-term in {text:?}")))?;
                let (c, e) = parse_term(inner)?;
                if c != 1 {
                    return Err(Error::Parse(format!("bad O-term in {text:?}")));
                }
                prec = e;
                continue;
            }
            let (c, e) = parse_term(body)?;
            terms.push((e, sign * c));
        }
        Ok(LaurentSeries::from_terms(p, terms, prec))
    }
}

fn split_terms(s: &str) -> Result<Vec<(i64, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut depth = 0;
    let mut begin = 0;
    let mut sign = 1;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        i = 1;
        begin = 1;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' => {
                if begin == i {
                    return Err(Error::Parse(format!("empty term in {s:?}")));
                }
                out.push((sign, &s[begin..i]));
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                begin = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if begin >= bytes.len() {
        return Err(Error::Parse(format!("trailing operator in {s:?}")));
    }
    out.push((sign, &s[begin..]));
    Ok(out)
}

/// `c`, `T`, `T^k`, `c*T^k`, `cT^k`.
fn parse_term(t: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("bad term {t:?}"));
    match t.find('T') {
        None => Ok((t.parse().map_err(|_| bad())?, 0)),
        Some(pos) => {
            let coeff = t[..pos].trim_end_matches('*');
            let c = if coeff.is_empty() { 1 } else { coeff.parse().map_err(|_| bad())? };
            let rest = &t[pos + 1..];
            let e = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            Ok((c, e))
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, e) => write!(f, "T^{e}")?,
                (c, 1) => write!(f, "{c}*T")?,
                (c, e) => write!(f, "{c}*T^{e}")?,
            }
        }
        if f.alternate() {
            write!(f, " + O(T^{})", self.precision())?;
        }
        Ok(())
    }
}
