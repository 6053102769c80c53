//! Dense truncated Laurent series over Z/mZ.
//!
//! Used directly for F_p((T)) (m = p) and for the Z/p^l lifts that the
//! Witt arithmetic runs its ghost components through. A series stores the
//! coefficients from its lowest nonzero exponent up to its highest nonzero
//! exponent; everything at exponent >= `prec` is unknown.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ModSeries {
    pub(crate) m: u64,
    /// Exponent of `coeffs[0]`. Meaningless when `coeffs` is empty.
    pub(crate) start: i64,
    /// `coeffs[0]` and the last entry are nonzero, or the vector is empty.
    pub(crate) coeffs: Vec<u64>,
    pub(crate) prec: i64,
}

impl ModSeries {
    pub(crate) fn zero(m: u64, prec: i64) -> Self {
        ModSeries { m, start: 0, coeffs: Vec::new(), prec }
    }

    pub(crate) fn monomial(m: u64, c: u64, e: i64, prec: i64) -> Self {
        Self::from_raw(m, e, vec![c % m], prec)
    }

    /// Builds a series from raw coefficients starting at exponent `start`,
    /// reducing mod m, dropping terms at or beyond `prec` and normalizing.
    pub(crate) fn from_raw(m: u64, start: i64, mut coeffs: Vec<u64>, prec: i64) -> Self {
        let keep = prec.saturating_sub(start).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        for c in coeffs.iter_mut() {
            *c %= m;
        }
        let mut s = ModSeries { m, start, coeffs, prec };
        s.normalize();
        s
    }

    pub(crate) fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(0)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|&c| c != 0).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest nonzero exponent.
    pub(crate) fn valuation(&self) -> Option<i64> {
        if self.is_zero() { None } else { Some(self.start) }
    }

    /// Valuation for precision bookkeeping: a zero known below `prec` is
    /// only known to have valuation >= `prec`.
    pub(crate) fn eff_val(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Exponent one past the highest stored coefficient.
    pub(crate) fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub(crate) fn coeff(&self, e: i64) -> u64 {
        if self.is_zero() || e < self.start || e >= self.end() {
            0
        } else {
            self.coeffs[(e - self.start) as usize]
        }
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.start + k as i64, c))
    }

    pub(crate) fn with_prec(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        let mut s = self.clone();
        s.prec = prec;
        let keep = (prec - s.start).clamp(0, s.coeffs.len() as i64) as usize;
        s.coeffs.truncate(keep);
        s.normalize();
        s
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        debug_assert_eq!(self.m, o.m);
        let m = self.m;
        let prec = self.prec.min(o.prec);
        let (lo, hi) = match (self.is_zero(), o.is_zero()) {
            (true, true) => return Self::zero(m, prec),
            (true, false) => (o.start, o.end()),
            (false, true) => (self.start, self.end()),
            (false, false) => (self.start.min(o.start), self.end().max(o.end())),
        };
        let hi = hi.min(prec);
        if hi <= lo {
            return Self::zero(m, prec);
        }
        let mut out = vec![0u64; (hi - lo) as usize];
        for (e, c) in self.terms() {
            if e < hi {
                out[(e - lo) as usize] = c;
            }
        }
        for (e, c) in o.terms() {
            if e < hi {
                let slot = &mut out[(e - lo) as usize];
                *slot = if sign { (*slot + c) % m } else { (*slot + m - c) % m };
            }
        }
        Self::from_raw(m, lo, out, prec)
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub(crate) fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub(crate) fn neg(&self) -> Self {
        Self::zero(self.m, self.prec).sub(self)
    }

    pub(crate) fn scale(&self, c: u64) -> Self {
        let c = (c % self.m) as u128;
        let m = self.m as u128;
        let coeffs = self.coeffs.iter().map(|&a| ((a as u128 * c) % m) as u64).collect();
        Self::from_raw(self.m, self.start, coeffs, self.prec)
    }

    /// Multiplication by T^k.
    pub(crate) fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.saturating_add(k);
        if !s.is_zero() {
            s.start += k;
        }
        s
    }

    /// Product window: known below `min(N_a + v_b, N_b + v_a)`.
    pub(crate) fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.saturating_add(o.eff_val()).min(o.prec.saturating_add(self.eff_val()));
        self.mul_trunc(o, prec)
    }

    /// Product of the stored coefficients, truncated at `prec`; the caller
    /// vouches for the precision.
    pub(crate) fn mul_trunc(&self, o: &Self, prec: i64) -> Self {
        debug_assert_eq!(self.m, o.m);
        let m = self.m;
        if self.is_zero() || o.is_zero() {
            return Self::zero(m, prec);
        }
        let lo = self.start + o.start;
        let hi = (self.end() + o.end() - 1).min(prec);
        debug_assert!(hi - lo < 1 << 32, "product too long");
        if hi <= lo {
            return Self::zero(m, prec);
        }
        let len = (hi - lo) as usize;
        let mut acc = vec![0u128; len];
        let small = m < (1 << 31);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            let lim = (len - i).min(o.coeffs.len());
            let row = &mut acc[i..i + lim];
            if small {
                for (slot, &b) in row.iter_mut().zip(&o.coeffs[..lim]) {
                    *slot += (a * b) as u128;
                }
            } else {
                for (slot, &b) in row.iter_mut().zip(&o.coeffs[..lim]) {
                    *slot += a as u128 * b as u128;
                }
            }
            if i % 1024 == 1023 {
                for s in acc.iter_mut() {
                    *s %= m as u128;
                }
            }
        }
        let coeffs = acc.into_iter().map(|s| (s % m as u128) as u64).collect();
        Self::from_raw(m, lo, coeffs, prec)
    }

    /// Square-and-multiply, `k >= 0`. The empty product is `1 + O(T^prec)`
    /// with the operand's relative precision.
    pub(crate) fn pow(&self, mut k: u64) -> Self {
        let rel = self.prec.saturating_sub(self.eff_val());
        let mut result = ModSeries::monomial(self.m, 1, 0, rel.max(0));
        let mut base = self.clone();
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `self^k` truncated at `prec`, `k >= 1`. Partial products are kept
    /// further out when the base has a pole.
    pub(crate) fn pow_trunc(&self, mut k: u64, prec: i64) -> Self {
        debug_assert!(k >= 1);
        let pole = self.eff_val().min(0);
        let wide = prec.saturating_sub(pole.saturating_mul(k as i64 - 1));
        let mut result: Option<Self> = None;
        let mut base = self.with_prec_raw(wide);
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul_trunc(&base, wide),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_trunc(&base, wide);
            }
        }
        result.unwrap().with_prec_raw(prec)
    }

    /// Sets the precision tag, dropping stored terms at or beyond it.
    pub(crate) fn with_prec_raw(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = prec;
        let keep = (prec.saturating_sub(s.start)).clamp(0, s.coeffs.len() as i64) as usize;
        s.coeffs.truncate(keep);
        s.normalize();
        s
    }

    /// Reinterprets residues mod m as residues mod a multiple of m
    /// (canonical lift with coefficients in [0, m)).
    pub(crate) fn lift_to(&self, m2: u64) -> Self {
        debug_assert_eq!(m2 % self.m, 0);
        ModSeries { m: m2, start: self.start, coeffs: self.coeffs.clone(), prec: self.prec }
    }
}
