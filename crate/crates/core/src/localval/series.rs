use std::fmt;

use crate::gf::{BaseField, Field, Fq2};

/// Truncated Laurent series `Σ c_i t^{val+i} + O(t^{val+len})` over `F_{q^2}`.
///
/// The leading coefficient is nonzero unless the series is zero to its
/// precision, in which case `coeffs` is empty and `val` is the absolute
/// precision.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Fq2>,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}{:?} + O(t^{})", self.val, self.coeffs, self.abs_prec())
    }
}

impl LaurentSeries {
    /// `O(t^prec)`
    pub fn zero(prec: i64) -> Self {
        LaurentSeries { val: prec, coeffs: Vec::new() }
    }

    /// Coefficients from exponent `val`, known below `abs_prec`.
    pub fn new(f: &BaseField, val: i64, mut coeffs: Vec<Fq2>, abs_prec: i64) -> Self {
        let n = (abs_prec - val).max(0) as usize;
        coeffs.resize(n, f.zero());
        let mut s = LaurentSeries { val, coeffs };
        s.strip(f);
        s
    }

    /// A polynomial in `t` (constant term first), truncated at `abs_prec`.
    pub fn poly(f: &BaseField, coeffs: &[Fq2], abs_prec: i64) -> Self {
        let take = coeffs.len().min(abs_prec.max(0) as usize);
        Self::new(f, 0, coeffs[..take].to_vec(), abs_prec)
    }

    pub fn constant(f: &BaseField, c: Fq2, abs_prec: i64) -> Self {
        Self::poly(f, &[c], abs_prec)
    }

    /// `t` itself.
    pub fn t(f: &BaseField, abs_prec: i64) -> Self {
        Self::poly(f, &[f.zero(), f.one()], abs_prec)
    }

    fn strip(&mut self, f: &BaseField) {
        let lead = self.coeffs.iter().position(|&c| !f.is_zero(c));
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
            None => {
                self.val += self.coeffs.len() as i64;
                self.coeffs.clear();
            }
        }
    }

    /// Exponent below which all coefficients are known.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Number of known coefficients from the leading term on.
    pub fn rel_prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` when the series vanishes to its precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn leading(&self) -> Option<Fq2> {
        self.coeffs.first().copied()
    }

    /// Coefficient of `t^k`, if known.
    pub fn coeff(&self, f: &BaseField, k: i64) -> Option<Fq2> {
        if k >= self.abs_prec() {
            return None;
        }
        if k < self.val {
            return Some(f.zero());
        }
        Some(self.coeffs[(k - self.val) as usize])
    }

    pub fn truncate(&self, f: &BaseField, abs_prec: i64) -> Self {
        let p = abs_prec.min(self.abs_prec());
        if p <= self.val {
            return Self::zero(p);
        }
        Self::new(f, self.val, self.coeffs[..(p - self.val) as usize].to_vec(), p)
    }

    pub fn add(&self, f: &BaseField, o: &Self) -> Self {
        let prec = self.abs_prec().min(o.abs_prec());
        let val = self.val.min(o.val).min(prec);
        let coeffs = (val..prec)
            .map(|k| f.add(self.coeff(f, k).unwrap(), o.coeff(f, k).unwrap()))
            .collect();
        Self::new(f, val, coeffs, prec)
    }

    pub fn neg(&self, f: &BaseField) -> Self {
        LaurentSeries { val: self.val, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, f: &BaseField, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn scale(&self, f: &BaseField, c: Fq2) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.abs_prec());
        }
        LaurentSeries { val: self.val, coeffs: self.coeffs.iter().map(|&x| f.mul(c, x)).collect() }
    }

    pub fn mul(&self, f: &BaseField, o: &Self) -> Self {
        let val = self.val + o.val;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            // O(t^a) * (b t^v + ...) is O(t^{a+v})
            let prec = match (self.valuation(), o.valuation()) {
                (None, None) => val,
                (None, Some(v)) => self.val + v,
                (Some(v), None) => o.val + v,
                _ => unreachable!(),
            };
            return Self::zero(prec);
        }
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![f.zero(); n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in o.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, val, out, val + n as i64)
    }

    /// Multiplicative inverse; `None` when the series vanishes to precision.
    pub fn inv(&self, f: &BaseField) -> Option<Self> {
        let lead = self.leading()?;
        let n = self.coeffs.len();
        let li = f.inv(lead)?;
        let mut out = vec![f.zero(); n];
        out[0] = li;
        for k in 1..n {
            let mut acc = f.zero();
            for j in 1..=k {
                acc = f.add(acc, f.mul(self.coeffs[j], out[k - j]));
            }
            out[k] = f.neg(f.mul(acc, li));
        }
        Some(Self::new(f, -self.val, out, -self.val + n as i64))
    }

    pub fn div(&self, f: &BaseField, o: &Self) -> Option<Self> {
        Some(self.mul(f, &o.inv(f)?))
    }

    /// `s^q`, computed coefficientwise in characteristic `p`.
    pub fn frob_q(&self, f: &BaseField) -> Self {
        let q = f.q() as i64;
        if self.coeffs.is_empty() {
            return Self::zero(self.val * q);
        }
        let n = self.coeffs.len();
        let mut out = vec![f.zero(); n * q as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * q as usize] = f.frob_q(c);
        }
        Self::new(f, self.val * q, out, (self.val + n as i64) * q)
    }

    pub fn pow(&self, f: &BaseField, k: u32) -> Self {
        if k == 0 {
            return Self::constant(f, f.one(), self.rel_prec() as i64);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(f, self);
        }
        acc
    }
}
