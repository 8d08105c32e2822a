//! `F_{q^2}` in a polynomial basis over `F_p`, optionally backed by
//! exponent/logarithm and Zech tables.

use std::collections::HashMap;

use super::prime::{least_irreducible, merge_factors, FpPoly};
use super::{Field, GfError};

/// Element of `F_{q^2}`.
///
/// The wrapped code packs the polynomial coefficients in base `p` with the
/// constant term as the most significant digit, so the derived `Ord` is the
/// lexicographic order on `(c_0, c_1, …)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fq2(pub(crate) u32);

impl Fq2 {
    pub const ZERO: Fq2 = Fq2(0);

    pub fn code(self) -> u32 {
        self.0
    }
}

/// Table-acceleration threshold on the field size.
pub(crate) const TABLE_LIMIT: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + a^k)`, odd characteristic only.
    zech: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct BaseField {
    p: u64,
    e: u32,
    q: u64,
    n: usize,
    size: u64,
    modulus: FpPoly,
    weights: Vec<u64>,
    one: Fq2,
    primitive: Fq2,
    factors: Vec<(u128, u32)>,
    tables: Option<Tables>,
}

impl BaseField {
    /// Builds `F_{p^{2e}}`; tables are used when the field has at most
    /// `2^20` elements and `accelerate` is set.
    pub fn new(p: u64, e: u32, accelerate: bool) -> Result<Self, GfError> {
        let q = p.pow(e);
        let n = 2 * e as usize;
        let size = q * q;
        let modulus = least_irreducible(n, p).ok_or(GfError::NoIrreducible(n))?;
        let weights = (0..n).map(|i| p.pow((n - 1 - i) as u32)).collect::<Vec<_>>();
        let one = Fq2(weights[0] as u32);
        let factors = merge_factors(&[q - 1, q + 1]);
        let mut field = BaseField {
            p,
            e,
            q,
            n,
            size,
            modulus,
            weights,
            one,
            primitive: one,
            factors,
            tables: None,
        };
        field.primitive = field.find_primitive().ok_or(GfError::NoIrreducible(n))?;
        if accelerate && size <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_accelerated(&self) -> bool {
        self.tables.is_some()
    }

    /// Defining polynomial over `F_p`, low to high, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The canonical primitive element `a`.
    pub fn primitive(&self) -> Fq2 {
        self.primitive
    }

    /// `a^k` for the canonical primitive `a`.
    pub fn prim_pow(&self, k: u64) -> Fq2 {
        match &self.tables {
            Some(t) => Fq2(t.exp[(k % (self.size - 1)) as usize]),
            None => self.pow(self.primitive, (k % (self.size - 1)) as u128),
        }
    }

    /// Discrete logarithm to the base of the canonical primitive.
    pub fn log(&self, x: Fq2) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[x.0 as usize] as u64),
            None => Some(self.bsgs_log(x)),
        }
    }

    /// `"0"` or `"a^k"`.
    pub fn fmt_elem(&self, x: Fq2) -> String {
        match self.log(x) {
            None => "0".to_string(),
            Some(k) => format!("a^{k}"),
        }
    }

    fn decode(&self, x: Fq2) -> Vec<u64> {
        let mut c = x.0 as u64;
        let mut out = vec![0u64; self.n];
        for i in (0..self.n).rev() {
            out[i] = c % self.p;
            c /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u64]) -> Fq2 {
        let mut c = 0u64;
        for &d in coeffs.iter().take(self.n) {
            c = c * self.p + d % self.p;
        }
        for _ in coeffs.len()..self.n {
            c *= self.p;
        }
        Fq2(c as u32)
    }

    fn add_digits(&self, a: Fq2, b: Fq2) -> Fq2 {
        if self.p == 2 {
            return Fq2(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        for &w in self.weights.iter().rev() {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * w;
            x /= self.p;
            y /= self.p;
        }
        Fq2(out as u32)
    }

    fn neg_digits(&self, a: Fq2) -> Fq2 {
        if self.p == 2 {
            return a;
        }
        let coeffs = self.decode(a);
        let negated: Vec<u64> = coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode(&negated)
    }

    fn mul_poly(&self, a: Fq2, b: Fq2) -> Fq2 {
        let (p, n) = (self.p, self.n);
        let x = self.decode(a);
        let y = self.decode(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        // reduce with the monic modulus
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..n {
                let t = c * self.modulus[i] % p;
                prod[top - n + i] = (prod[top - n + i] + p - t) % p;
            }
            prod[top] = 0;
        }
        self.encode(&prod[..n])
    }

    fn pow_poly(&self, a: Fq2, mut k: u64) -> Fq2 {
        let mut acc = self.one;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_poly(acc, b);
            }
            b = self.mul_poly(b, b);
            k >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Option<Fq2> {
        let order = self.size - 1;
        (1..self.size).map(|c| Fq2(c as u32)).find(|&x| {
            self.factors
                .iter()
                .all(|&(r, _)| self.pow_poly(x, order / r as u64) != self.one)
        })
    }

    fn build_tables(&self) -> Tables {
        let order = (self.size - 1) as usize;
        let mut exp = vec![0u32; order];
        let mut log = vec![NONE; self.size as usize];
        let mut cur = self.one;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = k as u32;
            cur = self.mul_poly(cur, self.primitive);
        }
        let zech = if self.p == 2 {
            Vec::new()
        } else {
            (0..order)
                .map(|k| {
                    let s = self.add_digits(self.one, Fq2(exp[k]));
                    log[s.0 as usize]
                })
                .collect()
        };
        Tables { exp, log, zech }
    }

    fn bsgs_log(&self, x: Fq2) -> u64 {
        let order = self.size - 1;
        let m = (order as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = self.one;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = self.mul_poly(cur, self.primitive);
        }
        let giant = self.pow_poly(self.primitive, order - m % order);
        let mut gamma = x;
        for i in 0..=m {
            if let Some(&j) = baby.get(&gamma) {
                return (i * m + j) % order;
            }
            gamma = self.mul_poly(gamma, giant);
        }
        unreachable!("every nonzero element is a power of a primitive element")
    }

    /// Disables table acceleration; used to check both paths agree.
    pub fn without_tables(&self) -> Self {
        let mut f = self.clone();
        f.tables = None;
        f
    }
}

impl Field for BaseField {
    type Elem = Fq2;

    fn zero(&self) -> Fq2 {
        Fq2(0)
    }

    fn one(&self) -> Fq2 {
        self.one
    }

    fn add(&self, a: Fq2, b: Fq2) -> Fq2 {
        if self.p == 2 {
            return Fq2(a.0 ^ b.0);
        }
        match &self.tables {
            Some(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let order = self.size - 1;
                let la = t.log[a.0 as usize] as u64;
                let lb = t.log[b.0 as usize] as u64;
                let k = (lb + order - la) % order;
                match t.zech[k as usize] {
                    NONE => Fq2(0),
                    z => Fq2(t.exp[((la + z as u64) % order) as usize]),
                }
            }
            None => self.add_digits(a, b),
        }
    }

    fn neg(&self, a: Fq2) -> Fq2 {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let la = t.log[a.0 as usize] as u64;
                Fq2(t.exp[((la + order / 2) % order) as usize])
            }
            None => self.neg_digits(a),
        }
    }

    fn mul(&self, a: Fq2, b: Fq2) -> Fq2 {
        if a.0 == 0 || b.0 == 0 {
            return Fq2(0);
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                Fq2(t.exp[(s % order) as usize])
            }
            None => self.mul_poly(a, b),
        }
    }

    fn inv(&self, a: Fq2) -> Option<Fq2> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let la = t.log[a.0 as usize] as u64;
                Some(Fq2(t.exp[((order - la) % order) as usize]))
            }
            None => Some(self.pow_poly(a, self.size - 2)),
        }
    }

    fn size(&self) -> u128 {
        self.size as u128
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn frob_q(&self, a: Fq2) -> Fq2 {
        if a.0 == 0 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size - 1;
                let la = t.log[a.0 as usize] as u64;
                Fq2(t.exp[(la * self.q % order) as usize])
            }
            None => self.pow_poly(a, self.q),
        }
    }

    fn from_base(&self, c: Fq2) -> Fq2 {
        c
    }

    fn element(&self, index: u128) -> Fq2 {
        Fq2(index as u32)
    }

    fn index_of(&self, a: Fq2) -> u128 {
        a.0 as u128
    }

    fn fp_dim(&self) -> usize {
        self.n
    }

    fn fp_coords(&self, a: Fq2) -> Vec<u32> {
        self.decode(a).into_iter().map(|c| c as u32).collect()
    }

    fn from_fp_coords(&self, coords: &[u32]) -> Fq2 {
        let c: Vec<u64> = coords.iter().map(|&c| c as u64).collect();
        self.encode(&c)
    }

    fn unit_group_factors(&self) -> &[(u128, u32)] {
        &self.factors
    }
}
