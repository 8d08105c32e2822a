//! The automorphisms `σ = τω` with `τ(x) = s x`, `τ(y) = s^{q+1} y + c`,
//! their predicted orders, and the sequences `u_i`, `v_i` describing
//! `σ^i(x) = s^i x / (u_i y + v_i)`, `σ^i(y) = (u_{i-1} y + v_{i-1}) / (u_i y + v_i)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldTower, Fq2};

/// A choice of `σ` and `δ`. Names follow the case identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// `s = 1`, even `q`, `ord δ = q - 1`.
    S41Minus,
    /// `s = 1`, even `q`, `ord δ = q + 1`.
    S41Plus,
    /// `s = 1`, `q = 2^{2k}`, `ord δ = 3`, so `c = 1`.
    Ex43,
    /// `s = 1`, `q = 4^k`, `ord δ = 5`, so `c^2 + c + 1 = 0`.
    Ex44,
    /// `s = 1`, odd `q ≠ 3`, `ord δ = q + 1`.
    S421,
    /// `s = 1`, odd `q ≠ 3`, `ord δ = 2(q - 1)`.
    S422,
    /// `s = a`, even `q`, `δ = a^{q+1}`.
    S511,
    /// `s = a`, even `q`, `δ = a`.
    S512,
    /// `s = a`, odd `q`, `δ = a^{(q+1)/2}`.
    S521,
    /// `s = a`, odd `q`, `δ = a`.
    S522,
}

pub const FAMILIES: [Family; 10] = [
    Family::S41Minus,
    Family::S41Plus,
    Family::Ex43,
    Family::Ex44,
    Family::S421,
    Family::S422,
    Family::S511,
    Family::S512,
    Family::S521,
    Family::S522,
];

impl Family {
    /// `σ` uses the scaling `x ↦ a x`.
    pub fn scaled(self) -> bool {
        matches!(self, Family::S511 | Family::S512 | Family::S521 | Family::S522)
    }

    pub fn even(self) -> bool {
        matches!(
            self,
            Family::S41Minus | Family::S41Plus | Family::Ex43 | Family::Ex44 | Family::S511 | Family::S512
        )
    }

    /// `δ = a^k`; fails when the family does not exist at this `q`.
    pub fn delta_exponent(self, q: u64) -> Result<u64> {
        let p_even = q.is_multiple_of(2);
        if self.even() != p_even {
            return Err(Error::InvalidParameter(format!("{self:?} needs {} q", if self.even() { "even" } else { "odd" })));
        }
        let n = q * q - 1;
        let k = match self {
            Family::S41Minus | Family::S511 => q + 1,
            Family::S41Plus | Family::S421 => q - 1,
            Family::Ex43 => n / 3,
            Family::Ex44 => {
                if !is_power_of_four(q) {
                    return Err(Error::InvalidParameter("c^2 + c + 1 = 0 has no root in F_q".into()));
                }
                n / 5
            }
            Family::S422 | Family::S521 => q.div_ceil(2),
            Family::S512 | Family::S522 => 1,
        };
        if matches!(self, Family::S421 | Family::S422) && q == 3 {
            return Err(Error::InvalidParameter("q = 3 is excluded".into()));
        }
        if degenerate(q, self.scaled(), k) {
            return Err(Error::InvalidParameter(format!("delta = a^{k} gives a repeated eigenvalue")));
        }
        Ok(k)
    }

    /// DSL text for `σ`.
    pub fn spec(self, q: u64) -> Result<String> {
        let k = self.delta_exponent(q)?;
        let name = if self.scaled() { "sigma5" } else { "sigma4" };
        Ok(format!("{name}(delta={})", elt(k)))
    }
}

pub(crate) fn elt(k: u64) -> String {
    match k {
        0 => "1".into(),
        1 => "a".into(),
        _ => format!("a^{k}"),
    }
}

pub(crate) fn is_power_of_four(q: u64) -> bool {
    q.is_power_of_two() && q.trailing_zeros().is_multiple_of(2)
}

/// `δ^2 = -s^{q+1}`, where the companion matrix is not diagonalizable.
fn degenerate(q: u64, scaled: bool, k: u64) -> bool {
    let n = q * q - 1;
    let mut rhs = if scaled { q + 1 } else { 0 };
    if q % 2 == 1 {
        rhs += n / 2;
    }
    (2 * k) % n == rhs % n
}

/// Predicted order of `σ`.
pub fn sigma_order(family: Family, q: u64) -> Result<u64> {
    family.delta_exponent(q)?;
    Ok(match family {
        Family::S41Minus => q - 1,
        Family::S41Plus | Family::S421 | Family::S512 => q + 1,
        Family::Ex43 => 3,
        Family::Ex44 => 5,
        Family::S422 => 2 * (q - 1),
        Family::S511 => q * q - 1,
        Family::S521 => 2 * (q + 1),
        Family::S522 => {
            if q % 4 == 1 {
                q.div_ceil(2)
            } else {
                q + 1
            }
        }
    })
}

/// Predicted vanishing of `v_{i-1}`, equivalently `σ^i(P_∞) = P_∞`.
pub fn vanishing_predicate(family: Family, q: u64, i: u64) -> Result<bool> {
    family.delta_exponent(q)?;
    Ok(match family {
        Family::S41Minus | Family::S511 => i.is_multiple_of(q - 1),
        Family::S41Plus | Family::S512 => i.is_multiple_of(q + 1),
        Family::Ex43 => i.is_multiple_of(3),
        Family::Ex44 => i.is_multiple_of(5),
        Family::S421 => {
            let n = q + 1;
            let r = i % n;
            if r == 0 {
                true
            } else if r.is_multiple_of(2) {
                r == n / 2 && q % 4 == 3
            } else {
                q % 8 == 3 && (r == n / 4 || r == 3 * n / 4)
            }
        }
        Family::S422 => {
            let n = 2 * (q - 1);
            let r = i % n;
            if r == 0 {
                true
            } else if r.is_multiple_of(2) {
                r == q - 1
            } else {
                q % 4 == 3 && (r == (q - 1) / 2 || r == 3 * (q - 1) / 2)
            }
        }
        Family::S521 => i.is_multiple_of(2),
        Family::S522 => i.is_multiple_of(sigma_order(family, q)?),
    })
}

/// `u_i` and `v_i` for `0 ≤ i < horizon`.
#[derive(Debug, Clone)]
pub struct VSequence {
    pub family: Family,
    pub delta: Fq2,
    pub c: Fq2,
    /// `s^{q+1}`: `a^{q+1}` for the scaled families, `1` otherwise.
    pub k: Fq2,
    pub u: Vec<Fq2>,
    pub v: Vec<Fq2>,
}

impl VSequence {
    pub fn new(t: &FieldTower, family: Family, horizon: usize) -> Result<Self> {
        let f = t.f2();
        let q = t.q();
        let delta = t.a_pow(family.delta_exponent(q)?);
        let k = if family.scaled() { t.a_pow(q + 1) } else { f.one() };
        let kd = f.mul(k, f.inv(delta).expect("nonzero"));
        let c = if q.is_multiple_of(2) { f.add(delta, kd) } else { f.sub(delta, kd) };
        // u_0 = k v_{-1} = 0
        let mut u = vec![f.zero()];
        let mut v = vec![f.one()];
        for i in 1..horizon {
            u.push(f.mul(k, v[i - 1]));
            v.push(f.add(f.mul(c, v[i - 1]), u[i - 1]));
        }
        u.truncate(horizon);
        v.truncate(horizon);
        Ok(VSequence { family, delta, c, k, u, v })
    }

    /// `v_i` for `i ≥ -1`.
    pub fn v_at(&self, t: &FieldTower, i: i64) -> Fq2 {
        if i < 0 {
            t.f2().zero()
        } else {
            self.v[i as usize]
        }
    }

    /// `(δ^{i+2} + (-δ)^{-i} k^{i+1}) / (δ^2 + k)`.
    pub fn closed_form(&self, t: &FieldTower, i: u64) -> Result<Fq2> {
        let f = t.f2();
        let den = f.add(f.mul(self.delta, self.delta), self.k);
        let den_inv = f.inv(den).ok_or_else(|| Error::InvalidParameter("delta^2 = -k".into()))?;
        let n = f.size() - 1;
        let neg_inv = f.inv(f.neg(self.delta)).expect("nonzero");
        let a = f.pow(self.delta, i as u128 + 2);
        let b = f.mul(f.pow(neg_inv, i as u128 % n), f.pow(self.k, i as u128 + 1));
        Ok(f.mul(f.add(a, b), den_inv))
    }

    /// `Σ_{j ≤ n/2} binom(n - j, j) c^{n - 2j} k^j`, binomials mod `p`.
    pub fn binomial(&self, t: &FieldTower, n: u64) -> Fq2 {
        let f = t.f2();
        let p = t.p();
        let mut acc = f.zero();
        for j in 0..=n / 2 {
            let b = binom_mod(n - j, j, p);
            if b == 0 {
                continue;
            }
            let term = f.mul(f.pow(self.c, (n - 2 * j) as u128), f.pow(self.k, j as u128));
            acc = f.add(acc, f.mul(f.from_fp_coords(&[b as u32]), term));
        }
        acc
    }
}

/// Binomial coefficient mod a prime via Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) % p;
            c = c * inv_mod(i + 1, p) % p;
        }
        out = out * c % p;
        n /= p;
        k /= p;
    }
    out
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}
