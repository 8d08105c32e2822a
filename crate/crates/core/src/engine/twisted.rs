//! Twisted point counts `T(σ) = #{P ∈ H(F̄) : σ(P) = P^{(q^2)}}`.
//!
//! Rational places of `H^G` are the Frobenius-stable `G`-orbits of points,
//! and there are `(1/|G|) Σ_σ T(σ)` of them. By the Lefschetz trace formula
//! and `Frob = -q` on `H^1`, `T(σ) = (q+1)^2 - q Λ(σ)` for `σ ≠ 1`, where
//! `Λ(σ)` is the sum of `i_P(σ)` over the geometric fixed points of `σ`.
//! [`twisted_point_count`] counts the same set directly over `F_{q^{2k}}`,
//! `k = ord(σ)`, which is feasible for small `q`.

use crate::autgrp::Aut;
use crate::curve::{rational_places, Place};
use crate::engine::deg3::pointwise_fixed;
use crate::error::{Error, Result};
use crate::gf::poly::{poly_gcd, poly_powmod, poly_sub};
use crate::gf::{element_order, nullspace, BaseField, Field, FieldTower, Fq2};
use crate::localval::{default_horizon, expand_at, i_value, IValue};

/// Largest element order handled by [`twisted_point_count`].
pub const MAX_TWIST_ORDER: u64 = 64;

/// `F_{q^{2k}}` as `F_{q^2}[θ]/(m)`, elements as coefficient vectors.
struct ExtK<'a> {
    f: &'a BaseField,
    k: usize,
    m: Vec<Fq2>,
    /// `(θ^q)^i` for `i < k`
    theta_q: Vec<Vec<Fq2>>,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut r = 2;
    while r * r <= n {
        if n.is_multiple_of(r) {
            out.push(r);
            while n.is_multiple_of(r) {
                n /= r;
            }
        }
        r += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic `m` of degree `k` over `F_Q`.
fn is_irreducible(f: &BaseField, m: &[Fq2], k: usize) -> bool {
    let qq = f.size();
    let x = vec![f.zero(), f.one()];
    let mut powers = vec![x.clone()];
    for _ in 0..k {
        let next = poly_powmod(f, powers.last().unwrap(), qq, m);
        powers.push(next);
    }
    if poly_sub(f, &powers[k], &x).iter().any(|&c| !f.is_zero(c)) {
        return false;
    }
    prime_divisors(k as u64).into_iter().all(|r| {
        let d = poly_sub(f, &powers[k / r as usize], &x);
        poly_gcd(f, m, &d).len() == 1
    })
}

impl<'a> ExtK<'a> {
    fn new(f: &'a BaseField, k: usize) -> Self {
        let qq = f.size();
        let mut n: u128 = 0;
        let m = loop {
            let mut m = Vec::with_capacity(k + 1);
            let mut rest = n;
            for _ in 0..k {
                m.push(f.element(rest % qq));
                rest /= qq;
            }
            m.push(f.one());
            n += 1;
            if k == 1 || (!f.is_zero(m[0]) && is_irreducible(f, &m, k)) {
                break m;
            }
        };
        let mut e = ExtK { f, k, m, theta_q: Vec::new() };
        let mut theta = vec![f.zero(); k];
        if k > 1 {
            theta[1] = f.one();
        }
        let tq = e.pow(&theta, f.q() as u128);
        let mut acc = e.one();
        for _ in 0..k {
            e.theta_q.push(acc.clone());
            acc = e.mul(&acc, &tq);
        }
        e
    }

    fn zero(&self) -> Vec<Fq2> {
        vec![self.f.zero(); self.k]
    }

    fn one(&self) -> Vec<Fq2> {
        let mut v = self.zero();
        v[0] = self.f.one();
        v
    }

    fn add(&self, a: &[Fq2], b: &[Fq2]) -> Vec<Fq2> {
        a.iter().zip(b).map(|(&x, &y)| self.f.add(x, y)).collect()
    }

    fn scale(&self, c: Fq2, a: &[Fq2]) -> Vec<Fq2> {
        a.iter().map(|&x| self.f.mul(c, x)).collect()
    }

    fn mul(&self, a: &[Fq2], b: &[Fq2]) -> Vec<Fq2> {
        let f = self.f;
        let k = self.k;
        let mut r = vec![f.zero(); 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(x, y));
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = r[i];
            if f.is_zero(c) {
                continue;
            }
            for j in 0..k {
                r[i - k + j] = f.sub(r[i - k + j], f.mul(c, self.m[j]));
            }
        }
        r.truncate(k);
        r
    }

    fn pow(&self, a: &[Fq2], mut e: u128) -> Vec<Fq2> {
        let mut acc = self.one();
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn frob_q(&self, a: &[Fq2]) -> Vec<Fq2> {
        let mut r = self.zero();
        for (i, &c) in a.iter().enumerate() {
            if !self.f.is_zero(c) {
                r = self.add(&r, &self.scale(self.f.frob_q(c), &self.theta_q[i]));
            }
        }
        r
    }

    fn frob_q2(&self, a: &[Fq2]) -> Vec<Fq2> {
        self.frob_q(&self.frob_q(a))
    }

    fn element(&self, mut idx: u128) -> Vec<Fq2> {
        let qq = self.f.size();
        (0..self.k)
            .map(|_| {
                let c = self.f.element(idx % qq);
                idx /= qq;
                c
            })
            .collect()
    }

    /// An element whose class generates `F^* / (F^*)^{q^2 - 1}`, i.e. whose
    /// norm to `F_{q^2}` is primitive.
    fn class_generator(&self) -> Vec<Fq2> {
        let n = self.f.size() - 1;
        (1u128..)
            .map(|i| self.element(i))
            .find(|mu| {
                let mut norm = mu.clone();
                let mut c = mu.clone();
                for _ in 1..self.k {
                    c = self.frob_q2(&c);
                    norm = self.mul(&norm, &c);
                }
                norm[1..].iter().all(|&x| self.f.is_zero(x))
                    && element_order(self.f, norm[0]) == Ok(n)
            })
            .expect("a generator exists")
    }

    fn on_curve(&self, p: &[Vec<Fq2>; 3]) -> bool {
        let [x, y, z] = p;
        let lhs = self.add(&self.mul(&self.frob_q(y), z), &self.mul(y, &self.frob_q(z)));
        let rhs = self.mul(&self.frob_q(x), x);
        lhs == rhs
    }
}

/// `T(σ)` by solving `S P = λ P^{(q^2)}` over `F_{q^{2k}}` for every class
/// of `λ`; the solution set is `F_{q^2}`-linear in `P`.
pub fn twisted_point_count(t: &FieldTower, s: &Aut) -> Result<u64> {
    let k = s.order(t);
    if k > MAX_TWIST_ORDER {
        return Err(Error::BudgetExceeded { size: k as u128, budget: MAX_TWIST_ORDER as u128 });
    }
    let f = t.f2();
    let k = k as usize;
    let ext = ExtK::new(f, k);
    let qq = f.size();
    let gen = ext.class_generator();
    let m = s.matrix();
    let n = 3 * k;
    let basis: Vec<Vec<Fq2>> = (0..k)
        .map(|i| {
            let mut v = ext.zero();
            v[i] = f.one();
            v
        })
        .collect();
    let frob_basis: Vec<Vec<Fq2>> = basis.iter().map(|b| ext.frob_q2(b)).collect();
    let mut lambda = ext.one();
    let mut count = 0u64;
    for _ in 0..qq - 1 {
        let mut rows = vec![vec![f.zero(); n]; n];
        for c in 0..3 {
            for i in 0..k {
                for r in 0..3 {
                    let mut img = ext.scale(f.neg(m[r][c]), &basis[i]);
                    if r == c {
                        img = ext.add(&img, &ext.mul(&lambda, &frob_basis[i]));
                    }
                    for (j, &v) in img.iter().enumerate() {
                        rows[k * r + j][k * c + i] = v;
                    }
                }
            }
        }
        let ker = nullspace(f, &rows, n);
        for lead in 0..ker.len() {
            let free = (ker.len() - 1 - lead) as u32;
            for idx in 0..qq.pow(free) {
                let mut v = ker[lead].clone();
                let mut rest = idx;
                for b in &ker[lead + 1..] {
                    let c = f.element(rest % qq);
                    rest /= qq;
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
                let p = [v[..k].to_vec(), v[k..2 * k].to_vec(), v[2 * k..].to_vec()];
                if ext.on_curve(&p) {
                    count += 1;
                }
            }
        }
        lambda = ext.mul(&lambda, &gen);
    }
    Ok(count)
}

/// `Λ(σ) = Σ i_P(σ)` over the geometric fixed points of `σ ≠ 1`.
pub fn lefschetz_number(t: &FieldTower, s: &Aut) -> Result<u64> {
    if s.is_identity(t) {
        return Err(Error::IdentityValue);
    }
    let mut total = 0;
    for p in rational_places(t) {
        if s.apply_place(t, &p) != p {
            continue;
        }
        let frame = expand_at(t, &p, default_horizon(t.q()))?;
        match i_value(t, &p, s, &frame)? {
            IValue::Value(v) => total += v,
            IValue::NotFixed => unreachable!("fixed place"),
        }
    }
    let d3 = pointwise_fixed(t, s)?;
    debug_assert!(d3.iter().all(|p| matches!(p, Place::Degree3 { .. })));
    Ok(total + 3 * d3.len() as u64)
}

/// `T(σ)` from the Lefschetz number.
pub fn lefschetz_twisted_count(t: &FieldTower, s: &Aut) -> Result<u64> {
    let q = t.q() as i64;
    if s.is_identity(t) {
        return Ok((q * q * q + 1) as u64);
    }
    let v = (q + 1) * (q + 1) - q * lefschetz_number(t, s)? as i64;
    if v < 0 {
        return Err(Error::Internal(format!("negative twisted count {v}")));
    }
    Ok(v as u64)
}
