//! `F_{q^6} = F_{q^2}[t]/(g(t))` for the least monic irreducible cubic `g`.

use std::sync::Arc;

use super::poly::{poly_gcd, poly_powmod_x};
use super::prime::merge_factors;
use super::{BaseField, Field, Fq2, GfError};

/// Element `c_0 + c_1 t + c_2 t^2` of `F_{q^6}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fq6(pub [Fq2; 3]);

#[derive(Debug, Clone)]
pub struct CubicExt {
    base: Arc<BaseField>,
    /// `g = t^3 + g2 t^2 + g1 t + g0`, stored as `[g0, g1, g2]`.
    modulus: [Fq2; 3],
    /// `t^q`, `t^{2q}`
    frob_q_images: [Fq6; 2],
    /// `t^{q^2}`, `t^{2q^2}`
    frob_q2_images: [Fq6; 2],
    factors: Vec<(u128, u32)>,
}

impl CubicExt {
    pub fn new(base: Arc<BaseField>) -> Result<Self, GfError> {
        let modulus = least_irreducible_cubic(&base).ok_or(GfError::NoIrreducible(3))?;
        let q = base.q();
        let factors = merge_factors(&[q - 1, q + 1, q * q + q + 1, q * q - q + 1]);
        let zero = base.zero();
        let mut ext = CubicExt {
            base,
            modulus,
            frob_q_images: [Fq6([zero; 3]); 2],
            frob_q2_images: [Fq6([zero; 3]); 2],
            factors,
        };
        let t = ext.generator();
        let tq = ext.pow(t, q as u128);
        let tq2 = ext.pow(tq, q as u128);
        ext.frob_q_images = [tq, ext.mul(tq, tq)];
        ext.frob_q2_images = [tq2, ext.mul(tq2, tq2)];
        Ok(ext)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    /// The adjoined root `t`.
    pub fn generator(&self) -> Fq6 {
        let b = &self.base;
        Fq6([b.zero(), b.one(), b.zero()])
    }

    /// `[g0, g1, g2]` of `g = t^3 + g2 t^2 + g1 t + g0`.
    pub fn modulus(&self) -> [Fq2; 3] {
        self.modulus
    }

    /// Returns the coefficient in `F_{q^2}` when `x` lies in the base.
    pub fn to_base(&self, x: Fq6) -> Option<Fq2> {
        let z = self.base.zero();
        (x.0[1] == z && x.0[2] == z).then_some(x.0[0])
    }

    pub fn scale(&self, c: Fq2, x: Fq6) -> Fq6 {
        let b = &*self.base;
        Fq6([b.mul(c, x.0[0]), b.mul(c, x.0[1]), b.mul(c, x.0[2])])
    }

    /// Norm to `F_{q^2}`.
    pub fn norm(&self, x: Fq6) -> Fq2 {
        let f1 = self.frob_q2(x);
        let f2 = self.frob_q2(f1);
        let n = self.mul(self.mul(x, f1), f2);
        self.to_base(n).expect("norm lies in the base field")
    }

    fn semilinear(&self, c: [Fq2; 3], images: &[Fq6; 2]) -> Fq6 {
        let b = &*self.base;
        let lin = Fq6([c[0], b.zero(), b.zero()]);
        let t1 = self.scale(c[1], images[0]);
        let t2 = self.scale(c[2], images[1]);
        self.add(self.add(lin, t1), t2)
    }

    /// `x ↦ x^{q^2}`, which is `F_{q^2}`-linear.
    pub fn frob_q2_fast(&self, x: Fq6) -> Fq6 {
        self.semilinear(x.0, &self.frob_q2_images)
    }

    /// Pretty printer: `[c0,c1,c2]` with each coefficient as `"0"`/`"a^k"`.
    pub fn fmt_elem(&self, x: Fq6) -> String {
        let b = &self.base;
        match self.to_base(x) {
            Some(c) => b.fmt_elem(c),
            None => format!(
                "[{},{},{}]",
                b.fmt_elem(x.0[0]),
                b.fmt_elem(x.0[1]),
                b.fmt_elem(x.0[2])
            ),
        }
    }
}

fn least_irreducible_cubic(base: &BaseField) -> Option<[Fq2; 3]> {
    // A cubic is irreducible iff it has no root, i.e. gcd(g, x^{q^2} - x) = 1.
    let size = base.size();
    for i0 in 1..size {
        for i1 in 0..size {
            for i2 in 0..size {
                let g = [base.element(i0), base.element(i1), base.element(i2)];
                let poly = vec![g[0], g[1], g[2], base.one()];
                let mut h = poly_powmod_x(base, size, &poly);
                if h.len() < 2 {
                    h.resize(2, base.zero());
                }
                h[1] = base.sub(h[1], base.one());
                let d = poly_gcd(base, &poly, &h);
                if d.len() == 1 {
                    return Some(g);
                }
            }
        }
    }
    None
}

impl Field for CubicExt {
    type Elem = Fq6;

    fn zero(&self) -> Fq6 {
        Fq6([self.base.zero(); 3])
    }

    fn one(&self) -> Fq6 {
        let b = &self.base;
        Fq6([b.one(), b.zero(), b.zero()])
    }

    fn add(&self, a: Fq6, c: Fq6) -> Fq6 {
        let b = &*self.base;
        Fq6([b.add(a.0[0], c.0[0]), b.add(a.0[1], c.0[1]), b.add(a.0[2], c.0[2])])
    }

    fn neg(&self, a: Fq6) -> Fq6 {
        let b = &*self.base;
        Fq6([b.neg(a.0[0]), b.neg(a.0[1]), b.neg(a.0[2])])
    }

    fn mul(&self, x: Fq6, y: Fq6) -> Fq6 {
        let b = &*self.base;
        let [x0, x1, x2] = x.0;
        let [y0, y1, y2] = y.0;
        let mut d = [b.zero(); 5];
        for (i, &xi) in [x0, x1, x2].iter().enumerate() {
            if xi == Fq2::ZERO {
                continue;
            }
            for (j, &yj) in [y0, y1, y2].iter().enumerate() {
                d[i + j] = b.add(d[i + j], b.mul(xi, yj));
            }
        }
        // t^3 = -(g2 t^2 + g1 t + g0)
        let [g0, g1, g2] = self.modulus;
        for k in (3..5).rev() {
            let c = d[k];
            if c == Fq2::ZERO {
                continue;
            }
            d[k - 1] = b.sub(d[k - 1], b.mul(c, g2));
            d[k - 2] = b.sub(d[k - 2], b.mul(c, g1));
            d[k - 3] = b.sub(d[k - 3], b.mul(c, g0));
        }
        Fq6([d[0], d[1], d[2]])
    }

    fn inv(&self, x: Fq6) -> Option<Fq6> {
        if x == self.zero() {
            return None;
        }
        let f1 = self.frob_q2_fast(x);
        let f2 = self.frob_q2_fast(f1);
        let conj = self.mul(f1, f2);
        let n = self.to_base(self.mul(x, conj)).expect("norm lies in the base field");
        Some(self.scale(self.base.inv(n)?, conj))
    }

    fn size(&self) -> u128 {
        self.base.size().pow(3)
    }

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn frob_q(&self, x: Fq6) -> Fq6 {
        let b = &*self.base;
        let c = [b.frob_q(x.0[0]), b.frob_q(x.0[1]), b.frob_q(x.0[2])];
        self.semilinear(c, &self.frob_q_images)
    }

    fn frob_q2(&self, x: Fq6) -> Fq6 {
        self.frob_q2_fast(x)
    }

    fn from_base(&self, c: Fq2) -> Fq6 {
        let z = self.base.zero();
        Fq6([c, z, z])
    }

    fn element(&self, index: u128) -> Fq6 {
        let s = self.base.size();
        let b = &self.base;
        Fq6([
            b.element(index / (s * s)),
            b.element((index / s) % s),
            b.element(index % s),
        ])
    }

    fn index_of(&self, a: Fq6) -> u128 {
        let s = self.base.size();
        let b = &self.base;
        (b.index_of(a.0[0]) * s + b.index_of(a.0[1])) * s + b.index_of(a.0[2])
    }

    fn fp_dim(&self) -> usize {
        3 * self.base.fp_dim()
    }

    fn fp_coords(&self, a: Fq6) -> Vec<u32> {
        a.0.iter().flat_map(|&c| self.base.fp_coords(c)).collect()
    }

    fn from_fp_coords(&self, coords: &[u32]) -> Fq6 {
        let n = self.base.fp_dim();
        Fq6([
            self.base.from_fp_coords(&coords[0..n]),
            self.base.from_fp_coords(&coords[n..2 * n]),
            self.base.from_fp_coords(&coords[2 * n..3 * n]),
        ])
    }

    fn unit_group_factors(&self) -> &[(u128, u32)] {
        &self.factors
    }
}
