use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::linear::AdditiveSolver;
use super::{is_prime, BaseField, CubicExt, Field, Fq2, Fq6, GfError};

/// Largest supported `q`.
pub const MAX_Q: u64 = 1 << 16;

/// `F_p ⊂ F_q ⊂ F_{q^2} ⊂ F_{q^6}`, immutable once built.
#[derive(Debug)]
pub struct FieldTower {
    p: u64,
    e: u32,
    q: u64,
    base: Arc<BaseField>,
    ext: CubicExt,
    solver2: AdditiveSolver<Fq2>,
    solver6: OnceLock<AdditiveSolver<Fq6>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TowerDump {
    pub p: u64,
    pub e: u32,
    /// Over `F_p`, constant term first.
    pub mod_poly_q2: Vec<u64>,
    /// Over `F_{q^2}`, constant term first, as powers of `a`.
    pub mod_poly_q6: Vec<String>,
    /// `F_p` coefficients of `a`, constant term first.
    pub primitive: Vec<u32>,
}

pub fn build_tower(p: u64, e: u32) -> Result<FieldTower, GfError> {
    FieldTower::with_options(p, e, true)
}

impl FieldTower {
    /// `accelerate = false` forces the polynomial arithmetic path.
    pub fn with_options(p: u64, e: u32, accelerate: bool) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::ZeroExponent);
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_Q as u128 {
            return Err(GfError::SizeCap { p, e, cap: MAX_Q });
        }
        let q = q as u64;
        let base = Arc::new(BaseField::new(p, e, accelerate)?);
        let ext = CubicExt::new(base.clone())?;
        let solver2 = AdditiveSolver::new(&*base);
        Ok(FieldTower { p, e, q, base, ext, solver2, solver6: OnceLock::new() })
    }

    /// Builds the tower for a prime power `q`.
    pub fn for_q(q: u64) -> Result<Self, GfError> {
        let (p, e) = split_prime_power(q).ok_or(GfError::NotPrime(q))?;
        build_tower(p, e)
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

    /// `F_{q^2}`.
    pub fn f2(&self) -> &BaseField {
        &self.base
    }

    /// `F_{q^6}`.
    pub fn f6(&self) -> &CubicExt {
        &self.ext
    }

    /// The canonical primitive `a`.
    pub fn a(&self) -> Fq2 {
        self.base.primitive()
    }

    pub fn a_pow(&self, k: u64) -> Fq2 {
        self.base.prim_pow(k)
    }

    pub fn embed(&self, c: Fq2) -> Fq6 {
        self.ext.from_base(c)
    }

    pub fn solver2(&self) -> &AdditiveSolver<Fq2> {
        &self.solver2
    }

    pub fn solver6(&self) -> &AdditiveSolver<Fq6> {
        self.solver6.get_or_init(|| AdditiveSolver::new(&self.ext))
    }

    /// All `β ∈ F_{q^2}` with `β^q + β = α^{q+1}`.
    pub fn fiber2(&self, alpha: Fq2) -> Vec<Fq2> {
        let f = &*self.base;
        self.solver2.solve(f, f.mul(f.frob_q(alpha), alpha))
    }

    pub fn dump(&self) -> TowerDump {
        let mut g: Vec<String> = self.ext.modulus().iter().map(|&c| self.base.fmt_elem(c)).collect();
        g.push(self.base.fmt_elem(self.base.one()));
        TowerDump {
            p: self.p,
            e: self.e,
            mod_poly_q2: self.base.modulus().to_vec(),
            mod_poly_q6: g,
            primitive: self.base.fp_coords(self.a()),
        }
    }
}

/// `q = p^e` with `p` prime.
pub fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut e = 0;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}
