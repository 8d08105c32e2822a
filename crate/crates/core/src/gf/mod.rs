//! Finite-field tower `F_p ⊂ F_q ⊂ F_{q^2} ⊂ F_{q^6}` with exact arithmetic.
//!
//! Arithmetic is context based: elements are small `Copy` handles and every
//! operation goes through the field object that owns the tables. The two
//! levels have distinct element types ([`Fq2`], [`Fq6`]) so mixing levels
//! without an explicit [`Field::from_base`] embedding does not compile.

mod base;
mod ext;
pub mod linear;
pub mod poly;
mod prime;
mod tower;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub use base::{BaseField, Fq2};
pub use ext::{CubicExt, Fq6};
pub use linear::{nullspace, AdditiveSolver};
pub use poly::{poly_roots_in_field, RootStrategy};
pub use tower::{build_tower, split_prime_power, FieldTower, TowerDump, MAX_Q};

pub(crate) use prime::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q = {p}^{e} exceeds the desk-scale cap of {cap}")]
    SizeCap { p: u64, e: u32, cap: u64 },
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("no irreducible polynomial of degree {0} found (internal bug)")]
    NoIrreducible(usize),
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("zero polynomial has no root set")]
    ZeroPolynomial,
    #[error("polynomial degree {0} exceeds 3")]
    DegreeTooLarge(usize),
}

/// A finite field given by an explicit context object.
///
/// Elements are enumerated in a fixed deterministic order (`element(0)` is
/// zero); `Ord` on `Elem` agrees with that order.
pub trait Field: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    /// Number of elements.
    fn size(&self) -> u128;
    fn characteristic(&self) -> u64;
    /// `x ↦ x^q` where `q^2` is the size of the base level.
    fn frob_q(&self, a: Self::Elem) -> Self::Elem;
    /// Embeds an element of `F_{q^2}` into this level.
    fn from_base(&self, c: Fq2) -> Self::Elem;

    /// The `index`-th element in deterministic order.
    fn element(&self, index: u128) -> Self::Elem;
    fn index_of(&self, a: Self::Elem) -> u128;

    /// Dimension over the prime field.
    fn fp_dim(&self) -> usize;
    fn fp_coords(&self, a: Self::Elem) -> Vec<u32>;
    fn from_fp_coords(&self, coords: &[u32]) -> Self::Elem;

    /// Prime factorization of `size() - 1`.
    fn unit_group_factors(&self) -> &[(u128, u32)];

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut n: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `x ↦ x^{q^2}`.
    fn frob_q2(&self, a: Self::Elem) -> Self::Elem {
        self.frob_q(self.frob_q(a))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.size()).map(move |i| self.element(i)))
    }
}

/// Multiplicative order of a nonzero element.
pub fn element_order<F: Field>(field: &F, x: F::Elem) -> Result<u128, GfError> {
    if field.is_zero(x) {
        return Err(GfError::ZeroOrder);
    }
    let mut n = field.size() - 1;
    for &(r, _) in field.unit_group_factors() {
        while n.is_multiple_of(r) && field.pow(x, n / r) == field.one() {
            n /= r;
        }
    }
    Ok(n)
}
