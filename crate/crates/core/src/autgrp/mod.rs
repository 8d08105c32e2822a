//! Automorphisms of the Hermitian curve as projective 3×3 matrices, group
//! closure, and the generator DSL.
//!
//! An automorphism `σ` is stored as its substitution matrix `S`: the row
//! vector `S·(x, y, 1)` is `(σ(x), σ(y), 1)` up to a common factor. Applying
//! `S` to a point `P` gives the point `(σ(x)(P), σ(y)(P))`. This is a right
//! action, which has the same fixed points and orbits as the action on
//! places.

mod dsl;

use std::collections::{HashMap, VecDeque};

use crate::curve::{normalize, Place, Point2, Point6};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldTower, Fq2};

pub use dsl::{parse_spec, parse_spec_labeled, LabeledGen};

pub type Mat = [[Fq2; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Aut {
    m: Mat,
}

fn mat_mul(t: &FieldTower, a: &Mat, b: &Mat) -> Mat {
    let f = t.f2();
    let mut out = [[f.zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = f.zero();
            for k in 0..3 {
                acc = f.add(acc, f.mul(a[i][k], b[k][j]));
            }
            *slot = acc;
        }
    }
    out
}

fn normalize_mat(t: &FieldTower, m: Mat) -> Option<Mat> {
    let f = t.f2();
    let lead = m.iter().flatten().copied().find(|&c| !f.is_zero(c))?;
    let inv = f.inv(lead)?;
    Some(m.map(|row| row.map(|c| f.mul(c, inv))))
}

fn det(t: &FieldTower, m: &Mat) -> Fq2 {
    let f = t.f2();
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        f.sub(f.mul(m[r1][c1], m[r2][c2]), f.mul(m[r1][c2], m[r2][c1]))
    };
    let t0 = f.mul(m[0][0], minor(1, 2, 1, 2));
    let t1 = f.mul(m[0][1], minor(1, 2, 0, 2));
    let t2 = f.mul(m[0][2], minor(1, 2, 0, 1));
    f.add(f.sub(t0, t1), t2)
}

/// `H` with `P^T H P^{(q)} = Y Z^q + Z Y^q - X^{q+1}`.
fn hermitian_form(t: &FieldTower) -> Mat {
    let f = t.f2();
    let (o, z) = (f.one(), f.zero());
    [[f.neg(o), z, z], [z, z, o], [z, o, z]]
}

impl Aut {
    pub fn identity(t: &FieldTower) -> Aut {
        let f = t.f2();
        let (o, z) = (f.one(), f.zero());
        Aut { m: [[o, z, z], [z, o, z], [z, z, o]] }
    }

    /// The involution `x ↦ x/y, y ↦ 1/y`, i.e. `(X:Y:Z) ↦ (X:Z:Y)`.
    pub fn omega(t: &FieldTower) -> Aut {
        let f = t.f2();
        let (o, z) = (f.one(), f.zero());
        Aut { m: [[o, z, z], [z, z, o], [z, o, z]] }
    }

    /// `x ↦ a x + b`, `y ↦ a^{q+1} y + a b^q x + c`.
    pub fn from_affine(t: &FieldTower, a: Fq2, b: Fq2, c: Fq2) -> Result<Aut> {
        let f = t.f2();
        if f.is_zero(a) {
            return Err(Error::AffineZeroScale);
        }
        if f.add(f.frob_q(c), c) != f.mul(f.frob_q(b), b) {
            return Err(Error::AffineConstraint);
        }
        let (o, z) = (f.one(), f.zero());
        let m = [
            [a, z, b],
            [f.mul(a, f.frob_q(b)), f.mul(f.frob_q(a), a), c],
            [z, z, o],
        ];
        Ok(Aut { m: normalize_mat(t, m).expect("nonzero matrix") })
    }

    /// Validates and normalizes an arbitrary matrix.
    pub fn from_matrix(t: &FieldTower, m: Mat) -> Result<Aut> {
        if t.f2().is_zero(det(t, &m)) {
            return Err(Error::Singular);
        }
        let aut = Aut { m: normalize_mat(t, m).ok_or(Error::Singular)? };
        if !aut.preserves_curve(t) {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(aut)
    }

    /// Skips the curve check; used to build deliberately broken inputs.
    pub fn from_matrix_unchecked(t: &FieldTower, m: Mat) -> Aut {
        Aut { m: normalize_mat(t, m).unwrap_or(m) }
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    /// `S^T H S^{(q)} = λ H` for some nonzero `λ`.
    pub fn preserves_curve(&self, t: &FieldTower) -> bool {
        let f = t.f2();
        let s = &self.m;
        let st: Mat = std::array::from_fn(|i| std::array::from_fn(|j| s[j][i]));
        let sq: Mat = s.map(|row| row.map(|c| f.frob_q(c)));
        let h = hermitian_form(t);
        let lhs = mat_mul(t, &mat_mul(t, &st, &h), &sq);
        // lhs must be a nonzero multiple of h
        let lambda = f.neg(lhs[0][0]);
        if f.is_zero(lambda) {
            return false;
        }
        (0..3).all(|i| (0..3).all(|j| lhs[i][j] == f.mul(lambda, h[i][j])))
    }

    /// `fg` as automorphisms of the function field: `(fg)(z) = f(g(z))`.
    pub fn compose(&self, t: &FieldTower, g: &Aut) -> Aut {
        let m = mat_mul(t, &g.m, &self.m);
        Aut { m: normalize_mat(t, m).expect("product of invertible matrices") }
    }

    pub fn inverse(&self, t: &FieldTower) -> Aut {
        let f = t.f2();
        let m = &self.m;
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let d = f.sub(
                f.mul(m[rs[0]][cs[0]], m[rs[1]][cs[1]]),
                f.mul(m[rs[0]][cs[1]], m[rs[1]][cs[0]]),
            );
            if (r + c) % 2 == 1 {
                f.neg(d)
            } else {
                d
            }
        };
        // adjugate = transposed cofactor matrix
        let adj: Mat = std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)));
        Aut { m: normalize_mat(t, adj).expect("invertible matrix") }
    }

    pub fn pow(&self, t: &FieldTower, n: i64) -> Aut {
        let mut base = if n < 0 { self.inverse(t) } else { *self };
        let mut k = n.unsigned_abs();
        let mut acc = Aut::identity(t);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(t, &base);
            }
            base = base.compose(t, &base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self, t: &FieldTower) -> bool {
        *self == Aut::identity(t)
    }

    pub fn order(&self, t: &FieldTower) -> u64 {
        let id = Aut::identity(t);
        let mut cur = *self;
        let mut n = 1;
        while cur != id {
            cur = cur.compose(t, self);
            n += 1;
        }
        n
    }

    pub fn apply2(&self, t: &FieldTower, p: Point2) -> Point2 {
        let f = t.f2();
        let img: Point2 = std::array::from_fn(|i| {
            (0..3).fold(f.zero(), |acc, k| f.add(acc, f.mul(self.m[i][k], p[k])))
        });
        normalize(f, img).expect("invertible matrix")
    }

    pub fn apply6(&self, t: &FieldTower, p: Point6) -> Point6 {
        let f = t.f6();
        let img: Point6 = std::array::from_fn(|i| {
            (0..3).fold(f.zero(), |acc, k| {
                let c = self.m[i][k];
                if t.f2().is_zero(c) {
                    acc
                } else {
                    f.add(acc, t.f6().scale(c, p[k]))
                }
            })
        });
        normalize(f, img).expect("invertible matrix")
    }

    pub fn apply_place(&self, t: &FieldTower, p: &Place) -> Place {
        match p {
            Place::Degree3 { orbit } => {
                let mut pts = orbit.map(|pt| self.apply6(t, pt));
                let least = (0..3).min_by_key(|&i| pts[i]).unwrap();
                pts.rotate_left(least);
                Place::Degree3 { orbit: pts }
            }
            _ => {
                let pt = p.point2(t).expect("rational place");
                Place::from_point2(t, self.apply2(t, pt)).expect("automorphisms map places to places")
            }
        }
    }

    /// Row `i` of `S` applied to `(x, y, 1)`, as coefficients `(c_x, c_y, c_1)`.
    pub fn row(&self, i: usize) -> [Fq2; 3] {
        self.m[i]
    }
}

/// Embeds a point over `F_{q^2}` into `F_{q^6}`.
pub fn embed_point(t: &FieldTower, p: Point2) -> Point6 {
    p.map(|c| t.embed(c))
}

#[derive(Debug, Clone)]
pub struct Group {
    elements: Vec<Aut>,
    generators: Vec<Aut>,
    index: HashMap<Aut, usize>,
}

/// Default closure cap `4 q^3`.
pub fn default_cap(q: u64) -> usize {
    (4 * q.pow(3)) as usize
}

/// Breadth-first closure from the identity under right multiplication by
/// the generators.
pub fn close_group(t: &FieldTower, gens: &[Aut], cap: usize) -> Result<Group> {
    let id = Aut::identity(t);
    let mut elements = vec![id];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let h = e.compose(t, g);
            if index.contains_key(&h) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(h, elements.len());
            elements.push(h);
            queue.push_back(h);
        }
    }
    Ok(Group { elements, generators: gens.to_vec(), index })
}

impl Group {
    pub fn trivial(t: &FieldTower) -> Group {
        close_group(t, &[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Aut] {
        &self.elements
    }

    pub fn generators(&self) -> &[Aut] {
        &self.generators
    }

    pub fn contains(&self, a: &Aut) -> bool {
        self.index.contains_key(a)
    }

    pub fn position(&self, a: &Aut) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Closed under composition and inverses, with the identity first.
    pub fn is_closed(&self, t: &FieldTower) -> bool {
        self.elements.first().is_some_and(|e| e.is_identity(t))
            && self.elements.iter().all(|a| {
                self.contains(&a.inverse(t))
                    && self.generators.iter().all(|g| self.contains(&a.compose(t, g)))
            })
    }
}
