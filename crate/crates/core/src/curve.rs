//! Places of degree 1 and 3 of the Hermitian curve `Y^q Z + Y Z^q = X^{q+1}`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldTower, Fq2, Fq6};

pub type Point2 = [Fq2; 3];
pub type Point6 = [Fq6; 3];

/// Default budget on `|F_{q^6}|` for degree-3 enumeration (`q ≤ 19`).
pub const DEFAULT_DEG3_BUDGET: u128 = 47_045_881;

/// Scales so the first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize<F: Field>(field: &F, p: [F::Elem; 3]) -> Option<[F::Elem; 3]> {
    let lead = p.iter().copied().find(|&c| !field.is_zero(c))?;
    let inv = field.inv(lead)?;
    Some(p.map(|c| field.mul(c, inv)))
}

pub fn on_curve<F: Field>(field: &F, p: [F::Elem; 3]) -> bool {
    let [x, y, z] = p;
    let yq = field.frob_q(y);
    let zq = field.frob_q(z);
    let lhs = field.add(field.mul(yq, z), field.mul(y, zq));
    let rhs = field.mul(field.frob_q(x), x);
    lhs == rhs
}

/// Coordinate-wise `q^2`-power map.
pub fn frobenius(tower: &FieldTower, p: Point6) -> Point6 {
    let f = tower.f6();
    p.map(|c| f.frob_q2(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Rational { alpha: Fq2, beta: Fq2 },
    /// The three conjugate points, least first.
    Degree3 { orbit: [Point6; 3] },
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Degree3 { .. } => 3,
            _ => 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Normalized projective point of a rational place.
    pub fn point2(&self, tower: &FieldTower) -> Option<Point2> {
        let f = tower.f2();
        match *self {
            Place::Infinity => Some([f.zero(), f.one(), f.zero()]),
            Place::Rational { alpha, beta } => normalize(f, [alpha, beta, f.one()]),
            Place::Degree3 { .. } => None,
        }
    }

    /// The rational place through a point over `F_{q^2}`.
    pub fn from_point2(tower: &FieldTower, p: Point2) -> Option<Place> {
        let f = tower.f2();
        let [x, y, z] = p;
        if f.is_zero(z) {
            return (f.is_zero(x) && !f.is_zero(y)).then_some(Place::Infinity);
        }
        let zi = f.inv(z)?;
        Some(Place::Rational { alpha: f.mul(x, zi), beta: f.mul(y, zi) })
    }
}

impl Place {
    /// The degree-3 place through a point over `F_{q^6}`; `None` when the
    /// point is rational or zero.
    pub fn from_point6(tower: &FieldTower, p: Point6) -> Option<Place> {
        let f6 = tower.f6();
        let p = normalize(f6, p)?;
        if p.iter().all(|&c| f6.to_base(c).is_some()) {
            return None;
        }
        let p1 = frobenius(tower, p);
        let mut orbit = [p, p1, frobenius(tower, p1)];
        let least = (0..3).min_by_key(|&i| orbit[i]).unwrap();
        orbit.rotate_left(least);
        Some(Place::Degree3 { orbit })
    }
}

/// The `q^3 + 1` rational places with a lookup table.
#[derive(Debug, Clone)]
pub struct RationalPlaces {
    places: Vec<Place>,
    index: HashMap<(Fq2, Fq2), usize>,
}

impl RationalPlaces {
    pub fn new(tower: &FieldTower) -> Self {
        let places = rational_places(tower);
        let index = places
            .iter()
            .enumerate()
            .filter_map(|(i, p)| match *p {
                Place::Rational { alpha, beta } => Some(((alpha, beta), i)),
                _ => None,
            })
            .collect();
        RationalPlaces { places, index }
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// Index of the place through `p`; `p` need not be normalized.
    pub fn index_of_point(&self, tower: &FieldTower, p: Point2) -> Option<usize> {
        match Place::from_point2(tower, p)? {
            Place::Infinity => Some(0),
            Place::Rational { alpha, beta } => self.index.get(&(alpha, beta)).copied(),
            Place::Degree3 { .. } => None,
        }
    }
}

/// `P_∞` followed by `(α, β)` in element order.
pub fn rational_places(tower: &FieldTower) -> Vec<Place> {
    let f = tower.f2();
    let mut out = Vec::with_capacity(tower.q().pow(3) as usize + 1);
    out.push(Place::Infinity);
    for alpha in f.elements() {
        for beta in tower.fiber2(alpha) {
            out.push(Place::Rational { alpha, beta });
        }
    }
    out
}

/// Least conjugate of a normalized non-rational point, as `(Y, Z)` with `X = 1`.
fn canonical(tower: &FieldTower, p: Point6) -> Point6 {
    let p1 = frobenius(tower, p);
    let p2 = frobenius(tower, p1);
    p.min(p1).min(p2)
}

/// Degree-3 places stored by their least point `(1 : v : u)`.
#[derive(Debug, Clone)]
pub struct Degree3Places {
    /// `(v, u)`, sorted
    reps: Vec<(Fq6, Fq6)>,
}

impl Degree3Places {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep_point(&self, tower: &FieldTower, i: usize) -> Point6 {
        let (v, u) = self.reps[i];
        [tower.f6().one(), v, u]
    }

    pub fn place(&self, tower: &FieldTower, i: usize) -> Place {
        let p0 = self.rep_point(tower, i);
        let p1 = frobenius(tower, p0);
        let p2 = frobenius(tower, p1);
        Place::Degree3 { orbit: [p0, p1, p2] }
    }

    /// Index of the place containing `p`, which must be a non-rational point.
    pub fn index_of_point(&self, tower: &FieldTower, p: Point6) -> Option<usize> {
        let n = normalize(tower.f6(), p)?;
        let c = canonical(tower, n);
        self.reps.binary_search(&(c[1], c[2])).ok()
    }

    pub fn places(&self, tower: &FieldTower) -> Vec<Place> {
        (0..self.len()).map(|i| self.place(tower, i)).collect()
    }
}

/// `(N_6 - (q^3 + 1)) / 3` with `N_6 = q^6 + 1 + (q^2 - q) q^3`.
pub fn degree3_count(q: u64) -> u128 {
    let q = q as u128;
    let n6 = q.pow(6) + 1 + (q * q - q) * q.pow(3);
    (n6 - (q.pow(3) + 1)) / 3
}

/// Enumerates all degree-3 places; fails when `|F_{q^6}| > budget`.
pub fn degree3_places(tower: &FieldTower, budget: u128) -> Result<Degree3Places> {
    let f6 = tower.f6();
    let size = f6.size();
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let solver = tower.solver6();
    let z = tower.f2().zero();
    const CHUNK: u128 = 1 << 12;
    let chunks = size.div_ceil(CHUNK);
    let mut reps: Vec<(Fq6, Fq6)> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut local = Vec::new();
            for idx in c * CHUNK..((c + 1) * CHUNK).min(size) {
                let x = f6.element(idx);
                // every point of degree 3 is affine with x outside F_{q^2}
                if x.0[1] == z && x.0[2] == z {
                    continue;
                }
                let r = f6.mul(f6.frob_q(x), x);
                let Some(y0) = solver.particular(f6, r) else {
                    continue;
                };
                let u = f6.inv(x).expect("x is nonzero");
                let u1 = f6.frob_q2(u);
                let u2 = f6.frob_q2(u1);
                for &k in solver.kernel() {
                    let y = f6.add(y0, k);
                    let v = f6.mul(y, u);
                    let v1 = f6.frob_q2(v);
                    let v2 = f6.frob_q2(v1);
                    if (v, u) < (v1, u1) && (v, u) < (v2, u2) {
                        local.push((v, u));
                    }
                }
            }
            local
        })
        .collect();
    reps.sort_unstable();
    Ok(Degree3Places { reps })
}
