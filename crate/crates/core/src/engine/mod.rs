//! Different, genus and rational-place count of a quotient `H^G`.

pub mod deg3;
pub mod twisted;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::autgrp::{Aut, Group};
use crate::curve::{degree3_count, rational_places, Place, RationalPlaces, DEFAULT_DEG3_BUDGET};
use crate::error::{Error, Result};
use crate::gf::FieldTower;
use crate::localval::{default_horizon, degree3_ramification, rational_ramification, RamificationData};

/// How degree-3 places are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deg3Method {
    /// Fixed points of individual group elements.
    FixedPoints,
    /// Every degree-3 place, subject to the budget on `|F_{q^6}|`.
    Enumerate,
}

#[derive(Debug, Clone)]
pub struct EngineOptions {
    pub method: Deg3Method,
    pub deg3_budget: u128,
    /// `None` means `q + 5`.
    pub horizon: Option<usize>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { method: Deg3Method::FixedPoints, deg3_budget: DEFAULT_DEG3_BUDGET, horizon: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deg3Status {
    FixedPoints,
    Enumerated,
    /// Budget exceeded with `|G|` coprime to `3(q^2 - q + 1)`.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitRow {
    pub rep: String,
    pub size: usize,
    pub degree: u32,
    pub e: usize,
    pub f: usize,
    pub d: u64,
    #[serde(skip)]
    pub place: Place,
    #[serde(skip)]
    pub data: RamificationData,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupInfo {
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub params: serde_json::Value,
    /// `None` when the hypotheses of the formula fail.
    pub expected: Option<String>,
    pub matched: bool,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusReport {
    pub q: u64,
    pub p: u64,
    pub group: GroupInfo,
    /// Rational orbits, then degree-3 orbits with a nontrivial stabilizer.
    pub orbits: Vec<OrbitRow>,
    pub deg_diff: u64,
    pub genus: u64,
    /// Burnside count `(1/|G|) Σ_σ T(σ)` with Lefschetz twisted counts.
    pub n_rational_quotient: u64,
    /// Rational orbits plus degree-3 orbits with `f = 3`; places of higher
    /// degree over rational places of `H^G` are not included.
    pub n_rational_low_degree: u64,
    pub maximal: bool,
    pub degree3: Deg3Status,
    /// Degree-3 orbits of size `|G|`, omitted from `orbits`.
    pub free_degree3_orbits: u128,
    pub formula: Option<FormulaCheck>,
}

impl GenusReport {
    /// Different exponent at a place, looked up through its orbit.
    pub fn d_at(&self, t: &FieldTower, g: &Group, place: &Place) -> Option<u64> {
        let orbit: BTreeSet<Place> = g.elements().iter().map(|s| s.apply_place(t, place)).collect();
        self.orbits.iter().find(|o| orbit.contains(&o.place)).map(|o| o.d).or_else(|| {
            (place.degree() == 3 && self.degree3 != Deg3Status::Skipped).then_some(0)
        })
    }

    /// Sum of `d(P) deg(P)` over rational places only.
    pub fn rational_deg_diff(&self) -> u64 {
        self.orbits.iter().filter(|o| o.degree == 1).map(|o| o.size as u64 * o.d).sum()
    }
}

pub fn genus_of_h(q: u64) -> u64 {
    (q * q - q) / 2
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn place_label(t: &FieldTower, p: &Place) -> String {
    match p {
        Place::Infinity => "inf".to_string(),
        Place::Rational { alpha, beta } => {
            format!("({}, {})", t.f2().fmt_elem(*alpha), t.f2().fmt_elem(*beta))
        }
        Place::Degree3 { orbit } => {
            let f6 = t.f6();
            let c = orbit[0].map(|x| f6.fmt_elem(x));
            format!("({} : {} : {})", c[0], c[1], c[2])
        }
    }
}

/// Orbits of `places` under `g` as index lists, each sorted, ordered by
/// least index.
fn rational_orbits(t: &FieldTower, rp: &RationalPlaces, g: &Group) -> Vec<Vec<usize>> {
    let n = rp.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for s in g.generators() {
        for (i, p) in rp.places().iter().enumerate() {
            let img = s.apply2(t, p.point2(t).expect("rational"));
            let j = rp.index_of_point(t, img).expect("rational image");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    orbits
}

fn stabilizer(t: &FieldTower, g: &Group, p: &Place) -> Vec<Aut> {
    g.elements().iter().filter(|s| s.apply_place(t, p) == *p).copied().collect()
}

/// Orbits of a `G`-invariant set of degree-3 places.
fn degree3_orbits(t: &FieldTower, g: &Group, set: &BTreeSet<Place>) -> Result<Vec<(Place, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in set {
        if seen.contains(p) {
            continue;
        }
        let orbit: BTreeSet<Place> = g.elements().iter().map(|s| s.apply_place(t, p)).collect();
        if !orbit.is_subset(set) {
            return Err(Error::Internal("stabilized degree-3 places are not G-invariant".into()));
        }
        out.push((p.clone(), orbit.len()));
        seen.extend(orbit);
    }
    Ok(out)
}

pub fn genus_of_quotient(t: &FieldTower, g: &Group, generators: &[String], opts: &EngineOptions) -> Result<GenusReport> {
    let q = t.q();
    let n = g.order();
    let horizon = opts.horizon.unwrap_or_else(|| default_horizon(q));
    let rp = RationalPlaces::new(t);

    let orbits = rational_orbits(t, &rp, g);
    let mut rows: Vec<OrbitRow> = orbits
        .par_iter()
        .map(|orb| {
            let place = rp.places()[orb[0]].clone();
            let stab = stabilizer(t, g, &place);
            if stab.len() * orb.len() != n {
                return Err(Error::Internal("orbit-stabilizer mismatch".into()));
            }
            let data = rational_ramification(t, &place, &stab, horizon)?;
            Ok(OrbitRow {
                rep: place_label(t, &place),
                size: orb.len(),
                degree: 1,
                e: data.e,
                f: data.f,
                d: data.d,
                place,
                data,
            })
        })
        .collect::<Result<_>>()?;

    let relevant = gcd(n as u64, q * q - q + 1) > 1 || n.is_multiple_of(3);
    let (status, set) = match opts.method {
        Deg3Method::FixedPoints => (Deg3Status::FixedPoints, Some(deg3::stabilized_by_fixed_points(t, g)?)),
        Deg3Method::Enumerate => match deg3::stabilized_by_enumeration(t, g, opts.deg3_budget) {
            Ok(s) => (Deg3Status::Enumerated, Some(s)),
            Err(Error::BudgetExceeded { .. }) if !relevant => (Deg3Status::Skipped, None),
            Err(e) => return Err(e),
        },
    };
    let mut free = 0u128;
    if let Some(set) = set {
        let d3 = degree3_orbits(t, g, &set)?;
        let mut covered = 0u128;
        for (place, size) in d3 {
            let stab = stabilizer(t, g, &place);
            let Place::Degree3 { orbit } = &place else { unreachable!() };
            let pointwise = stab.iter().filter(|s| orbit.iter().all(|&p| s.apply6(t, p) == p)).count();
            let data = degree3_ramification(t, stab.len(), pointwise)?;
            covered += size as u128;
            rows.push(OrbitRow {
                rep: place_label(t, &place),
                size,
                degree: 3,
                e: data.e,
                f: data.f,
                d: data.d,
                place,
                data,
            });
        }
        let rest = degree3_count(q) - covered;
        if !rest.is_multiple_of(n as u128) {
            return Err(Error::Internal("free degree-3 places do not form regular orbits".into()));
        }
        free = rest / n as u128;
    }

    let deg_diff: u64 = rows.iter().map(|r| r.size as u64 * r.d * r.degree as u64).sum();
    let num = (q * q - q) as i64 - 2 - deg_diff as i64;
    if num % n as i64 != 0 || (num / n as i64) % 2 != 0 {
        return Err(Error::NonIntegralGenus { num, den: 2 * n as i64 });
    }
    let g2 = (num / n as i64 + 2) / 2;
    if g2 < 0 {
        return Err(Error::NegativeGenus(g2));
    }
    let genus = g2 as u64;
    let n_rational_low_degree =
        orbits.len() as u64 + rows.iter().filter(|r| r.degree == 3 && r.f == 3).count() as u64;
    let n_rational_quotient = burnside_lefschetz(q, n as u64, deg_diff)?;
    if n_rational_low_degree > n_rational_quotient {
        return Err(Error::Internal("low-degree orbit count exceeds the Burnside count".into()));
    }
    let maximal = n_rational_quotient == q * q + 1 + 2 * genus * q;
    Ok(GenusReport {
        q,
        p: t.p(),
        group: GroupInfo { order: n, generators: generators.to_vec() },
        orbits: rows,
        deg_diff,
        genus,
        n_rational_quotient,
        n_rational_low_degree,
        maximal,
        degree3: status,
        free_degree3_orbits: free,
        formula: None,
    })
}

/// `(1/n) (q^3 + 1 + Σ_{σ≠1} ((q+1)^2 - q Λ(σ)))`, using `Σ_{σ≠1} Λ(σ) = deg Diff`.
fn burnside_lefschetz(q: u64, n: u64, deg_diff: u64) -> Result<u64> {
    let total = (q * q * q + 1 + (n - 1) * (q + 1) * (q + 1)) as i64 - (q * deg_diff) as i64;
    if total < 0 || total % n as i64 != 0 {
        return Err(Error::Internal(format!("Burnside count {total}/{n} is not a nonnegative integer")));
    }
    Ok(total as u64 / n)
}

/// Burnside count with every `T(σ)` counted directly; small `q` only.
pub fn burnside_count_direct(t: &FieldTower, g: &Group) -> Result<u64> {
    let total: u64 = g
        .elements()
        .par_iter()
        .map(|s| twisted::twisted_point_count(t, s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    if !total.is_multiple_of(g.order() as u64) {
        return Err(Error::Internal("direct Burnside count is not integral".into()));
    }
    Ok(total / g.order() as u64)
}

/// Number of rational places of `H^G`.
pub fn quotient_rational_count(t: &FieldTower, g: &Group, opts: &EngineOptions) -> Result<u64> {
    Ok(genus_of_quotient(t, g, &[], opts)?.n_rational_quotient)
}

/// `Σ_{σ ≠ 1} N(σ)` with `N(σ)` the number of rational places fixed by `σ`.
///
/// Requires `p ∤ |G|`. It equals the rational part of the different in that
/// case, and the whole different when no degree-3 place ramifies.
pub fn tame_diff_crosscheck(t: &FieldTower, g: &Group) -> Result<u64> {
    if (g.order() as u64).is_multiple_of(t.p()) {
        return Err(Error::OutsideRegime);
    }
    let places = rational_places(t);
    Ok(g
        .elements()
        .par_iter()
        .filter(|s| !s.is_identity(t))
        .map(|s| places.iter().filter(|p| s.apply_place(t, p) == **p).count() as u64)
        .sum())
}
