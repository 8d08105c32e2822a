//! Degree-3 places with a nontrivial stabilizer, found from fixed points of
//! single group elements instead of a full enumeration.
//!
//! A place `{P, P^{(q^2)}, P^{(q^4)}}` is stabilized by `σ` iff `σ` fixes
//! `P` or maps it to one of its conjugates. In the first case `P` is an
//! eigenvector of the matrix of `σ` for an eigenvalue outside `F_{q^2}`. In
//! the second case `σ^3` fixes `P`, so only elements of order 3 need the
//! twisted equation `S P = λ P^{(q^2)}`, which is `F_{q^2}`-linear in `P`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::autgrp::{Aut, Group};
use crate::curve::{degree3_places, on_curve, Place, Point6};
use crate::error::{Error, Result};
use crate::gf::{element_order, nullspace, poly_roots_in_field, Field, FieldTower, Fq2, Fq6, RootStrategy};

/// Least generator of `F_{q^6}^*`.
pub fn primitive6(t: &FieldTower) -> Fq6 {
    let f6 = t.f6();
    let n = f6.size() - 1;
    (1..f6.size())
        .map(|i| f6.element(i))
        .find(|&x| element_order(f6, x) == Ok(n))
        .expect("cyclic unit group")
}

fn char_poly(t: &FieldTower, m: &[[Fq2; 3]; 3]) -> [Fq2; 4] {
    let f = t.f2();
    let tr = f.add(f.add(m[0][0], m[1][1]), m[2][2]);
    let minor = |i: usize, j: usize| f.sub(f.mul(m[i][i], m[j][j]), f.mul(m[i][j], m[j][i]));
    let c2 = f.add(f.add(minor(0, 1), minor(0, 2)), minor(1, 2));
    let det = (0..3).fold(f.zero(), |acc, j| {
        let sub = f.sub(
            f.mul(m[1][(j + 1) % 3], m[2][(j + 2) % 3]),
            f.mul(m[1][(j + 2) % 3], m[2][(j + 1) % 3]),
        );
        f.add(acc, f.mul(m[0][j], sub))
    });
    [f.neg(det), c2, f.neg(tr), f.one()]
}

/// Degree-3 places whose three points are each fixed by `s`.
pub fn pointwise_fixed(t: &FieldTower, s: &Aut) -> Result<Vec<Place>> {
    let f6 = t.f6();
    let m = s.matrix();
    let cp = char_poly(t, m).map(|c| t.embed(c));
    let roots = poly_roots_in_field(f6, &cp, RootStrategy::Gcd)?;
    let mut out = Vec::new();
    for (lambda, _) in roots {
        // eigenvectors for eigenvalues in F_{q^2} are rational points
        if f6.to_base(lambda).is_some() {
            continue;
        }
        let rows: Vec<Vec<Fq6>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        let c = t.embed(m[i][j]);
                        if i == j {
                            f6.sub(c, lambda)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let ker = nullspace(f6, &rows, 3);
        // the three conjugate eigenvalues are distinct, so each eigenspace is a line
        if ker.len() != 1 {
            return Err(Error::Internal(format!("eigenspace of dimension {}", ker.len())));
        }
        let p: Point6 = [ker[0][0], ker[0][1], ker[0][2]];
        if on_curve(f6, p) {
            out.extend(Place::from_point6(t, p));
        }
    }
    Ok(out)
}

/// Degree-3 places `P` with `s(P) = P^{(q^2)}`, for `s` of order 3.
pub fn rotated(t: &FieldTower, s: &Aut, g6: Fq6) -> Result<Vec<Place>> {
    let f = t.f2();
    let f6 = t.f6();
    let q2 = t.q() * t.q();
    let m = s.matrix();
    let unit = |k: usize, c: usize| -> Point6 {
        let mut p = [f6.zero(); 3];
        p[k].0[c] = f.one();
        p
    };
    let mut out = BTreeSet::new();
    let mut lambda = f6.one();
    for _ in 0..q2 - 1 {
        // column 3k + c is the image of the basis vector unit(k, c)
        let mut rows = vec![vec![f.zero(); 9]; 9];
        for k in 0..3 {
            for c in 0..3 {
                let e = unit(k, c);
                for i in 0..3 {
                    let sp = t.f6().scale(m[i][k], e[k]);
                    let img = f6.sub(f6.mul(lambda, f6.frob_q2_fast(e[i])), sp);
                    for (ci, &v) in img.0.iter().enumerate() {
                        rows[3 * i + ci][3 * k + c] = v;
                    }
                }
            }
        }
        let ker = nullspace(f, &rows, 9);
        for lead in 0..ker.len() {
            let free = ker.len() - 1 - lead;
            for idx in 0..(q2 as u128).pow(free as u32) {
                let mut v = ker[lead].clone();
                let mut rest = idx;
                for b in &ker[lead + 1..] {
                    let c = f.element(rest % q2 as u128);
                    rest /= q2 as u128;
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
                let p: Point6 = std::array::from_fn(|k| Fq6([v[3 * k], v[3 * k + 1], v[3 * k + 2]]));
                if on_curve(f6, p) {
                    out.extend(Place::from_point6(t, p));
                }
            }
        }
        lambda = f6.mul(lambda, g6);
    }
    Ok(out.into_iter().collect())
}

/// Degree-3 places fixed by some nontrivial element of `g`, from fixed
/// points of individual elements.
pub fn stabilized_by_fixed_points(t: &FieldTower, g: &Group) -> Result<BTreeSet<Place>> {
    let nontrivial: Vec<&Aut> = g.elements().iter().filter(|s| !s.is_identity(t)).collect();
    let needs_rotation = g.order().is_multiple_of(3);
    let g6 = needs_rotation.then(|| primitive6(t));
    let found: Vec<Vec<Place>> = nontrivial
        .par_iter()
        .map(|s| {
            let mut v = pointwise_fixed(t, s)?;
            if let Some(g6) = g6 {
                if s.order(t) == 3 {
                    v.extend(rotated(t, s, g6)?);
                }
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// The same set by enumerating every degree-3 place.
pub fn stabilized_by_enumeration(t: &FieldTower, g: &Group, budget: u128) -> Result<BTreeSet<Place>> {
    let all = degree3_places(t, budget)?;
    let nontrivial: Vec<&Aut> = g.elements().iter().filter(|s| !s.is_identity(t)).collect();
    Ok((0..all.len())
        .into_par_iter()
        .filter_map(|i| {
            let p = all.place(t, i);
            nontrivial.iter().any(|s| s.apply_place(t, &p) == p).then_some(p)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}
