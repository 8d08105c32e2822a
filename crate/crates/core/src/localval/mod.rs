//! Local expansions at rational places and the ramification filtration of a
//! stabilizer.
//!
//! At a finite place `P_{α,β}` the uniformizer is `t = x - α` and
//! `y = β + s` with `s^q + s = α^q t + α t^q + t^{q+1}`. At `P_∞` it is
//! `t = x/y`; with `w = 1/y` the curve reads `w + w^q = t^{q+1}`.

mod series;

use serde::Serialize;

pub use series::LaurentSeries;

use crate::autgrp::{Aut, Group};
use crate::curve::Place;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldTower, Fq2};

/// Initial horizon `q + 5`.
pub fn default_horizon(q: u64) -> usize {
    q as usize + 5
}

#[derive(Debug, Clone)]
pub enum FrameKind {
    Finite { alpha: Fq2, beta: Fq2 },
    Infinity,
}

/// Series for `x` and `y` in a uniformizer at a rational place.
#[derive(Debug, Clone)]
pub struct LocalFrame {
    pub place: Place,
    pub kind: FrameKind,
    pub horizon: usize,
    pub x: LaurentSeries,
    pub y: LaurentSeries,
    /// `s = y - β` at finite places, `w = 1/y` at `P_∞`.
    pub aux: LaurentSeries,
}

/// Fixed point of `s ↦ r - s^q`, correct modulo `t^prec`.
fn contract(t: &FieldTower, r: &LaurentSeries, prec: i64) -> LaurentSeries {
    let f = t.f2();
    let mut s = LaurentSeries::zero(prec);
    // the error gains a factor q in valuation per step
    for _ in 0..prec.max(2) {
        let next = r.sub(f, &s.frob_q(f)).truncate(f, prec);
        if next == s && next.abs_prec() >= prec {
            return next;
        }
        s = next;
    }
    s
}

pub fn expand_at(t: &FieldTower, place: &Place, horizon: usize) -> Result<LocalFrame> {
    let q = t.q();
    if horizon < q as usize + 3 {
        return Err(Error::HorizonTooSmall(horizon));
    }
    let f = t.f2();
    let n = horizon as i64;
    let qi = q as usize;
    let frame = match *place {
        Place::Rational { alpha, beta } => {
            let mut r = vec![f.zero(); qi + 2];
            r[1] = f.frob_q(alpha);
            r[qi] = f.add(r[qi], alpha);
            r[qi + 1] = f.one();
            let r = LaurentSeries::poly(f, &r, n);
            let s = contract(t, &r, n);
            let x = LaurentSeries::poly(f, &[alpha, f.one()], n);
            let y = LaurentSeries::constant(f, beta, n).add(f, &s);
            LocalFrame { place: place.clone(), kind: FrameKind::Finite { alpha, beta }, horizon, x, y, aux: s }
        }
        Place::Infinity => {
            // w has valuation q + 1, so w mod t^{n + q + 1} gives y = 1/w to relative precision n
            let prec = n + q as i64 + 1;
            let mut r = vec![f.zero(); qi + 2];
            r[qi + 1] = f.one();
            let r = LaurentSeries::poly(f, &r, prec);
            let w = contract(t, &r, prec);
            let y = w.inv(f).ok_or_else(|| Error::Internal("w vanishes".into()))?;
            let x = LaurentSeries::t(f, prec).mul(f, &y);
            LocalFrame { place: Place::Infinity, kind: FrameKind::Infinity, horizon, x, y, aux: w }
        }
        Place::Degree3 { .. } => return Err(Error::NotRational),
    };
    frame.check(t)?;
    Ok(frame)
}

impl LocalFrame {
    /// The curve relation to precision and the expected valuations.
    fn check(&self, t: &FieldTower) -> Result<()> {
        let f = t.f2();
        let q = t.q() as i64;
        let rel = self
            .y
            .frob_q(f)
            .add(f, &self.y)
            .sub(f, &self.x.frob_q(f).mul(f, &self.x));
        if !rel.is_zero_to_prec() {
            return Err(Error::Internal(format!("curve relation fails: {rel:?}")));
        }
        let ok = match self.kind {
            FrameKind::Finite { alpha, .. } => {
                let want = if f.is_zero(alpha) { q + 1 } else { 1 };
                self.aux.valuation() == Some(want)
            }
            FrameKind::Infinity => self.x.valuation() == Some(-q) && self.y.valuation() == Some(-q - 1),
        };
        if !ok {
            return Err(Error::Internal("unexpected valuations in local frame".into()));
        }
        Ok(())
    }

    fn row(&self, t: &FieldTower, c: [Fq2; 3], x: &LaurentSeries, y: &LaurentSeries) -> LaurentSeries {
        let f = t.f2();
        let one = LaurentSeries::constant(f, f.one(), self.horizon as i64 * 4);
        x.scale(f, c[0]).add(f, &y.scale(f, c[1])).add(f, &one.scale(f, c[2]))
    }

    /// `σ(t) - t` as a series.
    pub fn displacement(&self, t: &FieldTower, s: &Aut) -> Option<LaurentSeries> {
        let f = t.f2();
        match self.kind {
            FrameKind::Finite { .. } => {
                // σ(x) - x = (N - x D) / D
                let num = self.row(t, s.row(0), &self.x, &self.y);
                let den = self.row(t, s.row(2), &self.x, &self.y);
                num.sub(f, &self.x.mul(f, &den)).div(f, &den)
            }
            FrameKind::Infinity => {
                // σ(x/y) = (S00 t + S01 + S02 w) / (S10 t + S11 + S12 w)
                let prec = self.aux.abs_prec();
                let tt = LaurentSeries::t(f, prec);
                let one = LaurentSeries::constant(f, f.one(), prec);
                let lin = |c: [Fq2; 3]| {
                    tt.scale(f, c[0]).add(f, &one.scale(f, c[1])).add(f, &self.aux.scale(f, c[2]))
                };
                let n0 = lin(s.row(0));
                let n1 = lin(s.row(1));
                n0.sub(f, &tt.mul(f, &n1)).div(f, &n1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IValue {
    /// `σ` moves the place.
    NotFixed,
    Value(u64),
}

fn max_horizon(q: u64) -> usize {
    8 * default_horizon(q)
}

/// `i_P(σ) = v_P(σ(t) - t)`, escalating the horizon when the difference
/// vanishes to precision.
pub fn i_value(t: &FieldTower, place: &Place, s: &Aut, frame: &LocalFrame) -> Result<IValue> {
    if s.is_identity(t) {
        return Err(Error::IdentityValue);
    }
    if s.apply_place(t, place) != *place {
        return Ok(IValue::NotFixed);
    }
    let mut horizon = frame.horizon;
    let mut local;
    let mut fr = frame;
    loop {
        let diff = fr
            .displacement(t, s)
            .ok_or_else(|| Error::Internal("denominator vanishes at a fixed place".into()))?;
        if let Some(v) = diff.valuation() {
            if v < 1 {
                return Err(Error::Internal(format!("displacement has valuation {v} at a fixed place")));
            }
            return Ok(IValue::Value(v as u64));
        }
        if horizon >= max_horizon(t.q()) {
            return Err(Error::Indeterminate(horizon));
        }
        horizon = (horizon * 2).min(max_horizon(t.q()));
        local = expand_at(t, place, horizon)?;
        fr = &local;
    }
}

/// Ramification of one place in a Galois cover `H → H^G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationData {
    pub degree: u32,
    /// `|G_{-1}|`, the decomposition group.
    pub stabilizer: usize,
    /// `|G_0|, |G_1|, …` down to the first 1; empty for degree-3 places.
    pub filtration: Vec<usize>,
    pub e: usize,
    pub f: usize,
    pub d: u64,
    /// `i_P(σ)` for the nontrivial elements of `G_0`, sorted.
    pub i_values: Vec<u64>,
}

impl RamificationData {
    pub fn unramified(degree: u32) -> Self {
        let filtration = if degree == 1 { vec![1] } else { Vec::new() };
        RamificationData { degree, stabilizer: 1, filtration, e: 1, f: 1, d: 0, i_values: Vec::new() }
    }
}

/// Filtration data from the stabilizer of a rational place.
pub fn rational_ramification(
    t: &FieldTower,
    place: &Place,
    stabilizer: &[Aut],
    horizon: usize,
) -> Result<RamificationData> {
    let p = t.p() as usize;
    let nontrivial: Vec<&Aut> = stabilizer.iter().filter(|s| !s.is_identity(t)).collect();
    if nontrivial.len() + 1 != stabilizer.len() {
        return Err(Error::Internal("stabilizer must contain the identity once".into()));
    }
    let mut i_values = Vec::with_capacity(nontrivial.len());
    if !nontrivial.is_empty() {
        let frame = expand_at(t, place, horizon)?;
        for s in nontrivial {
            match i_value(t, place, s, &frame)? {
                IValue::Value(v) => i_values.push(v),
                IValue::NotFixed => return Err(Error::Internal("stabilizer element moves the place".into())),
            }
        }
    }
    i_values.sort_unstable();
    let e = stabilizer.len();
    let mut filtration = vec![e];
    let mut i = 1u64;
    while *filtration.last().unwrap() > 1 {
        filtration.push(1 + i_values.iter().filter(|&&v| v > i).count());
        i += 1;
    }
    if filtration.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Internal("filtration is not monotone".into()));
    }
    if let Some(&g1) = filtration.get(1) {
        let mut r = g1;
        while r % p == 0 {
            r /= p;
        }
        if r != 1 {
            return Err(Error::Internal(format!("|G_1| = {g1} is not a power of p")));
        }
    }
    if !e.is_multiple_of(p) && i_values.iter().any(|&v| v != 1) {
        return Err(Error::Internal("tame stabilizer with i > 1".into()));
    }
    let d_hilbert: u64 = filtration.iter().map(|&g| g as u64 - 1).sum();
    let d_sum: u64 = i_values.iter().sum();
    if d_hilbert != d_sum {
        return Err(Error::Internal(format!("different mismatch: {d_hilbert} vs {d_sum}")));
    }
    Ok(RamificationData { degree: 1, stabilizer: e, filtration, e, f: 1, d: d_hilbert, i_values })
}

/// Ramification at a degree-3 place from its setwise stabilizer and the
/// number of elements fixing it pointwise.
pub fn degree3_ramification(t: &FieldTower, stabilizer: usize, pointwise: usize) -> Result<RamificationData> {
    let q = t.q();
    let e = pointwise;
    if e == 0 || !stabilizer.is_multiple_of(e) {
        return Err(Error::Internal("inertia does not divide the decomposition group".into()));
    }
    let f = stabilizer / e;
    if f != 1 && f != 3 {
        return Err(Error::Internal(format!("residue degree {f} at a degree-3 place")));
    }
    if (e as u64).is_multiple_of(t.p()) {
        return Err(Error::WildDegreeThree(e));
    }
    if !(q * q - q + 1).is_multiple_of(e as u64) {
        return Err(Error::Internal(format!("e = {e} does not divide q^2 - q + 1")));
    }
    Ok(RamificationData {
        degree: 3,
        stabilizer,
        filtration: Vec::new(),
        e,
        f,
        d: e as u64 - 1,
        i_values: Vec::new(),
    })
}

/// Ramification of `place` under `group`, computing the stabilizer directly.
pub fn ramification_data(t: &FieldTower, place: &Place, group: &Group) -> Result<RamificationData> {
    let stab: Vec<Aut> = group
        .elements()
        .iter()
        .filter(|s| s.apply_place(t, place) == *place)
        .copied()
        .collect();
    match place {
        Place::Degree3 { orbit } => {
            let pointwise = stab.iter().filter(|s| orbit.iter().all(|&p| s.apply6(t, p) == p)).count();
            degree3_ramification(t, stab.len(), pointwise)
        }
        _ => rational_ramification(t, place, &stab, default_horizon(t.q())),
    }
}
