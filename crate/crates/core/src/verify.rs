//! Property suites run over one field: group relations, ramification
//! filtrations, Hurwitz integrality on random subgroups, maximality, the
//! closed-form genera, the `v` sequences, and the tame different shortcut.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::autgrp::{close_group, parse_spec_labeled, Aut, Group};
use crate::engine::{
    burnside_count_direct, genus_of_h, genus_of_quotient, tame_diff_crosscheck, EngineOptions, GenusReport,
};
use crate::error::{Error, Result};
use crate::formulas::{
    case_group, run_case, sigma_order, vanishing_predicate, Case, FormulaParams, VSequence, FAILED, FAMILIES, THEOREMS,
};
use crate::gf::{Field, FieldTower};

/// Deliberate corruption used to check that the suites detect faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds 1 to one entry of the first generator's matrix.
    FlipMatrixEntry,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub random_groups: usize,
    pub seed: u64,
    /// Largest random subgroup kept.
    pub max_random_order: usize,
    /// Direct Burnside counts are run up to this `q`.
    pub direct_count_max_q: u64,
    pub fault: Option<Fault>,
    pub engine: EngineOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            random_groups: 200,
            seed: 0x4865_726d,
            max_random_order: 64,
            direct_count_max_q: 4,
            fault: None,
            engine: EngineOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// First failing instance.
    pub failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.into(), passed: 0, total: 0, failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

/// A subgroup with the DSL text of its generators.
#[derive(Debug, Clone)]
pub struct Sample {
    pub spec: String,
    pub group: Group,
}

fn relations(t: &FieldTower, fault: Option<Fault>) -> SuiteResult {
    let mut s = SuiteResult::new("relations");
    let q = t.q();
    let omega = Aut::omega(t);
    s.record(omega.preserves_curve(t) && omega.order(t) == 2, || "omega".into());
    let eps = parse_spec_labeled("eps(a)", t).expect("valid")[0].aut;
    s.record(eps.preserves_curve(t) && eps.order(t) == q * q - 1, || "eps(a)".into());
    let mut first = true;
    for fam in FAMILIES {
        let Ok(spec) = fam.spec(q) else { continue };
        let mut sigma = parse_spec_labeled(&spec, t).expect("family spec parses")[0].aut;
        if first && fault == Some(Fault::FlipMatrixEntry) {
            let mut m = *sigma.matrix();
            m[1][0] = t.f2().add(m[1][0], t.f2().one());
            sigma = Aut::from_matrix_unchecked(t, m);
        }
        first = false;
        let valid = sigma.preserves_curve(t) && Aut::from_matrix(t, *sigma.matrix()).is_ok();
        s.record(valid, || format!("{spec}: matrix {:?} does not preserve the curve", sigma.matrix()));
        if !valid {
            continue;
        }
        let n = sigma_order(fam, q).expect("family exists");
        s.record(sigma.order(t) == n, || format!("{spec}: order {} instead of {n}", sigma.order(t)));
        if fam.even() && !fam.scaled() {
            let conj = omega.compose(t, &sigma).compose(t, &omega);
            s.record(conj == sigma.inverse(t), || format!("{spec}: omega sigma omega != sigma^-1"));
        }
        if let Ok(g) = close_group(t, &[sigma], n as usize + 1) {
            s.record(g.is_closed(t) && g.order() as u64 == n, || format!("{spec}: cyclic closure"));
        }
    }
    s
}

fn v_sequences(t: &FieldTower) -> SuiteResult {
    let mut s = SuiteResult::new("v-sequence");
    let q = t.q();
    for fam in FAMILIES {
        let Ok(seq) = VSequence::new(t, fam, 4 * q as usize + 4) else { continue };
        for i in 0..seq.v.len() as u64 {
            let v = seq.v[i as usize];
            if i <= 20 {
                s.record(seq.closed_form(t, i) == Ok(v), || format!("{fam:?}: closed form at i = {i}"));
                s.record(seq.binomial(t, i) == v, || format!("{fam:?}: binomial form at i = {i}"));
            }
            if i >= 1 {
                let zero = t.f2().is_zero(seq.v[i as usize - 1]);
                s.record(vanishing_predicate(fam, q, i) == Ok(zero), || format!("{fam:?}: v_{} zero = {zero}", i - 1));
            }
        }
    }
    s
}

fn random_elt(rng: &mut ChaCha8Rng, n: u64) -> String {
    match rng.gen_range(0..n + 1) {
        0 => "0".into(),
        k => format!("a^{}", k - 1),
    }
}

/// Random generator text from the DSL families and random affine triples.
fn random_atom(t: &FieldTower, rng: &mut ChaCha8Rng) -> String {
    let f = t.f2();
    let n = f.size() as u64 - 1;
    let atom = match rng.gen_range(0..6) {
        0 => "omega".to_string(),
        1 => format!("eps(a^{})", rng.gen_range(0..n)),
        2 => format!("sigma4(delta=a^{})", rng.gen_range(0..n)),
        3 => format!("sigma5(delta=a^{})", rng.gen_range(0..n)),
        _ => {
            let a = rng.gen_range(0..n);
            let b = random_elt(rng, n);
            let bv = parse_elt(t, &b);
            let target = f.mul(f.frob_q(bv), bv);
            let cs: Vec<_> = f.elements().filter(|&c| f.add(f.frob_q(c), c) == target).collect();
            let c = *cs.choose(rng).expect("trace is onto");
            let c = f.fmt_elem(c);
            if a == 0 {
                format!("tau({b}, {c})")
            } else {
                format!("aff(a^{a}, {b}, {c})")
            }
        }
    };
    if rng.gen_bool(0.3) {
        format!("{atom}^{}", rng.gen_range(2..5))
    } else {
        atom
    }
}

fn parse_elt(t: &FieldTower, s: &str) -> crate::gf::Fq2 {
    match s {
        "0" => t.f2().zero(),
        _ => t.a_pow(s[2..].parse().expect("exponent")),
    }
}

/// Random subgroups of order at most `max_order`, drawn reproducibly.
pub fn random_subgroups(t: &FieldTower, count: usize, seed: u64, max_order: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t.q());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(1..=2);
        let spec = (0..k).map(|_| random_atom(t, &mut rng)).collect::<Vec<_>>().join(", ");
        let Ok(gens) = parse_spec_labeled(&spec, t) else { continue };
        let auts: Vec<Aut> = gens.iter().map(|g| g.aut).collect();
        if let Ok(group) = close_group(t, &auts, max_order) {
            out.push(Sample { spec, group });
        }
    }
    out
}

fn hurwitz_holds(r: &GenusReport) -> bool {
    let lhs = 2 * genus_of_h(r.q) as i64 - 2;
    lhs == r.group.order as i64 * (2 * r.genus as i64 - 2) + r.deg_diff as i64
}

/// Runs every suite at one `q`.
pub fn run_suites(t: &FieldTower, opts: &VerifyOptions) -> Result<VerifyReport> {
    let q = t.q();
    let mut suites = vec![relations(t, opts.fault), v_sequences(t)];

    // named cases
    let mut formulas = SuiteResult::new("formulas");
    let mut reports: Vec<(String, Group, GenusReport)> = Vec::new();
    for th in THEOREMS {
        let case = Case::Theorem(th);
        for m in case.valid_ms(q) {
            let p = FormulaParams::new(case, q, m)?;
            let (g, _) = case_group(t, &p)?;
            let r = run_case(t, &p, &opts.engine)?;
            let fc = r.formula.clone().expect("attached");
            formulas.record(fc.status != FAILED, || {
                format!("{case} m = {m}: expected {:?}, computed {}", fc.expected, r.genus)
            });
            reports.push((format!("{case} m = {m}"), g, r));
        }
    }

    // random subgroups
    let mut hurwitz = SuiteResult::new("hurwitz");
    let mut monotone = SuiteResult::new("monotonicity");
    let samples = random_subgroups(t, opts.random_groups, opts.seed, opts.max_random_order);
    let computed: Vec<(Sample, std::result::Result<GenusReport, Error>, Option<u64>)> = samples
        .into_par_iter()
        .map(|s| {
            let r = genus_of_quotient(t, &s.group, std::slice::from_ref(&s.spec), &opts.engine);
            let sub = (s.group.generators().len() > 1).then(|| {
                let g1 = close_group(t, &s.group.generators()[..1], opts.max_random_order).expect("subgroup");
                genus_of_quotient(t, &g1, &[], &opts.engine).map(|r| r.genus)
            });
            let sub = match sub {
                Some(Ok(g)) => Some(g),
                _ => None,
            };
            (s, r, sub)
        })
        .collect();
    for (s, r, sub) in computed {
        match r {
            Ok(r) => {
                hurwitz.record(hurwitz_holds(&r), || format!("{}: Hurwitz identity fails", s.spec));
                if let Some(g1) = sub {
                    monotone.record(r.genus <= g1, || format!("{}: genus {} above subgroup genus {g1}", s.spec, r.genus));
                }
                reports.push((s.spec.clone(), s.group, r));
            }
            Err(e) => hurwitz.record(false, || format!("{}: {e}", s.spec)),
        }
    }

    let mut filtration = SuiteResult::new("filtration");
    let mut maximality = SuiteResult::new("maximality");
    let mut tame = SuiteResult::new("tame-crosscheck");
    for (label, g, r) in &reports {
        for o in r.orbits.iter().filter(|o| o.degree == 1 && o.e > 1) {
            let d = &o.data;
            let hilbert: u64 = d.filtration.iter().map(|&x| x as u64 - 1).sum();
            let ok = hilbert == d.d && d.i_values.iter().sum::<u64>() == d.d;
            filtration.record(ok, || format!("{label}: different at {}", o.rep));
        }
        maximality.record(r.maximal, || format!("{label}: {} rational places, genus {}", r.n_rational_quotient, r.genus));
        if q <= opts.direct_count_max_q {
            let direct = burnside_count_direct(t, g)?;
            maximality.record(direct == r.n_rational_quotient, || {
                format!("{label}: direct count {direct}, Lefschetz count {}", r.n_rational_quotient)
            });
        }
        if !(g.order() as u64).is_multiple_of(t.p()) {
            let n = tame_diff_crosscheck(t, g)?;
            let unramified3 = r.orbits.iter().all(|o| o.degree == 1 || o.e == 1);
            let want = if unramified3 { r.deg_diff } else { r.rational_deg_diff() };
            tame.record(n == want, || format!("{label}: shortcut {n}, different {want}"));
        }
    }
    suites.extend([filtration, hurwitz, monotone, maximality, formulas, tame]);
    Ok(VerifyReport { q, suites })
}
