use hermitian_core::autgrp::{close_group, default_cap, parse_spec, parse_spec_labeled, Aut, Group};
use hermitian_core::curve::{rational_places, Place, RationalPlaces};
use hermitian_core::gf::{Field, FieldTower, Fq2};
use hermitian_core::Error;
use proptest::prelude::*;

fn tower(q: u64) -> FieldTower {
    FieldTower::for_q(q).unwrap()
}

fn eps(t: &FieldTower) -> Aut {
    Aut::from_affine(t, t.a(), t.f2().zero(), t.f2().zero()).unwrap()
}

fn group(t: &FieldTower, spec: &str) -> Group {
    close_group(t, &parse_spec(spec, t).unwrap(), default_cap(t.q())).unwrap()
}

/// Nonzero `c` with `c^q + c = 0`.
fn trace_zero(t: &FieldTower) -> Fq2 {
    let f = t.f2();
    *t.solver2().kernel().iter().find(|c| !f.is_zero(**c)).unwrap()
}

#[test]
fn affine_examples() {
    let t = tower(4);
    let f = t.f2();
    let id = Aut::from_affine(&t, f.one(), f.zero(), f.zero()).unwrap();
    assert_eq!(id, Aut::identity(&t));
    assert_eq!(eps(&t).order(&t), 15);

    let t8 = tower(8);
    let tau = Aut::from_affine(&t8, t8.f2().one(), t8.f2().zero(), trace_zero(&t8)).unwrap();
    assert_eq!(tau.order(&t8), 2);

    assert_eq!(Aut::from_affine(&t, f.one(), f.zero(), t.a()), Err(Error::AffineConstraint));
    assert_eq!(Aut::from_affine(&t, f.zero(), f.zero(), f.zero()), Err(Error::AffineZeroScale));
}

#[test]
fn affine_matrix_acts_as_substitution() {
    let t = tower(5);
    let f = t.f2();
    let (a, b) = (t.a_pow(3), t.a_pow(7));
    let bb = f.mul(f.frob_q(b), b);
    let c = t.fiber2(b)[1];
    assert_eq!(f.add(f.frob_q(c), c), bb);
    let s = Aut::from_affine(&t, a, b, c).unwrap();
    for p in rational_places(&t).into_iter().skip(1) {
        let Place::Rational { alpha: x, beta: y } = p else { unreachable!() };
        let img = Place::from_point2(&t, s.apply2(&t, p.point2(&t).unwrap())).unwrap();
        let x2 = f.add(f.mul(a, x), b);
        let y2 = f.add(
            f.add(f.mul(f.mul(f.frob_q(a), a), y), f.mul(f.mul(a, f.frob_q(b)), x)),
            c,
        );
        assert_eq!(img, Place::Rational { alpha: x2, beta: y2 });
    }
}

#[test]
fn omega_examples() {
    for q in [2, 4, 8, 5, 7] {
        let t = tower(q);
        let f = t.f2();
        let w = Aut::omega(&t);
        assert!(w.compose(&t, &w).is_identity(&t));
        assert_eq!(w.order(&t), 2);
        let p00 = Place::Rational { alpha: f.zero(), beta: f.zero() };
        assert_eq!(w.apply_place(&t, &p00), Place::Infinity);
        let e = eps(&t);
        assert_eq!(e.compose(&t, &w), w.compose(&t, &e.pow(&t, -(q as i64))), "q = {q}");
    }
}

#[test]
fn sigma_is_tau_omega() {
    let t = tower(4);
    let f = t.f2();
    let c = trace_zero(&t);
    let tau = Aut::from_affine(&t, f.one(), f.zero(), c).unwrap();
    let sigma = tau.compose(&t, &Aut::omega(&t));
    // σ(x) = x / (y + c), σ(y) = 1 / (y + c)
    let (o, z) = (f.one(), f.zero());
    assert_eq!(*sigma.matrix(), [[o, z, z], [z, z, o], [z, o, c]]);
}

#[test]
fn inverse_and_order() {
    let t = tower(7);
    for g in group(&t, "eps(a^2), omega").elements() {
        assert!(g.compose(&t, &g.inverse(&t)).is_identity(&t));
        assert!(g.pow(&t, g.order(&t) as i64).is_identity(&t));
    }
}

#[test]
fn family_orders() {
    for q in [2, 4, 8, 16] {
        let t = tower(q);
        let s = parse_spec(&format!("sigma4(delta=a^{})", q - 1), &t).unwrap();
        assert_eq!(s[0].order(&t), q + 1, "q = {q}");
    }
    let t = tower(4);
    let s = parse_spec("sigma5(delta=a^5)", &t).unwrap();
    assert_eq!(s[0].order(&t), 15);
}

#[test]
fn eps_fixes_trace_zero_fibre() {
    for q in [4, 8] {
        let t = tower(q);
        let f = t.f2();
        let e = eps(&t);
        for &beta in t.solver2().kernel().iter().filter(|b| !f.is_zero(**b)) {
            let p = Place::Rational { alpha: f.zero(), beta };
            for i in 1..(q * q - 1) as i64 {
                let fixed = e.pow(&t, i).apply_place(&t, &p) == p;
                assert_eq!(fixed, i % (q as i64 - 1) == 0, "q = {q}, i = {i}");
            }
        }
    }
}

#[test]
fn omega_fixes_one_place_in_even_characteristic() {
    for q in [2, 4, 8] {
        let t = tower(q);
        let f = t.f2();
        let w = Aut::omega(&t);
        let fixed: Vec<_> = rational_places(&t)
            .into_iter()
            .filter(|p| w.apply_place(&t, p) == *p)
            .collect();
        assert_eq!(fixed, vec![Place::Rational { alpha: f.zero(), beta: f.one() }]);
    }
}

#[test]
fn closure_examples() {
    assert_eq!(group(&tower(4), "eps(a), omega").order(), 30);
    assert_eq!(group(&tower(8), "eps(a), omega").order(), 126);
    assert_eq!(group(&tower(4), "").order(), 1);

    // dihedral ⟨τ, ω⟩ at q = 8 with δ of order 7
    let t = tower(8);
    let g = group(&t, "sigma4(delta=a^9), omega");
    assert_eq!(g.order(), 14);
    let w = Aut::omega(&t);
    let sigma = parse_spec("sigma4(delta=a^9)", &t).unwrap()[0];
    assert_eq!(sigma.order(&t), 7);
    for i in 0..7 {
        let si = sigma.pow(&t, i);
        assert_eq!(w.compose(&t, &si).compose(&t, &w), si.inverse(&t));
    }
    assert_eq!(w.compose(&t, &sigma), sigma.pow(&t, 6).compose(&t, &w));
}

#[test]
fn closure_rejects_cap() {
    let t = tower(4);
    let gens = parse_spec("eps(a), omega", &t).unwrap();
    assert_eq!(close_group(&t, &gens, 10).unwrap_err(), Error::CapExceeded { cap: 10 });
}

#[test]
fn closure_ignores_generator_order() {
    let t = tower(5);
    let a = group(&t, "eps(a^3), omega, tau(0, a^3)");
    let b = group(&t, "tau(0, a^3), omega, eps(a^3)");
    let mut ea = a.elements().to_vec();
    let mut eb = b.elements().to_vec();
    ea.sort();
    eb.sort();
    assert_eq!(ea, eb);
    assert!(a.is_closed(&t));
}

#[test]
fn groups_permute_rational_places() {
    for (q, spec) in [(4, "eps(a), omega"), (5, "sigma5(delta=a)"), (7, "sigma4(delta=a^6)^2, omega"), (3, "tau(0, a^2), eps(a^2)")] {
        let t = tower(q);
        let rp = RationalPlaces::new(&t);
        let g = group(&t, spec);
        for s in g.elements() {
            assert!(s.preserves_curve(&t));
            let mut seen = vec![false; rp.len()];
            for p in rp.places() {
                let img = s.apply2(&t, p.point2(&t).unwrap());
                let j = rp.index_of_point(&t, img).expect("image is a rational place");
                assert!(!seen[j]);
                seen[j] = true;
            }
        }
    }
}

#[test]
fn curve_check_rejects_non_automorphisms() {
    let t = tower(4);
    let f = t.f2();
    let (o, z) = (f.one(), f.zero());
    assert_eq!(Aut::from_matrix(&t, [[o, z, z], [z, o, z], [z, z, z]]), Err(Error::Singular));
    let twisted = [[o, z, z], [z, o, t.a()], [z, z, o]];
    assert_eq!(Aut::from_matrix(&t, twisted), Err(Error::NotAnAutomorphism));
    let w = Aut::omega(&t);
    assert_eq!(Aut::from_matrix(&t, *w.matrix()), Ok(w));
}

#[test]
fn parser_examples() {
    let t = tower(8);
    assert_eq!(parse_spec("omega", &t).unwrap(), vec![Aut::omega(&t)]);
    assert_eq!(parse_spec("  ", &t).unwrap(), vec![]);
    let gens = parse_spec_labeled("eps(a) ,  omega", &t).unwrap();
    assert_eq!(gens[0].text, "eps(a)");
    assert_eq!(gens[1].text, "omega");
    assert_eq!(gens[0].aut, eps(&t));

    let t7 = tower(7);
    let s = parse_spec("sigma5(delta=a) ^ 2", &t7).unwrap()[0];
    let base = parse_spec("sigma5(delta=a)", &t7).unwrap()[0];
    assert_eq!(s, base.compose(&t7, &base));
    assert_eq!(base.order(&t7), 8);
    assert_eq!(s.order(&t7), 4);

    let prod = parse_spec("eps(a)*omega*eps(a^2)", &t).unwrap()[0];
    let e = eps(&t);
    assert_eq!(prod, e.compose(&t, &Aut::omega(&t)).compose(&t, &e.pow(&t, 2)));
    assert_eq!(parse_spec("eps(a^-1)", &t).unwrap()[0], e.inverse(&t));
    assert_eq!(parse_spec("aff(a^63, 0, 0)", &t).unwrap()[0], Aut::identity(&t));
}

#[test]
fn parser_errors_carry_positions() {
    let t = tower(4);
    let pos = |s: &str| match parse_spec(s, &t) {
        Err(Error::Parse { pos, .. }) | Err(Error::Constraint { pos, .. }) => pos,
        other => panic!("{s:?} gave {other:?}"),
    };
    assert_eq!(pos("omeg"), 0);
    assert_eq!(pos("omega, eps(a"), 12);
    assert_eq!(pos("omega,, omega"), 6);
    assert_eq!(pos("eps(b)"), 4);
    assert_eq!(pos("omega ^ x"), 8);
    assert!(matches!(parse_spec("omega, tau(0, a)", &t), Err(Error::Constraint { pos: 7, .. })));
    assert!(matches!(parse_spec("eps(0)", &t), Err(Error::Constraint { .. })));
    // a primitive δ does not give an admissible c
    assert!(parse_spec("sigma4(delta=a^3)", &t).is_ok());
    assert!(matches!(parse_spec("sigma4(delta=a)", &t), Err(Error::Constraint { .. })));
}

#[test]
fn degenerate_delta_gives_identity_tau() {
    // δ = 1 gives c = 0 in even characteristic, so σ = ω
    let t = tower(2);
    assert_eq!(parse_spec("sigma4(delta=1)", &t).unwrap()[0], Aut::omega(&t));
}

proptest! {
    #[test]
    fn random_affine_triples_are_automorphisms(ai in 1u64..49, bi in 0u64..49, k in 0usize..7) {
        let t = tower(7);
        let f = t.f2();
        let a = t.a_pow(ai);
        let b = f.element(bi as u128);
        let c = t.fiber2(b)[k];
        let s = Aut::from_affine(&t, a, b, c).unwrap();
        prop_assert!(s.preserves_curve(&t));
        let inv = s.inverse(&t);
        prop_assert!(s.compose(&t, &inv).is_identity(&t));
        let w = Aut::omega(&t);
        let g = s.compose(&t, &w).compose(&t, &s);
        prop_assert!(g.preserves_curve(&t));
        prop_assert_eq!(Aut::from_matrix(&t, *g.matrix()), Ok(g));
    }
}
