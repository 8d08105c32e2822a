use hermitian_core::autgrp::{close_group, default_cap, parse_spec, Aut, Group};
use hermitian_core::curve::{degree3_places, rational_places, Place};
use hermitian_core::gf::{Field, FieldTower};
use hermitian_core::localval::{
    expand_at, i_value, ramification_data, IValue, LaurentSeries, RamificationData,
};
use hermitian_core::Error;
use proptest::prelude::*;

fn tower(q: u64) -> FieldTower {
    FieldTower::for_q(q).unwrap()
}

fn group(t: &FieldTower, spec: &str) -> Group {
    close_group(t, &parse_spec(spec, t).unwrap(), default_cap(t.q())).unwrap()
}

/// `β ∈ F_q^*`, i.e. nonzero with `β^q + β = 0` in characteristic 2.
fn fq_star(t: &FieldTower) -> Vec<Place> {
    let f = t.f2();
    t.solver2()
        .kernel()
        .iter()
        .filter(|b| !f.is_zero(**b))
        .map(|&beta| Place::Rational { alpha: f.zero(), beta })
        .collect()
}

#[test]
fn valuations_of_coordinates() {
    for q in [2, 3, 4, 5, 8] {
        let t = tower(q);
        let f = t.f2();
        let n = q as usize + 5;
        for p in rational_places(&t).into_iter().take(40) {
            let fr = expand_at(&t, &p, n).unwrap();
            match p {
                Place::Infinity => {
                    assert_eq!(fr.x.valuation(), Some(-(q as i64)));
                    assert_eq!(fr.y.valuation(), Some(-(q as i64) - 1));
                    assert_eq!(fr.x.div(f, &fr.y).unwrap().valuation(), Some(1));
                }
                Place::Rational { alpha, beta } => {
                    let s = fr.y.sub(f, &LaurentSeries::constant(f, beta, n as i64));
                    let want = if f.is_zero(alpha) { q as i64 + 1 } else { 1 };
                    assert_eq!(s.valuation(), Some(want), "q = {q}");
                }
                _ => unreachable!(),
            }
        }
    }
}

#[test]
fn horizon_below_q_plus_three_is_rejected() {
    let t = tower(4);
    assert_eq!(expand_at(&t, &Place::Infinity, 6).unwrap_err(), Error::HorizonTooSmall(6));
    assert!(expand_at(&t, &Place::Infinity, 7).is_ok());
}

#[test]
fn jumps_in_even_characteristic() {
    for q in [2, 4, 8, 16] {
        let t = tower(q);
        let f = t.f2();
        let p01 = Place::Rational { alpha: f.zero(), beta: f.one() };
        let fr = expand_at(&t, &p01, q as usize + 5).unwrap();
        assert_eq!(i_value(&t, &p01, &Aut::omega(&t), &fr), Ok(IValue::Value(q + 2)), "q = {q}");

        let c = *t.solver2().kernel().iter().find(|c| !f.is_zero(**c)).unwrap();
        let tau = Aut::from_affine(&t, f.one(), f.zero(), c).unwrap();
        let fr = expand_at(&t, &Place::Infinity, q as usize + 5).unwrap();
        assert_eq!(i_value(&t, &Place::Infinity, &tau, &fr), Ok(IValue::Value(q + 2)), "q = {q}");

        let e = Aut::from_affine(&t, t.a(), f.zero(), f.zero()).unwrap();
        for p in fq_star(&t) {
            let fr = expand_at(&t, &p, q as usize + 5).unwrap();
            for k in 1..=q as i64 {
                let s = e.pow(&t, (q as i64 - 1) * k);
                if !s.is_identity(&t) {
                    assert_eq!(i_value(&t, &p, &s, &fr), Ok(IValue::Value(1)));
                }
            }
            if q > 2 {
                assert_eq!(i_value(&t, &p, &e, &fr), Ok(IValue::NotFixed));
            }
        }
    }
}

#[test]
fn identity_has_no_i_value() {
    let t = tower(4);
    let fr = expand_at(&t, &Place::Infinity, 9).unwrap();
    assert_eq!(i_value(&t, &Place::Infinity, &Aut::identity(&t), &fr), Err(Error::IdentityValue));
}

#[test]
fn eps_omega_filtration_at_q4() {
    let t = tower(4);
    let g = group(&t, "eps(a), omega");
    for p in fq_star(&t) {
        let r = ramification_data(&t, &p, &g).unwrap();
        assert_eq!(r.filtration, vec![10, 2, 2, 2, 2, 2, 1]);
        assert_eq!((r.e, r.f, r.d), (10, 1, 14));
    }
    let r = ramification_data(&t, &Place::Infinity, &g).unwrap();
    assert_eq!((r.e, r.d), (15, 14));
    assert_eq!(r.filtration, vec![15, 1]);
    let f = t.f2();
    let r = ramification_data(&t, &Place::Rational { alpha: f.zero(), beta: f.zero() }, &g).unwrap();
    assert_eq!(r.d, 14);
}

#[test]
fn trivial_group_is_unramified() {
    let t = tower(3);
    let g = Group::trivial(&t);
    for p in rational_places(&t) {
        assert_eq!(ramification_data(&t, &p, &g).unwrap(), RamificationData::unramified(1));
    }
    for p in degree3_places(&t, u128::MAX).unwrap().places(&t).into_iter().take(20) {
        assert_eq!(ramification_data(&t, &p, &g).unwrap(), RamificationData::unramified(3));
    }
}

#[test]
fn dual_different_and_tameness() {
    for (q, spec) in [(4, "eps(a), omega"), (5, "sigma5(delta=a)"), (8, "sigma4(delta=a^7), omega"), (9, "tau(0, a^5), eps(a^8)"), (7, "eps(a^4), omega")] {
        let t = tower(q);
        let g = group(&t, spec);
        for p in rational_places(&t) {
            let r = ramification_data(&t, &p, &g).unwrap();
            assert!(r.filtration.windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(*r.filtration.last().unwrap(), 1);
            assert_eq!(r.i_values.iter().sum::<u64>(), r.d);
            if !(r.e as u64).is_multiple_of(t.p()) {
                assert_eq!(r.d, r.e as u64 - 1);
                assert!(r.i_values.iter().all(|&v| v == 1));
            }
        }
    }
}

#[test]
fn degree_three_ramification_under_singer_like_element() {
    // q = 2: q^2 - q + 1 = 3; an element of order 3 fixing degree-3 places pointwise
    let t = tower(2);
    let d3 = degree3_places(&t, u128::MAX).unwrap();
    let g = group(&t, "eps(a), omega");
    let mut total = 0;
    for p in d3.places(&t) {
        let r = ramification_data(&t, &p, &g).unwrap();
        assert_eq!(3 % r.e, 0);
        assert!(r.f == 1 || r.f == 3);
        total += r.d;
    }
    // the rational places already account for deg Diff = 12
    assert_eq!(total, 0);
}

fn series(vals: Vec<u8>, v: i64) -> (FieldTower, LaurentSeries) {
    let t = tower(5);
    let f = t.f2();
    let coeffs = vals.iter().map(|&c| f.element(c as u128 % 25)).collect();
    let n = v + vals.len() as i64;
    let s = LaurentSeries::new(f, v, coeffs, n);
    (t, s)
}

proptest! {
    #[test]
    fn series_ring_laws(a in proptest::collection::vec(0u8..25, 1..12), b in proptest::collection::vec(0u8..25, 1..12), va in -3i64..3, vb in -3i64..3) {
        let (t, x) = series(a, va);
        let (_, y) = series(b, vb);
        let f = t.f2();
        prop_assert_eq!(x.add(f, &y), y.add(f, &x));
        prop_assert_eq!(x.mul(f, &y), y.mul(f, &x));
        let z = x.sub(f, &x);
        prop_assert!(z.is_zero_to_prec());
        if let (Some(vx), Some(vy)) = (x.valuation(), y.valuation()) {
            prop_assert_eq!(x.mul(f, &y).valuation(), Some(vx + vy));
            let one = x.mul(f, &x.inv(f).unwrap());
            prop_assert_eq!(one.valuation(), Some(0));
            prop_assert_eq!(one.leading(), Some(f.one()));
            prop_assert!(one.sub(f, &LaurentSeries::constant(f, f.one(), one.abs_prec())).is_zero_to_prec());
            prop_assert_eq!(x.frob_q(f).valuation(), Some(5 * vx));
        }
    }
}
