use hermitian_core::curve::{
    degree3_count, degree3_places, frobenius, normalize, on_curve, rational_places, Place,
    RationalPlaces,
};
use hermitian_core::gf::{Field, FieldTower};
use hermitian_core::Error;

fn tower(q: u64) -> FieldTower {
    FieldTower::for_q(q).unwrap()
}

#[test]
fn rational_counts() {
    for (q, n) in [(2, 9), (3, 28), (4, 65), (5, 126), (8, 513)] {
        let t = tower(q);
        let places = rational_places(&t);
        assert_eq!(places.len(), n);
        assert_eq!(places[0], Place::Infinity);
        for p in &places {
            assert!(on_curve(t.f2(), p.point2(&t).unwrap()));
        }
    }
}

#[test]
fn alpha_zero_fibre_at_q8() {
    let t = tower(8);
    let f = t.f2();
    let fibre: Vec<_> = rational_places(&t)
        .into_iter()
        .filter(|p| matches!(p, Place::Rational { alpha, beta } if f.is_zero(*alpha) && f.is_zero(f.add(f.frob_q(*beta), *beta))))
        .collect();
    assert_eq!(fibre.len(), 8);
}

#[test]
fn rational_order_is_deterministic() {
    let t = tower(4);
    let places = rational_places(&t);
    let mut sorted = places[1..].to_vec();
    sorted.sort();
    assert_eq!(sorted, places[1..]);
    assert_eq!(places, rational_places(&tower(4)));
}

#[test]
fn infinity_is_the_only_point_at_infinity() {
    let t = tower(4);
    let f = t.f2();
    let mut found = Vec::new();
    for x in f.elements() {
        for y in f.elements() {
            if let Some(p) = normalize(f, [x, y, f.zero()]) {
                if on_curve(f, p) && !found.contains(&p) {
                    found.push(p);
                }
            }
        }
    }
    assert_eq!(found, vec![[f.zero(), f.one(), f.zero()]]);
}

#[test]
fn rational_lookup_round_trips() {
    let t = tower(5);
    let rp = RationalPlaces::new(&t);
    let f = t.f2();
    for (i, p) in rp.places().iter().enumerate() {
        let pt = p.point2(&t).unwrap();
        assert_eq!(rp.index_of_point(&t, pt), Some(i));
        let scaled = pt.map(|c| f.mul(c, t.a_pow(7)));
        assert_eq!(rp.index_of_point(&t, scaled), Some(i));
    }
}

#[test]
fn degree_three_counts() {
    for (q, n) in [(2, 24), (3, 288), (4, 1600), (5, 6000)] {
        assert_eq!(degree3_count(q), n);
        let t = tower(q);
        assert_eq!(degree3_places(&t, u128::MAX).unwrap().len() as u128, n, "q = {q}");
    }
}

#[test]
fn degree_three_orbits_at_q2() {
    let t = tower(2);
    let d3 = degree3_places(&t, u128::MAX).unwrap();
    let f6 = t.f6();
    let mut all_points = Vec::new();
    for (i, place) in d3.places(&t).into_iter().enumerate() {
        let Place::Degree3 { orbit } = place else { panic!("degree 3 expected") };
        assert!(orbit[0] < orbit[1] && orbit[0] < orbit[2]);
        assert_ne!(orbit[1], orbit[2]);
        for (k, &p) in orbit.iter().enumerate() {
            assert!(on_curve(f6, p));
            assert!(p.iter().any(|&c| t.f6().to_base(c).is_none()));
            assert_eq!(frobenius(&t, p), orbit[(k + 1) % 3]);
            assert_eq!(d3.index_of_point(&t, p), Some(i));
            all_points.push(p);
        }
        assert_eq!(frobenius(&t, frobenius(&t, frobenius(&t, orbit[0]))), orbit[0]);
    }
    all_points.sort();
    all_points.dedup();
    assert_eq!(all_points.len(), 72);
}

#[test]
fn frobenius_fixes_rational_points() {
    let t = tower(3);
    let inf = [t.f6().zero(), t.f6().one(), t.f6().zero()];
    assert_eq!(frobenius(&t, inf), inf);
    for p in rational_places(&t) {
        let pt = p.point2(&t).unwrap().map(|c| t.embed(c));
        assert_eq!(frobenius(&t, pt), pt);
    }
}

#[test]
fn enumeration_respects_budget() {
    let t = tower(4);
    assert!(matches!(degree3_places(&t, 1000), Err(Error::BudgetExceeded { .. })));
}
