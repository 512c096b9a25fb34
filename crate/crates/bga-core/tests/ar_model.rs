use bga_core::ar_model::{e, fundamental_domain, tp, tu, tube_brick_candidates, Family, Params, Vertex, Window};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    (1i64..=5, 1i64..=5).prop_map(|(p, q)| Params::new(p, q).unwrap())
}

fn vertex(pr: Params) -> impl Strategy<Value = Vertex> {
    let cap = pr.p.max(pr.q) + 1;
    prop_oneof![
        (0u8..2, -20i64..20, -20i64..20).prop_map(|(c, x, y)| e(c, x, y)),
        (0u8..2, -20i64..20, 0..cap).prop_map(|(l, i, k)| tu(l, i, k)),
        (0u8..2, -20i64..20, 0..cap).prop_map(|(l, i, k)| tp(l, i, k)),
    ]
}

fn params_and_vertex() -> impl Strategy<Value = (Params, Vertex)> {
    params().prop_flat_map(|pr| (Just(pr), vertex(pr)))
}

#[test]
fn rejects_non_positive_parameters() {
    assert!(Params::new(0, 3).is_err());
    assert!(Params::new(2, -1).is_err());
    assert_eq!(Params::new(2, 3).unwrap().simple_count(), 5);
}

#[test]
fn canonical_forms() {
    let pr = Params::new(3, 3).unwrap();
    assert_eq!(e(0, -2, 3).canonical(pr), e(0, 1, 0));
    assert_eq!(tu(0, 7, 2).canonical(pr), tu(0, 1, 2));
    assert_eq!(tp(1, -1, 0).canonical(pr), tp(1, 2, 0));
}

#[test]
fn tau_and_omega_on_examples() {
    let pr = Params::new(2, 3).unwrap();
    assert_eq!(e(0, 0, 0).tau(pr), e(0, -3, 2));
    assert_eq!(e(0, 4, 1).omega_inv(pr), e(1, 5, 2).canonical(pr));
    assert_eq!(tu(1, 2, 1).omega(pr), tu(0, 1, 1));
    assert_eq!(tp(0, 0, 0).omega(pr), tp(1, 0, 0));
}

#[test]
fn tubes_have_period_rank() {
    let pr = Params::new(2, 3).unwrap();
    for family in Family::ALL {
        let start = Vertex::Tube { family, level: 0, idx: 1, ht: 0 };
        let mut v = start;
        for step in 1..=pr.rank(family) {
            v = v.tau(pr);
            assert_eq!(v == start, step == pr.rank(family));
        }
    }
}

#[test]
fn euclidean_vertices_are_not_tau_periodic() {
    let pr = Params::new(2, 2).unwrap();
    for v in fundamental_domain(pr, 0).into_iter().filter(Vertex::is_euclid) {
        let mut w = v;
        for _ in 0..20 {
            w = w.tau(pr);
            assert_ne!(w, v);
        }
    }
}

#[test]
fn fundamental_domain_sizes() {
    for (p, q) in [(1, 1), (2, 2), (2, 3), (3, 4)] {
        let pr = Params::new(p, q).unwrap();
        let expected = 2 * p * q + 2 * (p + q);
        assert_eq!(fundamental_domain(pr, 0).len() as i64, expected);
    }
}

#[test]
fn tube_brick_candidates_have_bounded_height() {
    let pr = Params::new(2, 4).unwrap();
    let pool = tube_brick_candidates(pr);
    let unprimed = pool.iter().filter(|v| matches!(v, Vertex::Tube { family: Family::Unprimed, .. })).count();
    let primed = pool.iter().filter(|v| matches!(v, Vertex::Tube { family: Family::Primed, .. })).count();
    assert_eq!(unprimed, 2 * 4 * 3);
    assert_eq!(primed, 2 * 2);
}

#[test]
fn window_pools_are_canonical_and_cover_a_period() {
    let pr = Params::new(3, 2).unwrap();
    let w = Window::periods_around(pr, 0, 0, 2);
    assert!(w.covers_period());
    let pool = w.brick_pool();
    for v in fundamental_domain(pr, 0).into_iter().filter(|v| v.is_brick_candidate(pr)) {
        assert!(pool.contains(&v), "{v} missing from window pool");
    }
    assert!(pool.iter().all(|v| v.canonical(pr) == *v));
}

#[test]
fn text_syntax_errors() {
    for bad in ["", "E(0,1)", "E(3,0,0)", "TX(0,0,0)", "TU(0,0,-2)", "E(0,a,1)"] {
        assert!(bad.parse::<Vertex>().is_err(), "{bad} should not parse");
    }
}

proptest! {
    #[test]
    fn canonical_is_idempotent((pr, v) in params_and_vertex()) {
        let c = v.canonical(pr);
        prop_assert_eq!(c.canonical(pr), c);
        prop_assert_eq!(v.shifted_lift(pr, 3).canonical(pr), c);
    }

    #[test]
    fn omega_is_invertible((pr, v) in params_and_vertex()) {
        let c = v.canonical(pr);
        prop_assert_eq!(v.omega(pr).omega_inv(pr), c);
        prop_assert_eq!(v.omega_inv(pr).omega(pr), c);
        prop_assert_eq!(v.tau(pr).tau_inv(pr), c);
    }

    #[test]
    fn omega_squared_is_tau((pr, v) in params_and_vertex()) {
        prop_assert_eq!(v.omega(pr).omega(pr), v.tau(pr));
    }

    #[test]
    fn omega_preserves_part_orbits((pr, v) in params_and_vertex()) {
        prop_assert_eq!(v.omega(pr).part(), v.part().omega());
        prop_assert_eq!(v.tau(pr).part(), v.part());
    }

    #[test]
    fn display_round_trips((_pr, v) in params_and_vertex()) {
        let text = v.to_string();
        prop_assert_eq!(text.parse::<Vertex>().unwrap(), v);
        let json = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Vertex>(&json).unwrap(), v);
    }

    #[test]
    fn brick_candidacy_is_invariant((pr, v) in params_and_vertex()) {
        let b = v.is_brick_candidate(pr);
        prop_assert_eq!(v.tau(pr).is_brick_candidate(pr), b);
        prop_assert_eq!(v.omega(pr).is_brick_candidate(pr), b);
    }
}
