use bga_core::ar_model::{canonical_set, e, fundamental_domain, tp, tu, Family, Params, Vertex};
use bga_core::hom_calculus::stable_hom_nonzero;
use bga_core::ortho::{
    enumerate_ortho_on_triangle, euclidean_ortho_check, is_orthogonal_system, maximal_on_triangle,
    maximal_systems_containing, maximality, normalize_up_to_translation, quasi_simple_chain_shape, OrthoError,
    PoolFilter, TrianglePool,
};
use proptest::prelude::*;

fn pr(p: i64, q: i64) -> Params {
    Params::new(p, q).unwrap()
}

fn pairwise_orthogonal(s: &[Vertex], pr: Params) -> bool {
    s.iter().enumerate().all(|(i, &x)| {
        s.iter().enumerate().all(|(j, &y)| i == j || !stable_hom_nonzero(x, y, pr))
    })
}

fn count_by_size(systems: &[Vec<Vertex>], size: usize) -> usize {
    systems.iter().filter(|s| s.len() == size).count()
}

fn in_family(v: &Vertex, family: Family) -> bool {
    matches!(v, Vertex::Tube { family: f, .. } if *f == family)
}

#[test]
fn orthogonal_system_examples() {
    let p = pr(3, 3);
    assert!(is_orthogonal_system(&[e(0, 1, 0), e(0, -1, 1)], p));
    assert!(!is_orthogonal_system(&[tu(0, 1, 0), tu(0, 1, 1)], p));
    for v in fundamental_domain(p, 1) {
        assert!(is_orthogonal_system(&[v], p));
    }
    assert!(!is_orthogonal_system(&[tu(0, 0, 2)], p));
}

#[test]
fn euclidean_check_examples() {
    let p = pr(3, 3);
    assert!(euclidean_ortho_check(&[e(0, 1, 0), e(0, -1, 2), e(0, 0, 1)], p));
    assert!(euclidean_ortho_check(&[e(0, 0, 1), e(0, -1, 2), e(0, 1, 0)], p));
    assert!(!euclidean_ortho_check(&[e(0, 0, 0), e(0, -1, 0)], p));
}

#[test]
fn euclidean_check_agrees_with_pairwise_homs_on_a_window() {
    let p = pr(3, 3);
    let window: Vec<Vertex> = (0..3).flat_map(|x| (0..4).map(move |y| e(0, x, y))).collect();
    assert_eq!(canonical_set(window.iter().copied(), p).len(), 12);
    for mask in 0u32..(1 << window.len()) {
        let subset: Vec<Vertex> = (0..window.len()).filter(|i| mask >> i & 1 == 1).map(|i| window[i]).collect();
        assert_eq!(euclidean_ortho_check(&subset, p), pairwise_orthogonal(&subset, p), "{subset:?}");
    }
}

#[test]
fn maximality_examples() {
    let p = pr(3, 3);
    let six = [e(0, 1, 0), e(0, -1, 2), e(0, 0, 1), e(1, -1, 3), e(1, 0, 2), e(1, 1, 1)];
    let report = maximality(&six, p);
    assert!(report.is_maximal, "{:?}", report.witnesses);
    assert!(report.homogeneous_blocked);

    let u0 = [e(0, 1, 0), e(0, -1, 1)];
    let report = maximality(&u0, p);
    assert!(!report.is_maximal);
    assert!(report.witnesses.contains(&e(1, -1, 3).canonical(p)));

    let tubes = [tu(0, 0, 0), tp(1, 0, 0)];
    let report = maximality(&tubes, p);
    assert!(!report.homogeneous_blocked);
    assert!(!report.is_maximal);
}

#[test]
fn triangle_enumeration_examples() {
    let p = pr(1, 4);
    let single = |height| TrianglePool::Single { family: Family::Unprimed, level: 0, anchor: 0, height };

    let h1 = enumerate_ortho_on_triangle(single(1), p).unwrap();
    assert_eq!(h1.iter().filter(|s| !s.is_empty()).count(), 4);

    let h2 = enumerate_ortho_on_triangle(single(2), p).unwrap();
    assert_eq!(count_by_size(&h2, 2), 6);
    assert_eq!(count_by_size(&h2, 3), 1);
    assert_eq!(count_by_size(&h2, 1), 6);

    assert_eq!(enumerate_ortho_on_triangle(single(-1), p).unwrap(), vec![Vec::<Vertex>::new()]);
    assert_eq!(
        enumerate_ortho_on_triangle(single(3), p).unwrap_err(),
        OrthoError::HeightOutOfRange { height: 3, max: 2 }
    );
}

#[test]
fn paired_triangle_cardinalities() {
    for rank in 2..=6 {
        let p = pr(1, rank);
        for height in 0..=rank - 2 {
            for anchor in [0, 1] {
                let pool = TrianglePool::Paired { family: Family::Unprimed, anchor, height };
                let systems = maximal_on_triangle(pool, p).unwrap();
                assert!(!systems.is_empty());
                for s in &systems {
                    assert_eq!(s.len() as i64, height + 1, "rank {rank} height {height}: {s:?}");
                    let boundary = s.iter().any(|v| match *v {
                        Vertex::Tube { idx, .. } => (idx - anchor).rem_euclid(rank) == 0,
                        Vertex::Euclid { .. } => false,
                    });
                    assert!(boundary, "rank {rank} height {height}: {s:?}");
                }
            }
        }
    }
}

#[test]
fn euclidean_maximal_systems_through_a_vertex() {
    let p = pr(3, 3);
    let systems = maximal_systems_containing(&[e(0, 1, 0)], p, PoolFilter::EuclideanOnly).unwrap();
    assert_eq!(systems.len(), 15);
    let six = canonical_set([e(0, 1, 0), e(0, -1, 2), e(0, 0, 1), e(1, -1, 3), e(1, 0, 2), e(1, 1, 1)], p);
    assert!(systems.contains(&six));
    assert_eq!(count_by_size(&systems, 2), 2);
    assert_eq!(count_by_size(&systems, 4), 12);
    assert!(systems.contains(&canonical_set([e(0, 1, 0), e(1, -1, 1)], p)));
    assert!(systems.iter().any(|s| s.contains(&e(0, 0, 2))));
    for s in &systems {
        assert!(is_orthogonal_system(s, p));
    }
}

#[test]
fn maximal_systems_have_n_members() {
    let p = pr(2, 2);
    let systems = maximal_systems_containing(&[e(0, 0, 0)], p, PoolFilter::All).unwrap();
    assert!(!systems.is_empty());
    assert!(systems.iter().all(|s| s.len() == 4));
}

#[test]
fn maximal_systems_require_a_euclidean_member() {
    let p = pr(2, 2);
    assert_eq!(
        maximal_systems_containing(&[tu(0, 0, 0)], p, PoolFilter::All).unwrap_err(),
        OrthoError::NoEuclideanMember
    );
    assert!(matches!(
        maximal_systems_containing(&[e(0, 0, 0), e(0, 1, 1)], p, PoolFilter::All),
        Err(OrthoError::NotOrthogonal(_))
    ));
}

#[test]
fn quasi_simple_chains() {
    let p = pr(3, 3);
    assert!(quasi_simple_chain_shape(&[tp(1, 1, 0), tp(0, 2, 0), tp(0, 3, 0)], Family::Primed, 1, 3, p));
    assert!(!quasi_simple_chain_shape(&[tp(0, 1, 0), tp(1, 2, 0)], Family::Primed, 1, 2, p));
    assert!(quasi_simple_chain_shape(&[], Family::Primed, 1, 0, p));
}

#[test]
fn normalization_is_translation_invariant() {
    let p = pr(2, 3);
    let s = [e(0, 0, 0), tu(1, 0, 0)];
    let shifted: Vec<Vertex> = s.iter().map(|v| v.tau(p).tau(p).tau(p)).collect();
    assert_eq!(normalize_up_to_translation(&s, p), normalize_up_to_translation(&shifted, p));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maximal_systems_have_balanced_cardinalities(
        p in 1i64..=3,
        q in 1i64..=3,
        comp in 0u8..2,
        x in -4i64..4,
        y in -4i64..4,
    ) {
        let params = pr(p, q);
        let systems = maximal_systems_containing(&[e(comp, x, y)], params, PoolFilter::All).unwrap();
        prop_assert!(!systems.is_empty());
        for s in &systems {
            prop_assert_eq!(s.len() as i64, p + q);
            let k0 = s.iter().filter(|v| v.is_euclid() && v.layer() == 0).count() as i64;
            let k1 = s.iter().filter(|v| v.is_euclid() && v.layer() == 1).count() as i64;
            prop_assert_eq!(k0, k1);
            let unprimed = s.iter().filter(|v| in_family(v, Family::Unprimed)).count() as i64;
            let primed = s.iter().filter(|v| in_family(v, Family::Primed)).count() as i64;
            prop_assert_eq!(unprimed, q - k0);
            prop_assert_eq!(primed, p - k0);
            prop_assert!(maximality(s, params).is_maximal);
        }
    }

    #[test]
    fn euclidean_check_agrees_with_pairwise(
        p in 1i64..=4,
        q in 1i64..=4,
        coords in proptest::collection::vec((-6i64..6, -6i64..6), 1..6),
    ) {
        let params = pr(p, q);
        let list = canonical_set(coords.iter().map(|&(x, y)| e(0, x, y)), params);
        prop_assert_eq!(euclidean_ortho_check(&list, params), pairwise_orthogonal(&list, params));
    }
}
