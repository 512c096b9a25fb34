use bga_core::ar_model::{canonical_set, e, tp, tu, Params, Vertex, Window};
use bga_core::extension_engine::{
    certify_sms, closure, default_window, extract_params, parse_trace, replay, trace_json_lines, triangle_catalog,
    window_with_margin, DistinguishedTriangle, EngineError, Rule,
};
use bga_core::ortho::{maximal_systems_containing, PoolFilter};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn pr(p: i64, q: i64) -> Params {
    Params::new(p, q).unwrap()
}

fn triangle(a: Vertex, mids: &[Vertex], c: Vertex, p: Params) -> DistinguishedTriangle {
    let mut mids: Vec<Vertex> = mids.iter().map(|v| v.canonical(p)).collect();
    mids.sort();
    DistinguishedTriangle { a: a.canonical(p), mids, c: c.canonical(p) }
}

fn example_six() -> Vec<Vertex> {
    vec![e(0, 1, 0), e(0, -1, 2), e(0, 0, 1), e(1, -1, 3), e(1, 0, 2), e(1, 1, 1)]
}

/// Every maximal orthogonal system containing a Euclidean vertex, up to
/// translation, for the given parameters.
fn maximal_systems(p: Params) -> Vec<Vec<Vertex>> {
    let mut seen = BTreeSet::new();
    for x in 0..p.p {
        for y in 0..p.q {
            for s in maximal_systems_containing(&[e(0, x, y)], p, PoolFilter::All).unwrap() {
                seen.insert(bga_core::ortho::normalize_up_to_translation(&s, p));
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn catalog_contains_the_anchor_triangles() {
    let p = pr(3, 3);
    let w = Window::periods_around(p, 0, 0, 2);
    let catalog = triangle_catalog(p, &w);
    let anchor = triangle(tu(0, 0, 0), &[e(0, 0, 0)], e(0, 0, 1), p);
    assert!(catalog.contains(&anchor));
    assert!(catalog.contains(&triangle(e(0, 0, 0), &[e(0, 0, 1), e(0, 1, 0)], e(0, 1, 1), p)));
    for k in 0..2 {
        let chain = triangle(tp(0, k, 0), &[e(0, k, 0)], e(0, k + 1, 0), p);
        assert!(catalog.contains(&chain), "horizontal step {k}");
    }
    assert!(catalog.contains(&triangle(tu(0, 0, 0), &[tu(0, 0, 1)], tu(0, 1, 0), p)));
}

#[test]
fn catalog_is_omega_and_tau_equivariant() {
    let p = pr(2, 3);
    let w = Window::periods_around(p, 0, 0, 3);
    let catalog: BTreeSet<DistinguishedTriangle> = triangle_catalog(p, &w).into_iter().collect();
    let inner = Window::periods_around(p, 0, 0, 1);
    let inside = |t: &DistinguishedTriangle| {
        inner.contains(t.a) && inner.contains(t.c) && t.mids.iter().all(|v| inner.contains(*v))
    };
    let mut checked = 0;
    for t in catalog.iter().filter(|t| inside(t)) {
        for image in [t.omega(p), t.tau(p)] {
            assert!(catalog.contains(&image), "{t:?} maps to {image:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn seeds_with_a_primed_quasi_simple_reach_the_next_column() {
    let p = pr(2, 2);
    let s = [e(0, 0, 0), tp(1, 1, 0)];
    let state = closure(&s, &default_window(&s, p));
    assert!(state.in_f.contains(&e(0, 1, 0).canonical(p)));
    let produced = state.trace.iter().find(|t| t.produced == e(0, 1, 0).canonical(p)).unwrap();
    assert_ne!(produced.rule, Rule::Seed);
}

#[test]
fn a_single_seed_derives_nothing() {
    for (a, b) in [(1, 1), (2, 3), (3, 3)] {
        let p = pr(a, b);
        let s = [e(0, 0, 0)];
        let state = closure(&s, &default_window(&s, p));
        assert_eq!(state.in_f, s.iter().copied().collect::<BTreeSet<_>>());
    }
}

#[test]
fn example_six_certifies_and_replays() {
    let p = pr(3, 3);
    let s = example_six();
    let cert = certify_sms(&s, p, None).unwrap();
    assert!(cert.certified && !cert.inconclusive);
    assert!(cert.missing.is_empty());
    assert_eq!(cert.derivations.len(), s.len());
    let text = trace_json_lines(&cert.trace);
    let parsed = parse_trace(&text).unwrap();
    assert_eq!(parsed, cert.trace);
    let state = closure(&s, &cert.window);
    assert_eq!(replay(&parsed, p).unwrap(), state.in_f);
}

#[test]
fn tampered_traces_are_rejected() {
    let p = pr(3, 3);
    let s = example_six();
    let mut trace = closure(&s, &default_window(&s, p)).trace;
    let first_derived = trace.iter().position(|t| t.rule != Rule::Seed).unwrap();
    let seed = trace.iter().position(|t| trace[first_derived].premises(p).contains(&t.produced)).unwrap();
    trace.remove(seed);
    assert!(matches!(replay(&trace, p), Err(EngineError::ReplayMismatch(_))));
}

#[test]
fn systems_without_euclidean_members_are_not_certified() {
    let p = pr(2, 2);
    let cert = certify_sms(&[tu(0, 0, 0), tp(0, 0, 0)], p, None).unwrap();
    assert!(!cert.certified);
    assert!(!cert.inconclusive);
}

#[test]
fn certification_checks_its_inputs() {
    let p = pr(2, 2);
    assert_eq!(certify_sms(&[e(0, 0, 0), e(0, 1, 1)], p, None).unwrap_err(), EngineError::NotOrthogonal);
    let small = Window::new(p, (0, 1), (0, 1), 0);
    assert!(matches!(certify_sms(&[e(0, 5, 0)], p, Some(small)), Err(EngineError::WindowTooSmall(_))));
}

#[test]
fn every_maximal_system_certifies() {
    for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let p = pr(a, b);
        let systems = maximal_systems(p);
        assert!(!systems.is_empty());
        for s in systems {
            let cert = certify_sms(&s, p, None).unwrap();
            assert!(cert.certified, "({a},{b}) {s:?} missing {:?}", cert.missing);
        }
    }
}

#[test]
fn punctured_systems_are_not_certified() {
    let p = pr(2, 2);
    for s in maximal_systems(p) {
        for i in 0..s.len() {
            let mut punctured = s.clone();
            punctured.remove(i);
            let cert = certify_sms(&punctured, p, None).unwrap();
            assert!(!cert.certified, "{punctured:?}");
        }
    }
}

#[test]
fn parameters_predict_the_second_component() {
    let p = pr(3, 3);
    let s = example_six();
    let params = extract_params(&s, p).unwrap();
    assert_eq!(params.comp0.len(), 3);
    let expected = canonical_set([e(1, -1, 3), e(1, 0, 2), e(1, 1, 1)], p);
    assert_eq!(canonical_set(params.predicted_comp1.iter().copied(), p), expected);

    for (a, b) in [(2, 2), (2, 3)] {
        let p = pr(a, b);
        for s in maximal_systems(p) {
            let params = extract_params(&s, p).unwrap();
            let actual: Vec<Vertex> = s.iter().copied().filter(|v| v.is_euclid() && v.layer() == 1).collect();
            assert_eq!(canonical_set(params.predicted_comp1, p), actual, "{s:?}");
        }
    }
}

#[test]
fn perturbed_systems_are_rejected_by_parameter_extraction() {
    let p = pr(2, 3);
    for s in maximal_systems(p) {
        let Some(i) = s.iter().position(Vertex::is_tube) else { continue };
        let mut perturbed = s.clone();
        perturbed[i] = s[i].tau(p);
        match extract_params(&perturbed, p) {
            Err(EngineError::NotMaximal) | Err(EngineError::ParameterNotUnique(_)) => {}
            other => panic!("{perturbed:?} gave {other:?}"),
        }
    }
    assert_eq!(extract_params(&[e(0, 0, 0)], p).unwrap_err(), EngineError::NotMaximal);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closure_is_monotone(mask in 0u32..64, extra in 0usize..6) {
        let p = pr(3, 3);
        let six = example_six();
        let w = window_with_margin(&six, p, 3);
        let small: Vec<Vertex> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| six[i]).collect();
        let mut large = small.clone();
        if !large.contains(&six[extra]) {
            large.push(six[extra]);
        }
        let f_small = closure(&small, &w).in_f;
        let f_large = closure(&large, &w).in_f;
        prop_assert!(f_small.is_subset(&f_large));
        prop_assert!(f_small.iter().all(|v| w.contains(*v)));
    }

    #[test]
    fn replay_reproduces_the_closure(mask in 1u32..64) {
        let p = pr(3, 3);
        let six = example_six();
        let s: Vec<Vertex> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| six[i]).collect();
        let state = closure(&s, &default_window(&six, p));
        prop_assert_eq!(replay(&state.trace, p).unwrap(), state.in_f.clone());
        for (k, entry) in state.trace.iter().enumerate() {
            for premise in entry.premises(p) {
                let position = state.trace.iter().position(|t| t.produced == premise).unwrap();
                prop_assert!(position < k);
            }
        }
    }
}
