//! Brute-force re-derivations used as ground truth.
//!
//! Everything here is computed from the pairwise predicate
//! [`stable_hom_nonzero`] alone: supports and bi-perpendicular sets by sweeping
//! a window, and maximal orthogonal systems by plain backtracking.

use bga_core::ar_model::{canonical_set, e, fundamental_domain, Family, Params, Vertex, Window};
use bga_core::hom_calculus::{biperp, lsupp, rsupp, stable_hom_nonzero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("window does not cover a full period")]
    WindowTooSmall,
    #[error("anchor {0} is not Euclidean")]
    AnchorNotEuclidean(String),
}

fn check_window(w: &Window) -> Result<(), OracleError> {
    if w.covers_period() {
        Ok(())
    } else {
        Err(OracleError::WindowTooSmall)
    }
}

/// Whether two distinct vertices have no stable maps in either direction.
pub fn orthogonal(x: Vertex, y: Vertex, pr: Params) -> bool {
    x != y && !stable_hom_nonzero(x, y, pr) && !stable_hom_nonzero(y, x, pr)
}

/// Brick candidates `Y` of the window with `Hom(X,Y) ≠ 0`.
pub fn brute_rsupp(x: Vertex, w: &Window) -> Result<Vec<Vertex>, OracleError> {
    check_window(w)?;
    Ok(w.brick_pool().into_iter().filter(|&y| stable_hom_nonzero(x, y, w.params)).collect())
}

/// Brick candidates `Y` of the window with `Hom(Y,X) ≠ 0`.
pub fn brute_lsupp(x: Vertex, w: &Window) -> Result<Vec<Vertex>, OracleError> {
    check_window(w)?;
    Ok(w.brick_pool().into_iter().filter(|&y| stable_hom_nonzero(y, x, w.params)).collect())
}

/// Brick candidates of the window with no stable maps to or from any member
/// of `s`.
pub fn brute_biperp(s: &[Vertex], w: &Window) -> Result<Vec<Vertex>, OracleError> {
    check_window(w)?;
    let pr = w.params;
    Ok(w
        .brick_pool()
        .into_iter()
        .filter(|&y| s.iter().all(|&x| !stable_hom_nonzero(x, y, pr) && !stable_hom_nonzero(y, x, pr)))
        .collect())
}

/// The brick candidates of the fundamental domain.
pub fn fundamental_pool(pr: Params) -> Vec<Vertex> {
    fundamental_domain(pr, pr.p.max(pr.q) - 2).into_iter().filter(|v| v.is_brick_candidate(pr)).collect()
}

/// Disagreements between the closed-form supports and bi-perpendicular
/// regions and the brute-force sweeps, for every brick candidate of the
/// fundamental pool, over a window of three periods.
pub fn formula_mismatches(pr: Params) -> Vec<String> {
    let w = Window::periods_around(pr, 0, 0, 3);
    let pool = w.brick_pool();
    let mut out = Vec::new();
    for x in fundamental_pool(pr) {
        let (r, l, b) = (rsupp(x, pr), lsupp(x, pr), biperp(&[x], pr));
        let brute_r = brute_rsupp(x, &w).expect("window covers a period");
        let brute_l = brute_lsupp(x, &w).expect("window covers a period");
        let brute_b = brute_biperp(&[x], &w).expect("window covers a period");
        for &y in &pool {
            for (name, formula, brute) in [("rsupp", &r, &brute_r), ("lsupp", &l, &brute_l), ("biperp", &b, &brute_b)] {
                if formula.contains(y, pr) != brute.contains(&y) {
                    out.push(format!("{name}({x}) at {y}"));
                }
            }
        }
    }
    out
}

/// The formula agreement check as a scenario report.
pub fn formula_scenario(pr: Params) -> ScenarioReport {
    let mismatches = formula_mismatches(pr);
    ScenarioReport::new(
        format!("closed-form supports against brute force at p={}, q={}", pr.p, pr.q),
        json!([]),
        json!(mismatches),
    )
}

/// Every orthogonal subset of `pool`, the empty set included.
pub fn orthogonal_subsets(pool: &[Vertex], pr: Params) -> Vec<Vec<Vertex>> {
    fn go(pool: &[Vertex], i: usize, chosen: &mut Vec<Vertex>, pr: Params, out: &mut Vec<Vec<Vertex>>) {
        if i == pool.len() {
            out.push(chosen.clone());
            return;
        }
        go(pool, i + 1, chosen, pr, out);
        if chosen.iter().all(|&c| orthogonal(c, pool[i], pr)) {
            chosen.push(pool[i]);
            go(pool, i + 1, chosen, pr, out);
            chosen.pop();
        }
    }
    let pool = canonical_set(pool.iter().copied(), pr);
    let mut out = Vec::new();
    go(&pool, 0, &mut Vec::new(), pr, &mut out);
    out.sort();
    out
}

/// The orthogonal subsets of `pool` that no further element of `pool` extends.
pub fn maximal_orthogonal_subsets(pool: &[Vertex], pr: Params) -> Vec<Vec<Vertex>> {
    let pool = canonical_set(pool.iter().copied(), pr);
    orthogonal_subsets(&pool, pr)
        .into_iter()
        .filter(|s| pool.iter().all(|&v| s.contains(&v) || s.iter().any(|&x| !orthogonal(x, v, pr))))
        .collect()
}

/// The triangle area below the tube vertex `(anchor, height)`: every vertex
/// whose interval lies inside `[anchor, anchor + height]`.
pub fn triangle_vertices(family: Family, level: u8, anchor: i64, height: i64, pr: Params) -> Vec<Vertex> {
    let mut out = Vec::new();
    for start in anchor..=anchor + height {
        for ht in 0..=anchor + height - start {
            out.push(Vertex::Tube { family, level, idx: start, ht });
        }
    }
    canonical_set(out, pr)
}

/// Result of an exhaustive enumeration of maximal systems.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerationReport {
    pub params: Params,
    pub anchor: Vertex,
    pub euclidean_only: bool,
    pub pool_size: usize,
    pub systems: Vec<Vec<Vertex>>,
    pub by_cardinality: BTreeMap<usize, usize>,
}

/// All maximal orthogonal systems of brick candidates containing a Euclidean
/// anchor, by backtracking over the brute-force bi-perpendicular pool.
pub fn exhaustive_max_ortho(pr: Params, anchor: Vertex, euclidean_only: bool) -> Result<EnumerationReport, OracleError> {
    let anchor = anchor.canonical(pr);
    let Vertex::Euclid { x, y, .. } = anchor else {
        return Err(OracleError::AnchorNotEuclidean(anchor.to_string()));
    };
    let w = Window::periods_around(pr, x, y, 4);
    let pool: Vec<Vertex> = brute_biperp(&[anchor], &w)?
        .into_iter()
        .filter(|v| !euclidean_only || v.is_euclid())
        .collect();
    let pool = canonical_set(pool, pr);
    let systems: Vec<Vec<Vertex>> = maximal_orthogonal_subsets(&pool, pr)
        .into_iter()
        .map(|s| canonical_set(s.into_iter().chain([anchor]), pr))
        .collect();
    let mut by_cardinality = BTreeMap::new();
    for s in &systems {
        *by_cardinality.entry(s.len()).or_insert(0) += 1;
    }
    Ok(EnumerationReport { params: pr, anchor, euclidean_only, pool_size: pool.len(), systems, by_cardinality })
}

/// One reproduced scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl ScenarioReport {
    fn new(scenario: impl Into<String>, expected: Value, actual: Value) -> Self {
        let pass = expected == actual;
        ScenarioReport { scenario: scenario.into(), expected, actual, pass }
    }
}

fn names(systems: &[Vec<Vertex>]) -> Value {
    let mut v: Vec<Vec<String>> = systems.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect();
    v.sort();
    json!(v)
}

fn quasi(idx: i64, ht: i64) -> Vertex {
    Vertex::Tube { family: Family::Unprimed, level: 0, idx, ht }
}

fn listed(pr: Params, sets: &[&[(i64, i64)]]) -> Vec<Vec<Vertex>> {
    sets.iter().map(|s| canonical_set(s.iter().map(|&(i, h)| quasi(i, h)), pr)).collect()
}

/// Orthogonal systems on the single triangle area of height `h` in a tube of
/// rank `h + 2`, as listed in the worked example.
fn triangle_example(h: i64) -> Vec<ScenarioReport> {
    let pr = Params::new(1, h + 2).expect("positive");
    let pool = triangle_vertices(Family::Unprimed, 0, 1, h, pr);
    let all: Vec<Vec<Vertex>> = orthogonal_subsets(&pool, pr).into_iter().filter(|s| !s.is_empty()).collect();
    let of_size = |k: usize| all.iter().filter(|s| s.len() == k).cloned().collect::<Vec<_>>();
    let singletons: Vec<Vec<Vertex>> = pool.iter().map(|v| vec![*v]).collect();
    let label = |what: &str| format!("triangle area height {h}: {what}");
    match h {
        0 => vec![ScenarioReport::new(label("all systems"), names(&listed(pr, &[&[(1, 0)]])), names(&all))],
        1 => {
            let expected = listed(pr, &[&[(1, 0)], &[(2, 0)], &[(1, 0), (2, 0)], &[(1, 1)]]);
            vec![ScenarioReport::new(label("all systems"), names(&expected), names(&all))]
        }
        2 => {
            let pairs = listed(
                pr,
                &[&[(1, 0), (2, 0)], &[(1, 0), (2, 1)], &[(1, 0), (3, 0)], &[(1, 1), (3, 0)], &[(1, 2), (2, 0)], &[(2, 0), (3, 0)]],
            );
            let triple = listed(pr, &[&[(1, 0), (2, 0), (3, 0)]]);
            vec![
                ScenarioReport::new(label("one object"), names(&singletons), names(&of_size(1))),
                ScenarioReport::new(label("two objects"), names(&pairs), names(&of_size(2))),
                ScenarioReport::new(label("three objects"), names(&triple), names(&of_size(3))),
                ScenarioReport::new(label("larger systems"), json!(0), json!(all.iter().filter(|s| s.len() > 3).count())),
            ]
        }
        _ => {
            let expected = listed(
                pr,
                &[
                    &[(1, 1), (3, 1)],
                    &[(1, 3), (2, 1)],
                    &[(1, 0), (2, 0), (3, 1)],
                    &[(1, 0), (2, 1), (4, 0)],
                    &[(1, 0), (2, 2), (3, 0)],
                    &[(1, 1), (3, 0), (4, 0)],
                    &[(1, 2), (2, 0), (4, 0)],
                    &[(1, 3), (2, 0), (3, 0)],
                    &[(1, 0), (2, 0), (3, 0), (4, 0)],
                ],
            );
            let maximal = maximal_orthogonal_subsets(&pool, pr);
            vec![ScenarioReport::new(label("maximal systems"), names(&expected), names(&maximal))]
        }
    }
}

/// The three paired shapes of triangle areas on the two tubes of one family.
fn paired_pools(family: Family, anchor: i64, h: i64, pr: Params) -> [(&'static str, Vec<Vertex>); 3] {
    let union = |a: Vec<Vertex>, b: Vec<Vertex>| canonical_set(a.into_iter().chain(b), pr);
    [
        ("paired", union(triangle_vertices(family, 0, anchor, h, pr), triangle_vertices(family, 1, anchor, h, pr))),
        (
            "lower-shifted",
            union(triangle_vertices(family, 0, anchor, h - 1, pr), triangle_vertices(family, 1, anchor, h, pr)),
        ),
        (
            "upper-shifted",
            union(triangle_vertices(family, 0, anchor, h, pr), triangle_vertices(family, 1, anchor + 1, h - 1, pr)),
        ),
    ]
}

/// Cardinalities of maximal systems on paired triangle areas for every rank
/// in `2..=6` and every admissible height.
fn paired_cardinalities() -> Vec<ScenarioReport> {
    let mut out = Vec::new();
    for r in 2..=6 {
        let pr = Params::new(1, r).expect("positive");
        for h in 0..=r - 2 {
            for (shape, pool) in paired_pools(Family::Unprimed, 1, h, pr) {
                let sizes: Vec<usize> = maximal_orthogonal_subsets(&pool, pr).iter().map(Vec::len).collect();
                let mut distinct = sizes.clone();
                distinct.sort();
                distinct.dedup();
                out.push(ScenarioReport::new(
                    format!("{shape} triangle areas rank {r} height {h}: maximal sizes"),
                    json!([h + 1]),
                    json!(distinct),
                ));
            }
        }
    }
    out
}

/// Euclidean parts of the maximal systems through `E(0,1,0)` at `p = q = 3`
/// as listed in the worked example.
pub fn listed_euclidean_systems() -> Vec<Vec<Vertex>> {
    let pr = Params::new(3, 3).expect("positive");
    let u0 = [e(0, 1, 0), e(0, -1, 1)];
    let u1 = [e(0, 1, 0), e(0, -1, 2), e(0, 0, 1)];
    let v = [
        [e(1, -1, 3), e(1, 0, 1)],
        [e(1, -1, 3), e(1, 1, 1)],
        [e(1, -1, 2), e(1, 0, 1)],
        [e(1, -1, 2), e(1, 1, 1)],
    ];
    let mut out: Vec<Vec<Vertex>> = v.iter().map(|vi| canonical_set(u0.iter().chain(vi).copied(), pr)).collect();
    out.push(canonical_set(u1.iter().copied().chain([e(1, -1, 3), e(1, 0, 2), e(1, 1, 1)]), pr));
    out.sort();
    out
}

fn euclidean_example() -> Result<ScenarioReport, OracleError> {
    let pr = Params::new(3, 3).expect("positive");
    let report = exhaustive_max_ortho(pr, e(0, 1, 0), true)?;
    Ok(ScenarioReport::new(
        "maximal Euclidean systems through E(0,1,0) at p=q=3",
        names(&listed_euclidean_systems()),
        names(&report.systems),
    ))
}

fn cardinality_scenarios() -> Result<Vec<ScenarioReport>, OracleError> {
    let mut out = Vec::new();
    for (p, q) in [(2, 2), (2, 3), (3, 3)] {
        let pr = Params::new(p, q).expect("positive");
        let report = exhaustive_max_ortho(pr, e(0, 0, 0), false)?;
        let sizes: Vec<usize> = report.by_cardinality.keys().copied().collect();
        out.push(ScenarioReport::new(
            format!("maximal systems through E(0,0,0) at p={p}, q={q}: sizes"),
            json!([p + q]),
            json!(sizes),
        ));
    }
    Ok(out)
}

/// Reruns the fixed scenario list and compares each outcome with the
/// published value.
pub fn reproduce_paper_counts() -> Result<Vec<ScenarioReport>, OracleError> {
    let mut out: Vec<ScenarioReport> = (0..=3).flat_map(triangle_example).collect();
    out.extend(paired_cardinalities());
    out.push(euclidean_example()?);
    out.extend(cardinality_scenarios()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_sizes() {
        let pr = Params::new(1, 5).unwrap();
        assert_eq!(triangle_vertices(Family::Unprimed, 0, 1, 3, pr).len(), 10);
        assert!(triangle_vertices(Family::Unprimed, 0, 1, -1, pr).is_empty());
    }

    #[test]
    fn empty_set_biperp_is_whole_pool() {
        let pr = Params::new(2, 3).unwrap();
        let w = Window::periods_around(pr, 0, 0, 3);
        assert_eq!(brute_biperp(&[], &w).unwrap(), w.brick_pool());
    }

    #[test]
    fn small_window_rejected() {
        let pr = Params::new(3, 3).unwrap();
        let w = Window::new(pr, (0, 1), (0, 5), 1);
        assert_eq!(brute_biperp(&[], &w), Err(OracleError::WindowTooSmall));
    }
}
