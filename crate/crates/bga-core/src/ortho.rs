//! Orthogonal systems of stable bricks: the orthogonality predicate,
//! enumeration on triangle areas, maximality and maximal extension.

use crate::ar_model::{canonical_set, div_ceil, div_floor, e, fundamental_domain, tube_brick_candidates, Family, Params, Vertex};
use crate::hom_calculus::{biperp, lift_in_box, orthogonal_pair, Region};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrthoError {
    #[error("triangle height {height} exceeds rank - 2 = {max}")]
    HeightOutOfRange { height: i64, max: i64 },
    #[error("the system has no Euclidean member")]
    NoEuclideanMember,
    #[error("{0} is not an orthogonal system")]
    NotOrthogonal(String),
}

/// Whether `s` is a set of brick candidates with vanishing stable Homs
/// between distinct members.
pub fn is_orthogonal_system(s: &[Vertex], pr: Params) -> bool {
    let s = canonical_set(s.iter().copied(), pr);
    s.iter().all(|v| v.is_brick_candidate(pr))
        && s.iter().enumerate().all(|(i, &x)| s[i + 1..].iter().all(|&y| orthogonal_pair(x, y, pr)))
}

/// Lifts every vertex of one component into the open band next to `first`,
/// returning `None` when some vertex has no such lift.
fn lift_into_band(first: Vertex, rest: &[Vertex], pr: Params) -> Option<Vec<(i64, i64)>> {
    let (a1, b1) = match first {
        Vertex::Euclid { x, y, .. } => (x, y),
        Vertex::Tube { .. } => return None,
    };
    let mut out = vec![(a1, b1)];
    for v in rest {
        let (i, j) = match *v {
            Vertex::Euclid { x, y, .. } => (x, y),
            Vertex::Tube { .. } => return None,
        };
        // the band a1-p < x < a1, b1 < y < b1+q holds at most one lift
        let l = div_ceil(b1 + 1 - j, pr.q);
        let (x, y) = (i - pr.p * l, j + pr.q * l);
        if !(a1 - pr.p < x && x < a1 && y < b1 + pr.q) {
            return None;
        }
        out.push((i - pr.p * l, j + pr.q * l));
    }
    Some(out)
}

fn single_component_check(members: &[Vertex], pr: Params) -> bool {
    let members = canonical_set(members.iter().copied(), pr);
    let Some((&first, rest)) = members.split_first() else {
        return true;
    };
    let Some(lifts) = lift_into_band(first, rest, pr) else {
        return false;
    };
    lifts.iter().enumerate().all(|(i, &(ai, bi))| {
        lifts[i + 1..].iter().all(|&(aj, bj)| (ai < aj && bj < bi) || (aj < ai && bi < bj))
    })
}

/// Orthogonality of a set of Euclidean vertices decided by the band and
/// anti-monotonicity conditions, without evaluating Hom predicates.
pub fn euclidean_ortho_check(list: &[Vertex], pr: Params) -> bool {
    if list.iter().any(|v| !v.is_euclid()) {
        return false;
    }
    let comp0: Vec<Vertex> = list.iter().copied().filter(|v| v.layer() == 0).collect();
    let comp1: Vec<Vertex> = list.iter().copied().filter(|v| v.layer() == 1).collect();
    if !single_component_check(&comp0, pr) || !single_component_check(&comp1, pr) {
        return false;
    }
    comp0.iter().all(|m| {
        let Vertex::Euclid { x: a, y: b, .. } = *m else { unreachable!() };
        comp1.iter().all(|n| {
            let Vertex::Euclid { x: c, y: d, .. } = *n else { unreachable!() };
            lift_in_box(pr, a - pr.p + 1, a, b + 1, b + pr.q, c, d)
        })
    })
}

/// Result of testing a system for maximality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MaximalityReport {
    pub is_maximal: bool,
    /// Brick candidates that can be added while keeping orthogonality.
    pub witnesses: Vec<Vertex>,
    /// Whether the system excludes every homogeneous tube module.
    pub homogeneous_blocked: bool,
}

/// Brick candidates orthogonal to every member of `s` and not in `s`.
///
/// When `s` has a Euclidean member the bi-perpendicular region is finite and
/// enumerated exactly; otherwise Euclidean witnesses are reported by their
/// representatives in the fundamental domain.
pub fn witness_pool(s: &[Vertex], pr: Params) -> Vec<Vertex> {
    let s = canonical_set(s.iter().copied(), pr);
    let region = biperp(&s, pr);
    let mut out = Vec::new();
    let finite: Option<Vec<Vertex>> = crate::ar_model::Part::ALL
        .into_iter()
        .map(|part| region.get(part).enumerate_finite(pr))
        .collect::<Option<Vec<Vec<Vertex>>>>()
        .map(|parts| parts.concat());
    match finite {
        Some(all) if s.iter().any(Vertex::is_euclid) => out.extend(all),
        _ => {
            let mut candidates: Vec<Vertex> = fundamental_domain(pr, 0).into_iter().filter(Vertex::is_euclid).collect();
            candidates.extend(tube_brick_candidates(pr));
            out.extend(candidates.into_iter().filter(|v| region.contains(*v, pr)));
        }
    }
    let out = canonical_set(out, pr);
    out.into_iter().filter(|v| v.is_brick_candidate(pr) && !s.contains(v)).collect()
}

/// Decides maximality of an orthogonal system within the brick-candidate pool.
pub fn maximality(s: &[Vertex], pr: Params) -> MaximalityReport {
    let witnesses = witness_pool(s, pr);
    let homogeneous_blocked = s.iter().any(Vertex::is_euclid);
    MaximalityReport { is_maximal: witnesses.is_empty() && homogeneous_blocked, witnesses, homogeneous_blocked }
}

/// A finite union of triangle areas in the two tubes of one family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "camelCase")]
pub enum TrianglePool {
    /// `△(anchor, height)` on one level.
    Single { family: Family, level: u8, anchor: i64, height: i64 },
    /// `△(0, anchor, height) ∪ △(1, anchor, height)`.
    Paired { family: Family, anchor: i64, height: i64 },
    /// `△(0, anchor, height-1) ∪ △(1, anchor, height)`.
    LowerShifted { family: Family, anchor: i64, height: i64 },
    /// `△(0, anchor, height) ∪ △(1, anchor+1, height-1)`.
    UpperShifted { family: Family, anchor: i64, height: i64 },
}

impl TrianglePool {
    fn family(&self) -> Family {
        match *self {
            TrianglePool::Single { family, .. }
            | TrianglePool::Paired { family, .. }
            | TrianglePool::LowerShifted { family, .. }
            | TrianglePool::UpperShifted { family, .. } => family,
        }
    }

    fn height(&self) -> i64 {
        match *self {
            TrianglePool::Single { height, .. }
            | TrianglePool::Paired { height, .. }
            | TrianglePool::LowerShifted { height, .. }
            | TrianglePool::UpperShifted { height, .. } => height,
        }
    }

    /// The triangle areas making up the pool.
    pub fn regions(&self) -> Vec<Region> {
        match *self {
            TrianglePool::Single { family, level, anchor, height } => {
                vec![Region::triangle(family, level, anchor, height)]
            }
            TrianglePool::Paired { family, anchor, height } => vec![
                Region::triangle(family, 0, anchor, height),
                Region::triangle(family, 1, anchor, height),
            ],
            TrianglePool::LowerShifted { family, anchor, height } => vec![
                Region::triangle(family, 0, anchor, height - 1),
                Region::triangle(family, 1, anchor, height),
            ],
            TrianglePool::UpperShifted { family, anchor, height } => vec![
                Region::triangle(family, 0, anchor, height),
                Region::triangle(family, 1, anchor + 1, height - 1),
            ],
        }
    }

    /// The vertices of the pool in canonical order.
    pub fn vertices(&self, pr: Params) -> Result<Vec<Vertex>, OrthoError> {
        let max = pr.rank(self.family()) - 2;
        if self.height() > max {
            return Err(OrthoError::HeightOutOfRange { height: self.height(), max });
        }
        let all = self.regions().into_iter().flat_map(|r| r.enumerate_finite(pr).unwrap_or_default());
        Ok(canonical_set(all, pr))
    }
}

/// Orthogonality graph on a vertex pool.
struct OrthoGraph {
    pool: Vec<Vertex>,
    adj: Vec<FixedBitSet>,
}

impl OrthoGraph {
    fn new(pool: Vec<Vertex>, pr: Params) -> Self {
        let n = pool.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if orthogonal_pair(pool[i], pool[j], pr) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        OrthoGraph { pool, adj }
    }

    fn members(&self, set: &FixedBitSet) -> Vec<Vertex> {
        set.ones().map(|i| self.pool[i]).collect()
    }

    /// Every clique, including the empty one, in lexicographic order of
    /// index sequences.
    fn all_cliques(&self) -> Vec<Vec<Vertex>> {
        let n = self.pool.len();
        let mut out = Vec::new();
        let mut current = FixedBitSet::with_capacity(n);
        let mut candidates = FixedBitSet::with_capacity(n);
        candidates.insert_range(..);
        self.extend_cliques(&mut current, &candidates, &mut out);
        out
    }

    fn extend_cliques(&self, current: &mut FixedBitSet, candidates: &FixedBitSet, out: &mut Vec<Vec<Vertex>>) {
        out.push(self.members(current));
        for v in candidates.ones() {
            let mut next = candidates.clone();
            next.intersect_with(&self.adj[v]);
            next.set_range(..v + 1, false);
            current.insert(v);
            self.extend_cliques(current, &next, out);
            current.set(v, false);
        }
    }

    /// Every maximal clique, via Bron–Kerbosch with pivoting.
    fn maximal_cliques(&self) -> Vec<Vec<Vertex>> {
        let n = self.pool.len();
        let mut out = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        self.bron_kerbosch(&mut FixedBitSet::with_capacity(n), p, FixedBitSet::with_capacity(n), &mut out);
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut FixedBitSet, mut p: FixedBitSet, mut x: FixedBitSet, out: &mut Vec<Vec<Vertex>>) {
        if p.is_clear() && x.is_clear() {
            out.push(self.members(r));
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| self.adj[u].intersection(&p).count())
            .expect("P or X is non-empty");
        let mut branch = p.clone();
        branch.difference_with(&self.adj[pivot]);
        for v in branch.ones().collect::<Vec<_>>() {
            let mut np = p.clone();
            np.intersect_with(&self.adj[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.adj[v]);
            r.insert(v);
            self.bron_kerbosch(r, np, nx, out);
            r.set(v, false);
            p.set(v, false);
            x.insert(v);
        }
    }
}

/// All orthogonal systems supported on a triangle pool, the empty system
/// included, in deterministic order.
pub fn enumerate_ortho_on_triangle(pool: TrianglePool, pr: Params) -> Result<Vec<Vec<Vertex>>, OrthoError> {
    let vertices = pool.vertices(pr)?;
    Ok(OrthoGraph::new(vertices, pr).all_cliques())
}

/// All maximal orthogonal systems supported on a triangle pool.
pub fn maximal_on_triangle(pool: TrianglePool, pr: Params) -> Result<Vec<Vec<Vertex>>, OrthoError> {
    let vertices = pool.vertices(pr)?;
    Ok(OrthoGraph::new(vertices, pr).maximal_cliques())
}

/// Which witnesses may be used when extending a system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PoolFilter {
    All,
    EuclideanOnly,
}

/// Every maximal orthogonal system containing `s`, relative to the witness
/// pool selected by `filter`.
pub fn maximal_systems_containing(s: &[Vertex], pr: Params, filter: PoolFilter) -> Result<Vec<Vec<Vertex>>, OrthoError> {
    let s = canonical_set(s.iter().copied(), pr);
    if !s.iter().any(Vertex::is_euclid) {
        return Err(OrthoError::NoEuclideanMember);
    }
    if !is_orthogonal_system(&s, pr) {
        return Err(OrthoError::NotOrthogonal(format_system(&s)));
    }
    let pool: Vec<Vertex> = witness_pool(&s, pr)
        .into_iter()
        .filter(|v| filter == PoolFilter::All || v.is_euclid())
        .collect();
    let mut out: Vec<Vec<Vertex>> = OrthoGraph::new(pool, pr)
        .maximal_cliques()
        .into_iter()
        .map(|clique| canonical_set(clique.into_iter().chain(s.iter().copied()), pr))
        .collect();
    out.sort();
    Ok(out)
}

/// Whether `w` consists of the quasi-simples `{(1,i,0) : lo ≤ i < lo+l} ∪
/// {(0,i,0) : lo+l ≤ i ≤ hi}` of one family for some split point `l`.
pub fn quasi_simple_chain_shape(w: &[Vertex], family: Family, lo: i64, hi: i64, pr: Params) -> bool {
    let w = canonical_set(w.iter().copied(), pr);
    let len = (hi - lo + 1).max(0);
    (0..=len).any(|l| {
        let expected = canonical_set(
            (lo..=hi).map(|i| Vertex::Tube { family, level: if i < lo + l { 1 } else { 0 }, idx: i, ht: 0 }),
            pr,
        );
        expected == w
    })
}

/// A canonical representative of the τ-orbit of `s`.
///
/// For systems with a Euclidean member, each such member in turn is moved to
/// the position `E(c, d, 0)` with `0 ≤ d < p+q` and the smallest resulting
/// sorted system is returned. Systems of tube vertices are minimized over a
/// full period of the translation.
pub fn normalize_up_to_translation(s: &[Vertex], pr: Params) -> Vec<Vertex> {
    let s = canonical_set(s.iter().copied(), pr);
    let shift = |k: i64| -> Vec<Vertex> {
        canonical_set(
            s.iter().map(|v| match *v {
                Vertex::Euclid { comp, x, y } => e(comp, x - k, y - k),
                Vertex::Tube { family, level, idx, ht } => Vertex::Tube { family, level, idx: idx - k, ht },
            }),
            pr,
        )
    };
    let shifts: Vec<i64> = if s.iter().any(Vertex::is_euclid) {
        s.iter()
            .filter_map(|v| match *v {
                Vertex::Euclid { x, y, .. } => {
                    let l = div_floor(x - y, pr.p + pr.q);
                    Some(y + pr.q * l)
                }
                Vertex::Tube { .. } => None,
            })
            .collect()
    } else {
        (0..pr.p * pr.q).collect()
    };
    shifts.into_iter().map(shift).min().unwrap_or_default()
}

/// Writes a system as a sorted list of vertex strings.
pub fn format_system(s: &[Vertex]) -> String {
    let items: Vec<String> = s.iter().map(Vertex::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_model::{tp, tu};

    fn pr(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    #[test]
    fn orthogonality_examples() {
        assert!(is_orthogonal_system(&[e(0, 1, 0), e(0, -1, 1)], pr(3, 3)));
        assert!(!is_orthogonal_system(&[tu(0, 1, 0), tu(0, 1, 1)], pr(3, 3)));
        assert!(is_orthogonal_system(&[tp(1, 0, 0)], pr(2, 3)));
    }

    #[test]
    fn euclidean_check_examples() {
        let p = pr(3, 3);
        let u1 = [e(0, 1, 0), e(0, -1, 2), e(0, 0, 1)];
        assert!(euclidean_ortho_check(&u1, p));
        assert!(euclidean_ortho_check(&[u1[2], u1[0], u1[1]], p));
        assert!(!euclidean_ortho_check(&[e(0, 0, 0), e(0, -1, 0)], p));
    }

    #[test]
    fn triangle_counts() {
        let p = pr(3, 3);
        let pool = TrianglePool::Single { family: Family::Unprimed, level: 0, anchor: 1, height: 1 };
        let systems = enumerate_ortho_on_triangle(pool, p).unwrap();
        assert_eq!(systems.iter().filter(|s| !s.is_empty()).count(), 4);
        let empty = TrianglePool::Single { family: Family::Unprimed, level: 0, anchor: 1, height: -1 };
        assert_eq!(enumerate_ortho_on_triangle(empty, p).unwrap(), vec![Vec::<Vertex>::new()]);
    }

    #[test]
    fn height_out_of_range() {
        let pool = TrianglePool::Paired { family: Family::Primed, anchor: 0, height: 2 };
        assert!(matches!(enumerate_ortho_on_triangle(pool, pr(3, 5)), Err(OrthoError::HeightOutOfRange { .. })));
    }

    #[test]
    fn chain_shape_examples() {
        let p = pr(4, 4);
        assert!(quasi_simple_chain_shape(&[tp(1, 1, 0), tp(0, 2, 0), tp(0, 3, 0)], Family::Primed, 1, 3, p));
        assert!(!quasi_simple_chain_shape(&[tp(0, 1, 0), tp(1, 2, 0)], Family::Primed, 1, 2, p));
        assert!(quasi_simple_chain_shape(&[], Family::Primed, 1, 0, p));
    }

    #[test]
    fn translation_normal_form_is_orbit_invariant() {
        let p = pr(2, 3);
        let s = vec![e(0, 0, 0), tu(1, 1, 0), tp(1, 1, 0)];
        let moved: Vec<Vertex> = s.iter().map(|v| v.tau(p).tau(p).tau(p)).collect();
        assert_eq!(normalize_up_to_translation(&s, p), normalize_up_to_translation(&moved, p));
    }
}
