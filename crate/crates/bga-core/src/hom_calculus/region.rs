//! Symbolic descriptions of vertex subsets.

use super::{interval_hits_class, lift_in_backward_cone, lift_in_box, lift_in_forward_cone};
use crate::ar_model::{canonical_set, e, Family, Params, Vertex, Window};
use serde::{Deserialize, Serialize};

/// Constraint on the end index `idx + ht` of a tube vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum EndBound {
    Any,
    AtLeast { lo: i64 },
    AtMost { hi: i64 },
    Between { lo: i64, hi: i64 },
    /// The end lies in `[lo + rank·t, hi + rank·t]` for some `t ≥ 0`.
    Periodic { lo: i64, hi: i64 },
}

/// A subset of vertices of the stable AR-quiver.
///
/// Euclidean coordinates in a region refer to lifts: a vertex belongs to a
/// Euclidean primitive when some representative `E(c, x-p·l, y+q·l)` does.
/// Tube coordinates refer to lifts of `idx` modulo the rank. Membership is
/// therefore invariant under canonicalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Region {
    Empty,
    /// `{E(comp,i,j) : i ≥ x, j ≥ y}`.
    ForwardCone { comp: u8, x: i64, y: i64 },
    /// `{E(comp,i,j) : i ≤ x, j ≤ y}`.
    BackwardCone { comp: u8, x: i64, y: i64 },
    /// The rectangle with corners `(x0, y1)` (top left) and `(x1, y0)`
    /// (bottom right): `{E(comp,i,j) : x0 ≤ i ≤ x1, y0 ≤ j ≤ y1}`.
    Rectangle { comp: u8, top_left: (i64, i64), bottom_right: (i64, i64) },
    /// `{(i, j) : a ≤ i ≤ a+h, a ≤ i+j ≤ a+h}` in the tube, empty when `h < 0`.
    TriangleArea { family: Family, level: u8, anchor: i64, height: i64 },
    /// `{(m, l) : m ≤ j, j+k ≤ m+l}` in the tube of the vertex `(j, k)`.
    Wing { family: Family, level: u8, idx: i64, ht: i64 },
    /// Tube vertices with a lift whose start lies in `[start_min, start_max]`
    /// (either side optional) and whose end satisfies `end`.
    TubeBlock {
        family: Family,
        level: u8,
        start_min: Option<i64>,
        start_max: Option<i64>,
        end: EndBound,
    },
    /// Every vertex of one tube.
    WholeTube { family: Family, level: u8 },
    /// Euclidean vertices with `y mod q` among `residues`.
    ColumnBand { comp: u8, residues: Vec<i64> },
    /// Euclidean vertices with `x mod p` among `residues`.
    RowBand { comp: u8, residues: Vec<i64> },
    FiniteSet { vertices: Vec<Vertex> },
    Union { parts: Vec<Region> },
    Intersection { parts: Vec<Region> },
}

fn residues(lo: i64, hi: i64, m: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (lo..=hi).map(|r| r.rem_euclid(m)).collect();
    out.sort();
    out.dedup();
    out
}

impl Region {
    /// Column band for the residues `lo..=hi` modulo `q`.
    pub fn column_band(comp: u8, lo: i64, hi: i64, pr: Params) -> Region {
        if lo > hi {
            return Region::Empty;
        }
        Region::ColumnBand { comp, residues: residues(lo, hi, pr.q) }
    }

    /// Row band for the residues `lo..=hi` modulo `p`.
    pub fn row_band(comp: u8, lo: i64, hi: i64, pr: Params) -> Region {
        if lo > hi {
            return Region::Empty;
        }
        Region::RowBand { comp, residues: residues(lo, hi, pr.p) }
    }

    /// Band on the coordinate coupled to `family`.
    pub fn family_band(family: Family, comp: u8, lo: i64, hi: i64, pr: Params) -> Region {
        match family {
            Family::Unprimed => Region::column_band(comp, lo, hi, pr),
            Family::Primed => Region::row_band(comp, lo, hi, pr),
        }
    }

    pub fn triangle(family: Family, level: u8, anchor: i64, height: i64) -> Region {
        if height < 0 {
            return Region::Empty;
        }
        Region::TriangleArea { family, level, anchor, height }
    }

    /// Union of the non-empty parts.
    pub fn union(parts: Vec<Region>) -> Region {
        let mut parts: Vec<Region> = parts.into_iter().filter(|r| *r != Region::Empty).collect();
        match parts.len() {
            0 => Region::Empty,
            1 => parts.pop().unwrap(),
            _ => Region::Union { parts },
        }
    }

    /// Intersection of regions. When some operand is finite the result is
    /// materialized as a finite set.
    pub fn intersection(parts: Vec<Region>, pr: Params) -> Region {
        if parts.contains(&Region::Empty) {
            return Region::Empty;
        }
        let mut parts = parts;
        parts.dedup();
        if parts.len() == 1 {
            return parts.pop().unwrap();
        }
        if parts.is_empty() {
            return Region::Empty;
        }
        if let Some(pos) = parts.iter().position(|r| r.enumerate_finite(pr).is_some()) {
            let base = parts.remove(pos).enumerate_finite(pr).unwrap();
            let vertices: Vec<Vertex> =
                base.into_iter().filter(|v| parts.iter().all(|r| r.contains(*v, pr))).collect();
            if vertices.is_empty() {
                return Region::Empty;
            }
            return Region::FiniteSet { vertices };
        }
        Region::Intersection { parts }
    }

    /// Membership test.
    pub fn contains(&self, v: Vertex, pr: Params) -> bool {
        match (self, v) {
            (Region::Empty, _) => false,
            (Region::ForwardCone { comp, x, y }, Vertex::Euclid { comp: c, x: i, y: j }) => {
                *comp == c && lift_in_forward_cone(pr, *x, *y, i, j)
            }
            (Region::BackwardCone { comp, x, y }, Vertex::Euclid { comp: c, x: i, y: j }) => {
                *comp == c && lift_in_backward_cone(pr, *x, *y, i, j)
            }
            (
                Region::Rectangle { comp, top_left, bottom_right },
                Vertex::Euclid { comp: c, x: i, y: j },
            ) => *comp == c && lift_in_box(pr, top_left.0, bottom_right.0, bottom_right.1, top_left.1, i, j),
            (Region::ColumnBand { comp, residues }, Vertex::Euclid { comp: c, y, .. }) => {
                *comp == c && residues.contains(&y.rem_euclid(pr.q))
            }
            (Region::RowBand { comp, residues }, Vertex::Euclid { comp: c, x, .. }) => {
                *comp == c && residues.contains(&x.rem_euclid(pr.p))
            }
            (
                Region::TriangleArea { family, level, anchor, height },
                Vertex::Tube { family: f, level: l, idx, ht },
            ) => {
                *family == f
                    && *level == l
                    && tube_block_contains(
                        pr.rank(f),
                        Some(*anchor),
                        Some(anchor + height),
                        &EndBound::AtMost { hi: anchor + height },
                        idx,
                        ht,
                    )
            }
            (
                Region::Wing { family, level, idx: j, ht: k },
                Vertex::Tube { family: f, level: l, idx, ht },
            ) => {
                *family == f
                    && *level == l
                    && tube_block_contains(pr.rank(f), None, Some(*j), &EndBound::AtLeast { lo: j + k }, idx, ht)
            }
            (
                Region::TubeBlock { family, level, start_min, start_max, end },
                Vertex::Tube { family: f, level: l, idx, ht },
            ) => *family == f && *level == l && tube_block_contains(pr.rank(f), *start_min, *start_max, end, idx, ht),
            (Region::WholeTube { family, level }, Vertex::Tube { family: f, level: l, .. }) => {
                *family == f && *level == l
            }
            (Region::FiniteSet { vertices }, v) => {
                let c = v.canonical(pr);
                vertices.iter().any(|w| w.canonical(pr) == c)
            }
            (Region::Union { parts }, v) => parts.iter().any(|r| r.contains(v, pr)),
            (Region::Intersection { parts }, v) => parts.iter().all(|r| r.contains(v, pr)),
            _ => false,
        }
    }

    /// Canonical list of members when the region is finite, `None` otherwise.
    pub fn enumerate_finite(&self, pr: Params) -> Option<Vec<Vertex>> {
        match self {
            Region::Empty => Some(Vec::new()),
            Region::Rectangle { comp, top_left, bottom_right } => {
                let mut out = Vec::new();
                for x in top_left.0..=bottom_right.0 {
                    for y in bottom_right.1..=top_left.1 {
                        out.push(e(*comp, x, y));
                    }
                }
                Some(canonical_set(out, pr))
            }
            Region::TriangleArea { family, level, anchor, height } => {
                let mut out = Vec::new();
                for i in *anchor..=anchor + height {
                    for j in 0..=(anchor + height - i) {
                        out.push(Vertex::Tube { family: *family, level: *level, idx: i, ht: j });
                    }
                }
                Some(canonical_set(out, pr))
            }
            Region::TubeBlock { family, level, start_min: Some(s0), end, .. } => {
                let hi = match end {
                    EndBound::AtMost { hi } | EndBound::Between { hi, .. } => *hi,
                    _ => return None,
                };
                let mut out = Vec::new();
                for ht in 0..=(hi - s0).max(-1) {
                    for idx in 0..pr.rank(*family) {
                        let v = Vertex::Tube { family: *family, level: *level, idx, ht };
                        if self.contains(v, pr) {
                            out.push(v);
                        }
                    }
                }
                Some(out)
            }
            Region::FiniteSet { vertices } => Some(canonical_set(vertices.iter().copied(), pr)),
            Region::Union { parts } => {
                let mut out = Vec::new();
                for r in parts {
                    out.extend(r.enumerate_finite(pr)?);
                }
                Some(canonical_set(out, pr))
            }
            Region::Intersection { parts } => {
                let base = parts.iter().find_map(|r| r.enumerate_finite(pr))?;
                Some(base.into_iter().filter(|v| self.contains(*v, pr)).collect())
            }
            _ => None,
        }
    }

    /// All members lying in the window, in canonical order.
    pub fn enumerate_within(&self, w: &Window) -> Vec<Vertex> {
        w.vertices().into_iter().filter(|v| self.contains(*v, w.params)).collect()
    }

    /// The image of the region under `Ω` (`forward = true`) or `Ω⁻¹`.
    pub fn transport(&self, pr: Params, forward: bool) -> Region {
        // Ω maps layer 0 to layer 1 without shifting and layer 1 to layer 0
        // with a shift of -1; Ω⁻¹ is the inverse.
        let shift = |layer: u8| -> (u8, i64) {
            match (forward, layer) {
                (true, 0) => (1, 0),
                (true, _) => (0, -1),
                (false, 1) => (0, 0),
                (false, _) => (1, 1),
            }
        };
        let sh = |b: &Option<i64>, d: i64| b.map(|v| v + d);
        match self {
            Region::Empty => Region::Empty,
            Region::ForwardCone { comp, x, y } => {
                let (c, d) = shift(*comp);
                Region::ForwardCone { comp: c, x: x + d, y: y + d }
            }
            Region::BackwardCone { comp, x, y } => {
                let (c, d) = shift(*comp);
                Region::BackwardCone { comp: c, x: x + d, y: y + d }
            }
            Region::Rectangle { comp, top_left, bottom_right } => {
                let (c, d) = shift(*comp);
                Region::Rectangle {
                    comp: c,
                    top_left: (top_left.0 + d, top_left.1 + d),
                    bottom_right: (bottom_right.0 + d, bottom_right.1 + d),
                }
            }
            Region::TriangleArea { family, level, anchor, height } => {
                let (l, d) = shift(*level);
                Region::TriangleArea { family: *family, level: l, anchor: anchor + d, height: *height }
            }
            Region::Wing { family, level, idx, ht } => {
                let (l, d) = shift(*level);
                Region::Wing { family: *family, level: l, idx: idx + d, ht: *ht }
            }
            Region::TubeBlock { family, level, start_min, start_max, end } => {
                let (l, d) = shift(*level);
                let end = match end {
                    EndBound::Any => EndBound::Any,
                    EndBound::AtLeast { lo } => EndBound::AtLeast { lo: lo + d },
                    EndBound::AtMost { hi } => EndBound::AtMost { hi: hi + d },
                    EndBound::Between { lo, hi } => EndBound::Between { lo: lo + d, hi: hi + d },
                    EndBound::Periodic { lo, hi } => EndBound::Periodic { lo: lo + d, hi: hi + d },
                };
                Region::TubeBlock {
                    family: *family,
                    level: l,
                    start_min: sh(start_min, d),
                    start_max: sh(start_max, d),
                    end,
                }
            }
            Region::WholeTube { family, level } => Region::WholeTube { family: *family, level: shift(*level).0 },
            Region::ColumnBand { comp, residues } => {
                let (c, d) = shift(*comp);
                let mut r: Vec<i64> = residues.iter().map(|v| (v + d).rem_euclid(pr.q)).collect();
                r.sort();
                Region::ColumnBand { comp: c, residues: r }
            }
            Region::RowBand { comp, residues } => {
                let (c, d) = shift(*comp);
                let mut r: Vec<i64> = residues.iter().map(|v| (v + d).rem_euclid(pr.p)).collect();
                r.sort();
                Region::RowBand { comp: c, residues: r }
            }
            Region::FiniteSet { vertices } => {
                let moved = vertices.iter().map(|v| if forward { v.omega(pr) } else { v.omega_inv(pr) });
                Region::FiniteSet { vertices: canonical_set(moved, pr) }
            }
            Region::Union { parts } => Region::Union { parts: parts.iter().map(|r| r.transport(pr, forward)).collect() },
            Region::Intersection { parts } => {
                Region::Intersection { parts: parts.iter().map(|r| r.transport(pr, forward)).collect() }
            }
        }
    }
}

/// Membership of the tube vertex `(idx, ht)` in a block of a tube of rank `r`.
fn tube_block_contains(
    r: i64,
    start_min: Option<i64>,
    start_max: Option<i64>,
    end: &EndBound,
    idx: i64,
    ht: i64,
) -> bool {
    if ht < 0 {
        return false;
    }
    let (mut lo, mut hi) = (start_min, start_max);
    let tighten_lo = |cur: Option<i64>, v: i64| Some(cur.map_or(v, |c| c.max(v)));
    let tighten_hi = |cur: Option<i64>, v: i64| Some(cur.map_or(v, |c| c.min(v)));
    match *end {
        EndBound::Any | EndBound::Periodic { .. } => {}
        EndBound::AtLeast { lo: e0 } => lo = tighten_lo(lo, e0 - ht),
        EndBound::AtMost { hi: e1 } => hi = tighten_hi(hi, e1 - ht),
        EndBound::Between { lo: e0, hi: e1 } => {
            lo = tighten_lo(lo, e0 - ht);
            hi = tighten_hi(hi, e1 - ht);
        }
    }
    match (*end, lo, hi) {
        (EndBound::Periodic { lo: e0, hi: e1 }, Some(lo), Some(hi)) => {
            let mut s = lo + (idx - lo).rem_euclid(r);
            while s <= hi {
                let end = s + ht;
                if interval_hits_class(e0, e1.min(end), end, r) {
                    return true;
                }
                s += r;
            }
            false
        }
        (EndBound::Periodic { .. }, _, _) => panic!("periodic tube blocks require a bounded start range"),
        (_, Some(lo), Some(hi)) => interval_hits_class(lo, hi, idx, r),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_model::{tu, Params};

    #[test]
    fn triangle_area_membership() {
        let pr = Params::new(3, 4).unwrap();
        let t = Region::triangle(Family::Unprimed, 0, 1, 2);
        let members = t.enumerate_finite(pr).unwrap();
        assert_eq!(members.len(), 6);
        assert!(t.contains(tu(0, 5, 0), pr));
        assert!(!t.contains(tu(0, 0, 0), pr));
        assert!(!t.contains(tu(0, 2, 2), pr));
        assert_eq!(Region::triangle(Family::Unprimed, 0, 1, -1), Region::Empty);
    }

    #[test]
    fn wing_membership() {
        let pr = Params::new(3, 3).unwrap();
        let w = Region::Wing { family: Family::Unprimed, level: 1, idx: 1, ht: 0 };
        assert!(w.contains(tu(1, 0, 2), pr));
        assert!(w.contains(tu(1, 1, 0), pr));
        assert!(!w.contains(tu(1, 2, 0), pr));
        let q = Region::Wing { family: Family::Unprimed, level: 1, idx: 0, ht: 0 };
        let simples: Vec<i64> = (0..3).filter(|&i| q.contains(tu(1, i, 0), pr)).collect();
        assert_eq!(simples, vec![0]);
    }

    #[test]
    fn rectangle_enumeration_canonicalizes() {
        let pr = Params::new(3, 3).unwrap();
        let r = Region::Rectangle { comp: 0, top_left: (-1, 2), bottom_right: (0, 1) };
        assert_eq!(r.enumerate_finite(pr).unwrap().len(), 4);
        assert!(r.contains(e(0, 2, -2), pr));
    }

    #[test]
    fn transport_round_trip() {
        let pr = Params::new(2, 3).unwrap();
        let r = Region::TubeBlock {
            family: Family::Unprimed,
            level: 1,
            start_min: Some(0),
            start_max: Some(2),
            end: EndBound::Periodic { lo: 4, hi: 5 },
        };
        assert_eq!(r.transport(pr, true).transport(pr, false), r);
    }
}
