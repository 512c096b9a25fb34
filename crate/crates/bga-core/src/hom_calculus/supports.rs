//! Closed-form right supports, left supports and bi-perpendicular regions.

use super::region::{EndBound, Region};
use crate::ar_model::{Family, Params, Part, Vertex, Window};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A region for each of the six parts of the stable AR-quiver, together with
/// whether the homogeneous tubes meet the described set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SupportReport {
    pub eucl0: Region,
    pub eucl1: Region,
    pub tube_u0: Region,
    pub tube_u1: Region,
    pub tube_p0: Region,
    pub tube_p1: Region,
    pub homogeneous_meets: bool,
}

impl SupportReport {
    fn empty(homogeneous_meets: bool) -> Self {
        SupportReport {
            eucl0: Region::Empty,
            eucl1: Region::Empty,
            tube_u0: Region::Empty,
            tube_u1: Region::Empty,
            tube_p0: Region::Empty,
            tube_p1: Region::Empty,
            homogeneous_meets,
        }
    }

    /// The report describing every vertex.
    pub fn everything(pr: Params) -> Self {
        let mut r = SupportReport::empty(true);
        r.eucl0 = Region::column_band(0, 0, pr.q - 1, pr);
        r.eucl1 = Region::column_band(1, 0, pr.q - 1, pr);
        for part in [Part::U0, Part::U1, Part::P0, Part::P1] {
            let (family, level) = part.tube().unwrap();
            *r.get_mut(part) = Region::WholeTube { family, level };
        }
        r
    }

    pub fn get(&self, part: Part) -> &Region {
        match part {
            Part::E0 => &self.eucl0,
            Part::E1 => &self.eucl1,
            Part::U0 => &self.tube_u0,
            Part::U1 => &self.tube_u1,
            Part::P0 => &self.tube_p0,
            Part::P1 => &self.tube_p1,
        }
    }

    pub fn get_mut(&mut self, part: Part) -> &mut Region {
        match part {
            Part::E0 => &mut self.eucl0,
            Part::E1 => &mut self.eucl1,
            Part::U0 => &mut self.tube_u0,
            Part::U1 => &mut self.tube_u1,
            Part::P0 => &mut self.tube_p0,
            Part::P1 => &mut self.tube_p1,
        }
    }

    /// Membership of `v` in the region of its part.
    pub fn contains(&self, v: Vertex, pr: Params) -> bool {
        self.get(v.part()).contains(v, pr)
    }

    /// The image of the report under `Ω`.
    pub fn omega(&self, pr: Params) -> Self {
        let mut out = SupportReport::empty(self.homogeneous_meets);
        for part in Part::ALL {
            *out.get_mut(part.omega()) = self.get(part).transport(pr, true);
        }
        out
    }

    /// Part-wise intersection.
    pub fn intersect(reports: Vec<SupportReport>, pr: Params) -> Self {
        let mut out = SupportReport::empty(reports.iter().all(|r| r.homogeneous_meets));
        for part in Part::ALL {
            let regions = reports.iter().map(|r| r.get(part).clone()).collect();
            *out.get_mut(part) = Region::intersection(regions, pr);
        }
        out
    }

    /// Explicit members lying in the window, keyed by part name.
    pub fn materialize(&self, w: &Window) -> BTreeMap<String, Vec<Vertex>> {
        Part::ALL
            .into_iter()
            .map(|part| {
                let members = self
                    .get(part)
                    .enumerate_within(w)
                    .into_iter()
                    .filter(|v| v.part() == part)
                    .collect();
                (part.name().to_string(), members)
            })
            .collect()
    }
}

fn tube_part(family: Family, level: u8) -> Part {
    match (family, level) {
        (Family::Unprimed, 0) => Part::U0,
        (Family::Unprimed, _) => Part::U1,
        (Family::Primed, 0) => Part::P0,
        (Family::Primed, _) => Part::P1,
    }
}

/// Coordinate of `E(c,a,b)` coupled to a tube family.
fn coupled(family: Family, a: i64, b: i64) -> i64 {
    match family {
        Family::Unprimed => b,
        Family::Primed => a,
    }
}

fn block(family: Family, level: u8, start_min: Option<i64>, start_max: Option<i64>, end: EndBound) -> Region {
    Region::TubeBlock { family, level, start_min, start_max, end }
}

/// The wing of a tube vertex.
pub fn wing(x: Vertex) -> Region {
    match x {
        Vertex::Tube { family, level, idx, ht } => Region::Wing { family, level, idx, ht },
        Vertex::Euclid { .. } => Region::Empty,
    }
}

/// The right support `{Y : Hom(X,Y) ≠ 0}`.
pub fn rsupp(x: Vertex, pr: Params) -> SupportReport {
    let x = x.canonical(pr);
    if x.layer() == 1 {
        return rsupp(x.omega_inv(pr), pr).omega(pr);
    }
    match x {
        Vertex::Euclid { x: a, y: b, .. } => {
            let mut r = SupportReport::empty(true);
            r.eucl0 = Region::ForwardCone { comp: 0, x: a, y: b };
            r.eucl1 = Region::BackwardCone { comp: 1, x: a, y: b };
            for family in Family::ALL {
                *r.get_mut(tube_part(family, 1)) =
                    Region::Wing { family, level: 1, idx: coupled(family, a, b), ht: 0 };
            }
            r
        }
        Vertex::Tube { family, idx: c, ht: d, .. } => {
            let mut r = SupportReport::empty(false);
            r.eucl0 = Region::family_band(family, 0, c, c + d, pr);
            *r.get_mut(tube_part(family, 0)) =
                block(family, 0, Some(c), Some(c + d), EndBound::AtLeast { lo: c + d });
            *r.get_mut(tube_part(family, 1)) =
                block(family, 1, None, Some(c), EndBound::Between { lo: c, hi: c + d });
            r
        }
    }
}

/// The left support `{Y : Hom(Y,X) ≠ 0}`.
pub fn lsupp(x: Vertex, pr: Params) -> SupportReport {
    let x = x.canonical(pr);
    if x.layer() == 1 {
        return lsupp(x.omega_inv(pr), pr).omega(pr);
    }
    match x {
        Vertex::Euclid { x: a, y: b, .. } => {
            let mut r = SupportReport::empty(true);
            r.eucl0 = Region::BackwardCone { comp: 0, x: a, y: b };
            r.eucl1 = Region::ForwardCone { comp: 1, x: a + 1, y: b + 1 };
            for family in Family::ALL {
                *r.get_mut(tube_part(family, 0)) =
                    Region::Wing { family, level: 0, idx: coupled(family, a, b), ht: 0 };
            }
            r
        }
        Vertex::Tube { family, idx: c, ht: d, .. } => {
            let mut r = SupportReport::empty(false);
            r.eucl1 = Region::family_band(family, 1, c + 1, c + d + 1, pr);
            *r.get_mut(tube_part(family, 0)) =
                block(family, 0, None, Some(c), EndBound::Between { lo: c, hi: c + d });
            *r.get_mut(tube_part(family, 1)) =
                block(family, 1, Some(c + 1), Some(c + d + 1), EndBound::AtLeast { lo: c + d + 1 });
            r
        }
    }
}

/// The bi-perpendicular region of a single vertex.
fn biperp_single(x: Vertex, pr: Params) -> SupportReport {
    let x = x.canonical(pr);
    if x.layer() == 1 {
        return biperp_single(x.omega_inv(pr), pr).omega(pr);
    }
    match x {
        Vertex::Euclid { x: a, y: b, .. } => {
            let (p, q) = (pr.p, pr.q);
            let mut r = SupportReport::empty(false);
            r.eucl0 = Region::Rectangle { comp: 0, top_left: (a - p + 1, b + q - 1), bottom_right: (a - 1, b + 1) };
            r.eucl1 = Region::Rectangle { comp: 1, top_left: (a - p + 1, b + q), bottom_right: (a, b + 1) };
            for family in Family::ALL {
                let anchor = coupled(family, a, b) + 1;
                let height = pr.rank(family) - 2;
                for level in 0..2u8 {
                    *r.get_mut(tube_part(family, level)) = Region::triangle(family, level, anchor, height);
                }
            }
            r
        }
        Vertex::Tube { family, idx: c, ht: d, .. } => {
            let rank = pr.rank(family);
            let mut r = SupportReport::everything(pr);
            r.homogeneous_meets = true;
            r.eucl0 = Region::family_band(family, 0, c + d + 1, c + rank - 1, pr);
            r.eucl1 = Region::family_band(family, 1, c + d + 2, c + rank, pr);
            let periodic = EndBound::Periodic { lo: c + d + 1, hi: c + rank - 1 };
            *r.get_mut(tube_part(family, 0)) = Region::union(vec![
                Region::triangle(family, 0, c + 1, d - 2),
                Region::triangle(family, 0, c + d - rank + 1, rank - d - 2),
                block(family, 0, Some(c + d - rank + 1), Some(c - 1), periodic),
            ]);
            *r.get_mut(tube_part(family, 1)) = Region::union(vec![
                Region::triangle(family, 1, c + 1, d - 1),
                Region::triangle(family, 1, c + d - rank + 2, rank - d - 3),
                block(family, 1, Some(c + d - rank + 2), Some(c), periodic),
            ]);
            r
        }
    }
}

/// The bi-perpendicular region `{Y : Hom(X,Y) = 0 = Hom(Y,X) for all X ∈ S}`.
/// Tube parts are exact on brick candidates. For the empty set every vertex
/// is described.
pub fn biperp(s: &[Vertex], pr: Params) -> SupportReport {
    match s {
        [] => SupportReport::everything(pr),
        [x] => biperp_single(*x, pr),
        _ => SupportReport::intersect(s.iter().map(|x| biperp_single(*x, pr)).collect(), pr),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_model::{canonical_set, e, tu};
    use crate::hom_calculus::stable_hom_nonzero;

    #[test]
    fn single_euclidean_biperp_counts() {
        let pr = Params::new(3, 3).unwrap();
        let r = biperp(&[e(0, 1, 0)], pr);
        let e0 = r.eucl0.enumerate_finite(pr).unwrap();
        let expected = canonical_set([e(0, -1, 1), e(0, -1, 2), e(0, 0, 1), e(0, 0, 2)], pr);
        assert_eq!(e0, expected);
        assert_eq!(r.eucl1.enumerate_finite(pr).unwrap().len(), 9);
    }

    #[test]
    fn supports_agree_with_predicate_on_small_window() {
        let pr = Params::new(2, 3).unwrap();
        let w = Window::periods_around(pr, 0, 0, 3);
        let pool = w.brick_pool();
        for &x in &pool {
            let rs = rsupp(x, pr);
            let ls = lsupp(x, pr);
            for &y in &pool {
                assert_eq!(rs.contains(y, pr), stable_hom_nonzero(x, y, pr), "rsupp {x} {y}");
                assert_eq!(ls.contains(y, pr), stable_hom_nonzero(y, x, pr), "lsupp {x} {y}");
            }
        }
    }

    #[test]
    fn tube_source_supports() {
        let pr = Params::new(3, 4).unwrap();
        let r = rsupp(tu(0, 1, 1), pr);
        assert_eq!(r.eucl0, Region::ColumnBand { comp: 0, residues: vec![1, 2] });
        assert_eq!(lsupp(tu(0, 1, 1), pr).eucl0, Region::Empty);
    }
}
