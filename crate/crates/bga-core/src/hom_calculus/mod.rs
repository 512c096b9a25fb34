//! Non-vanishing of stable Hom spaces between vertices, and symbolic support
//! and bi-perpendicular regions.
//!
//! Every decision reduces to interval arithmetic on lifts of coordinates over
//! the identification `E(c,x,y) = E(c,x-p·l,y+q·l)` or over `idx mod rank`.
//! Sources on component 1 or level 1 are reduced to component 0 or level 0 by
//! conjugating with `Ω`, which is an auto-equivalence of the stable category.

mod region;
mod supports;

pub use region::{EndBound, Region};
pub use supports::{biperp, lsupp, rsupp, wing, SupportReport};

use crate::ar_model::{div_ceil, div_floor, Family, Params, Vertex};

/// Whether the integer interval `[lo, hi]` contains an integer congruent to
/// `r` modulo `m`.
pub fn interval_hits_class(lo: i64, hi: i64, r: i64, m: i64) -> bool {
    lo <= hi && lo + (r - lo).rem_euclid(m) <= hi
}

/// Whether some lift `(i - p·l, j + q·l)` of `(i, j)` lies in the quadrant
/// `x ≥ a, y ≥ b`.
pub fn lift_in_forward_cone(pr: Params, a: i64, b: i64, i: i64, j: i64) -> bool {
    div_ceil(b - j, pr.q) <= div_floor(i - a, pr.p)
}

/// Whether some lift `(i - p·l, j + q·l)` of `(i, j)` lies in the quadrant
/// `x ≤ a, y ≤ b`.
pub fn lift_in_backward_cone(pr: Params, a: i64, b: i64, i: i64, j: i64) -> bool {
    div_ceil(i - a, pr.p) <= div_floor(b - j, pr.q)
}

/// Whether some lift of `(i, j)` lies in the box `[x0, x1] × [y0, y1]`.
pub fn lift_in_box(pr: Params, x0: i64, x1: i64, y0: i64, y1: i64, i: i64, j: i64) -> bool {
    // x0 ≤ i - p·l ≤ x1 and y0 ≤ j + q·l ≤ y1
    let lo = div_ceil(i - x1, pr.p).max(div_ceil(y0 - j, pr.q));
    let hi = div_floor(i - x0, pr.p).min(div_floor(y1 - j, pr.q));
    lo <= hi
}

/// Decides whether the stable Hom space from `x` to `y` is non-zero.
///
/// The predicate is total on the vertex model and is meaningful on brick
/// candidates. Homogeneous tube modules have no vertex representation, so
/// they cannot be passed here.
pub fn stable_hom_nonzero(x: Vertex, y: Vertex, pr: Params) -> bool {
    if x.layer() == 1 {
        return stable_hom_nonzero(x.omega(pr), y.omega(pr), pr);
    }
    match (x, y) {
        (Vertex::Euclid { x: a, y: b, .. }, Vertex::Euclid { comp, x: i, y: j }) => {
            if comp == 0 {
                lift_in_forward_cone(pr, a, b, i, j)
            } else {
                lift_in_backward_cone(pr, a, b, i, j)
            }
        }
        (Vertex::Euclid { x: a, y: b, .. }, Vertex::Tube { family, level, idx, ht }) => {
            if level == 0 {
                return false;
            }
            let coord = match family {
                Family::Unprimed => b,
                Family::Primed => a,
            };
            (coord - idx).rem_euclid(pr.rank(family)) <= ht
        }
        (Vertex::Tube { family, idx: c, ht: d, .. }, Vertex::Euclid { comp, x: i, y: j }) => {
            if comp == 1 {
                return false;
            }
            let coord = match family {
                Family::Unprimed => j,
                Family::Primed => i,
            };
            (coord - c).rem_euclid(pr.rank(family)) <= d
        }
        (
            Vertex::Tube { family: f1, idx: c, ht: d, .. },
            Vertex::Tube { family: f2, level, idx: i, ht: h },
        ) => {
            if f1 != f2 {
                return false;
            }
            let r = pr.rank(f1);
            if level == 0 {
                // the target starts inside the source and ends at or beyond its end
                interval_hits_class(c.max(c + d - h), c + d, i, r)
            } else {
                // the target starts at or before the source and ends inside it
                interval_hits_class(c - h, c.min(c + d - h), i, r)
            }
        }
    }
}

/// Whether `x` and `y` are mutually stably orthogonal.
pub fn orthogonal_pair(x: Vertex, y: Vertex, pr: Params) -> bool {
    !stable_hom_nonzero(x, y, pr) && !stable_hom_nonzero(y, x, pr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar_model::{e, tu};

    fn pr(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    #[test]
    fn euclidean_examples() {
        for (p, q) in [(1, 1), (2, 3), (3, 3), (4, 2)] {
            assert!(stable_hom_nonzero(e(0, 0, 0), e(0, 1, 2), pr(p, q)));
        }
        assert!(stable_hom_nonzero(e(0, 0, 0), e(0, -1, 5), pr(2, 3)));
        assert!(!stable_hom_nonzero(e(0, 0, 0), e(0, -1, 0), pr(2, 3)));
    }

    #[test]
    fn euclid_to_tube_examples() {
        let p = pr(3, 3);
        assert!(stable_hom_nonzero(e(0, 0, 0), tu(1, 0, 0), p));
        assert!(!stable_hom_nonzero(e(0, 0, 0), tu(1, 1, 0), p));
        assert!(!stable_hom_nonzero(e(0, 0, 0), tu(0, 0, 0), p));
    }

    #[test]
    fn tube_examples() {
        let p = pr(3, 3);
        assert!(stable_hom_nonzero(tu(0, 1, 0), tu(0, 1, 1), p));
        assert!(!stable_hom_nonzero(tu(0, 1, 1), tu(0, 1, 0), p));
    }

    #[test]
    fn cosyzygy_to_level_zero_uses_shifted_window() {
        // Hom(E(1,i,j), TU(0,c,d)) is non-zero exactly when j lies in c+1..c+d+1.
        let p = pr(2, 4);
        let hits: Vec<i64> = (0..4).filter(|&j| stable_hom_nonzero(e(1, 0, j), tu(0, 1, 1), p)).collect();
        assert_eq!(hits, vec![2, 3]);
    }

    #[test]
    fn box_lifting() {
        let p = pr(3, 3);
        assert!(lift_in_box(p, -1, 1, 1, 3, 1, 1));
        assert!(lift_in_box(p, -3, -1, 2, 4, 1, 1));
        assert!(!lift_in_box(p, -3, -1, 2, 4, 0, 2));
    }
}
