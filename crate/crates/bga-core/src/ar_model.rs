//! Coordinate model of the stable Auslander-Reiten quiver of a 2-domestic
//! Brauer graph algebra with parameters `(p, q)`.
//!
//! The non-homogeneous part of the stable AR-quiver consists of two Euclidean
//! components of shape `ZÃ_{p,q}` (labelled by `comp ∈ {0, 1}`) and four
//! exceptional tubes: two of rank `q` (the unprimed family) and two of rank
//! `p` (the primed family), labelled by `level ∈ {0, 1}`.
//!
//! Euclidean vertices are written `E(c,x,y)` with the identification
//! `E(c,x,y) = E(c,x-p·l,y+q·l)`. Tube vertices are written `TU(l,j,k)` and
//! `TP(l,j,k)`: the module of quasi-length `k+1` whose quasi-composition
//! factors are the quasi-simples with indices `j, j+1, …, j+k` (mod rank).

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Floor division for possibly negative integers.
pub fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Ceiling division for possibly negative integers.
pub fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Parameters `(p, q)` of the two Euclidean components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("parameters must be positive, got p={p}, q={q}")]
    NonPositive { p: i64, q: i64 },
}

impl Params {
    pub fn new(p: i64, q: i64) -> Result<Self, ParamsError> {
        if p < 1 || q < 1 {
            return Err(ParamsError::NonPositive { p, q });
        }
        Ok(Params { p, q })
    }

    /// Rank of the tubes in `family`.
    pub fn rank(&self, family: Family) -> i64 {
        match family {
            Family::Unprimed => self.q,
            Family::Primed => self.p,
        }
    }

    /// Number of non-projective simple modules, `n = p + q`.
    pub fn simple_count(&self) -> i64 {
        self.p + self.q
    }
}

/// The two families of exceptional tubes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Tubes of rank `q`, coupled to the vertical coordinate `y`.
    Unprimed,
    /// Tubes of rank `p`, coupled to the horizontal coordinate `x`.
    Primed,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Unprimed, Family::Primed];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Unprimed => "TU",
            Family::Primed => "TP",
        }
    }
}

/// A vertex of the non-homogeneous part of the stable AR-quiver.
///
/// The derived ordering puts Euclidean vertices first, then tube vertices,
/// each ordered lexicographically by their fields. Sets of vertices are kept
/// in this order after canonicalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Euclid { comp: u8, x: i64, y: i64 },
    Tube { family: Family, level: u8, idx: i64, ht: i64 },
}

/// Shorthand constructor for `E(comp,x,y)`.
pub fn e(comp: u8, x: i64, y: i64) -> Vertex {
    Vertex::Euclid { comp, x, y }
}

/// Shorthand constructor for `TU(level,idx,ht)`.
pub fn tu(level: u8, idx: i64, ht: i64) -> Vertex {
    Vertex::Tube { family: Family::Unprimed, level, idx, ht }
}

/// Shorthand constructor for `TP(level,idx,ht)`.
pub fn tp(level: u8, idx: i64, ht: i64) -> Vertex {
    Vertex::Tube { family: Family::Primed, level, idx, ht }
}

impl Vertex {
    pub fn is_euclid(&self) -> bool {
        matches!(self, Vertex::Euclid { .. })
    }

    pub fn is_tube(&self) -> bool {
        matches!(self, Vertex::Tube { .. })
    }

    /// The component index for Euclidean vertices or the level for tube vertices.
    pub fn layer(&self) -> u8 {
        match *self {
            Vertex::Euclid { comp, .. } => comp,
            Vertex::Tube { level, .. } => level,
        }
    }

    /// Which of the six parts of the quiver this vertex lies in.
    pub fn part(&self) -> Part {
        match *self {
            Vertex::Euclid { comp: 0, .. } => Part::E0,
            Vertex::Euclid { .. } => Part::E1,
            Vertex::Tube { family: Family::Unprimed, level: 0, .. } => Part::U0,
            Vertex::Tube { family: Family::Unprimed, .. } => Part::U1,
            Vertex::Tube { family: Family::Primed, level: 0, .. } => Part::P0,
            Vertex::Tube { family: Family::Primed, .. } => Part::P1,
        }
    }

    /// Canonical representative: `0 ≤ y < q` for Euclidean vertices and
    /// `0 ≤ idx < rank` for tube vertices.
    pub fn canonical(self, pr: Params) -> Vertex {
        match self {
            Vertex::Euclid { comp, x, y } => {
                let l = div_floor(y, pr.q);
                Vertex::Euclid { comp, x: x + pr.p * l, y: y - pr.q * l }
            }
            Vertex::Tube { family, level, idx, ht } => Vertex::Tube {
                family,
                level,
                idx: idx.rem_euclid(pr.rank(family)),
                ht,
            },
        }
    }

    /// Auslander-Reiten translate `τ`.
    pub fn tau(self, pr: Params) -> Vertex {
        match self {
            Vertex::Euclid { comp, x, y } => Vertex::Euclid { comp, x: x - 1, y: y - 1 },
            Vertex::Tube { family, level, idx, ht } => Vertex::Tube { family, level, idx: idx - 1, ht },
        }
        .canonical(pr)
    }

    /// Inverse translate `τ⁻¹`.
    pub fn tau_inv(self, pr: Params) -> Vertex {
        match self {
            Vertex::Euclid { comp, x, y } => Vertex::Euclid { comp, x: x + 1, y: y + 1 },
            Vertex::Tube { family, level, idx, ht } => Vertex::Tube { family, level, idx: idx + 1, ht },
        }
        .canonical(pr)
    }

    /// Syzygy `Ω`. It exchanges components and levels, and `Ω² = τ`.
    pub fn omega(self, pr: Params) -> Vertex {
        match self {
            Vertex::Euclid { comp: 0, x, y } => Vertex::Euclid { comp: 1, x, y },
            Vertex::Euclid { x, y, .. } => Vertex::Euclid { comp: 0, x: x - 1, y: y - 1 },
            Vertex::Tube { family, level: 0, idx, ht } => Vertex::Tube { family, level: 1, idx, ht },
            Vertex::Tube { family, idx, ht, .. } => Vertex::Tube { family, level: 0, idx: idx - 1, ht },
        }
        .canonical(pr)
    }

    /// Cosyzygy `Ω⁻¹`, the shift functor of the stable category.
    pub fn omega_inv(self, pr: Params) -> Vertex {
        match self {
            Vertex::Euclid { comp: 1, x, y } => Vertex::Euclid { comp: 0, x, y },
            Vertex::Euclid { x, y, .. } => Vertex::Euclid { comp: 1, x: x + 1, y: y + 1 },
            Vertex::Tube { family, level: 1, idx, ht } => Vertex::Tube { family, level: 0, idx, ht },
            Vertex::Tube { family, idx, ht, .. } => Vertex::Tube { family, level: 1, idx: idx + 1, ht },
        }
        .canonical(pr)
    }

    /// Whether the vertex belongs to the pool of stable bricks eligible for
    /// simple-minded systems: every Euclidean vertex, and tube vertices of
    /// quasi-length at most `rank - 1`.
    pub fn is_brick_candidate(&self, pr: Params) -> bool {
        match *self {
            Vertex::Euclid { .. } => true,
            Vertex::Tube { family, ht, .. } => ht >= 0 && ht <= pr.rank(family) - 2,
        }
    }

    /// Returns the vertex with its Euclidean coordinates translated by the
    /// identification vector `l` times, i.e. `E(c, x-p·l, y+q·l)`.
    pub fn shifted_lift(self, pr: Params, l: i64) -> Vertex {
        match self {
            Vertex::Euclid { comp, x, y } => Vertex::Euclid { comp, x: x - pr.p * l, y: y + pr.q * l },
            Vertex::Tube { family, level, idx, ht } => Vertex::Tube {
                family,
                level,
                idx: idx + pr.rank(family) * l,
                ht,
            },
        }
    }
}

/// The six parts of the non-homogeneous stable AR-quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    E0,
    E1,
    U0,
    U1,
    P0,
    P1,
}

impl Part {
    pub const ALL: [Part; 6] = [Part::E0, Part::E1, Part::U0, Part::U1, Part::P0, Part::P1];

    pub fn name(self) -> &'static str {
        match self {
            Part::E0 => "e0",
            Part::E1 => "e1",
            Part::U0 => "u0",
            Part::U1 => "u1",
            Part::P0 => "p0",
            Part::P1 => "p1",
        }
    }

    /// The family and level of a tube part, `None` for Euclidean parts.
    pub fn tube(self) -> Option<(Family, u8)> {
        match self {
            Part::U0 => Some((Family::Unprimed, 0)),
            Part::U1 => Some((Family::Unprimed, 1)),
            Part::P0 => Some((Family::Primed, 0)),
            Part::P1 => Some((Family::Primed, 1)),
            _ => None,
        }
    }

    /// The component of a Euclidean part, `None` for tube parts.
    pub fn comp(self) -> Option<u8> {
        match self {
            Part::E0 => Some(0),
            Part::E1 => Some(1),
            _ => None,
        }
    }

    /// The part that `Ω` maps this part onto.
    pub fn omega(self) -> Part {
        match self {
            Part::E0 => Part::E1,
            Part::E1 => Part::E0,
            Part::U0 => Part::U1,
            Part::U1 => Part::U0,
            Part::P0 => Part::P1,
            Part::P1 => Part::P0,
        }
    }
}

impl FromStr for Part {
    type Err = VertexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Part::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| VertexParseError::UnknownPart(s.to_string()))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Vertex::Euclid { comp, x, y } => write!(f, "E({comp},{x},{y})"),
            Vertex::Tube { family, level, idx, ht } => write!(f, "{}({level},{idx},{ht})", family.tag()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VertexParseError {
    #[error("malformed vertex syntax: {0:?}")]
    Malformed(String),
    #[error("component or level must be 0 or 1 in {0:?}")]
    BadLayer(String),
    #[error("tube height must be non-negative in {0:?}")]
    NegativeHeight(String),
    #[error("unknown part {0:?}, expected one of e0, e1, u0, u1, p0, p1")]
    UnknownPart(String),
}

impl FromStr for Vertex {
    type Err = VertexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || VertexParseError::Malformed(s.to_string());
        let t = s.trim();
        let open = t.find('(').ok_or_else(malformed)?;
        if !t.ends_with(')') {
            return Err(malformed());
        }
        let head = &t[..open];
        let nums: Vec<i64> = t[open + 1..t.len() - 1]
            .split(',')
            .map(|n| n.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed())?;
        let [a, b, c] = nums[..] else {
            return Err(malformed());
        };
        if a != 0 && a != 1 {
            return Err(VertexParseError::BadLayer(s.to_string()));
        }
        let layer = a as u8;
        match head {
            "E" => Ok(e(layer, b, c)),
            "TU" | "TP" => {
                if c < 0 {
                    return Err(VertexParseError::NegativeHeight(s.to_string()));
                }
                let family = if head == "TU" { Family::Unprimed } else { Family::Primed };
                Ok(Vertex::Tube { family, level: layer, idx: b, ht: c })
            }
            _ => Err(malformed()),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite window of the quiver: Euclidean vertices having a lift with
/// `x ∈ [x_lo, x_hi]` and `y ∈ [y_lo, y_hi]` on either component, and tube
/// vertices of height at most `tube_ht_cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub params: Params,
    pub x_lo: i64,
    pub x_hi: i64,
    pub y_lo: i64,
    pub y_hi: i64,
    pub tube_ht_cap: i64,
}

impl Window {
    pub fn new(params: Params, x: (i64, i64), y: (i64, i64), tube_ht_cap: i64) -> Self {
        Window { params, x_lo: x.0, x_hi: x.1, y_lo: y.0, y_hi: y.1, tube_ht_cap }
    }

    /// A window spanning `periods` full periods in each Euclidean direction,
    /// centred on `(cx, cy)`, with tube heights capped at `rank - 2` of the
    /// larger family.
    pub fn periods_around(params: Params, cx: i64, cy: i64, periods: i64) -> Self {
        let wx = params.p * periods;
        let wy = params.q * periods;
        Window::new(
            params,
            (cx - wx / 2, cx - wx / 2 + wx - 1),
            (cy - wy / 2, cy - wy / 2 + wy - 1),
            params.p.max(params.q) - 2,
        )
    }

    /// Whether both Euclidean ranges cover at least one full period.
    pub fn covers_period(&self) -> bool {
        self.x_hi - self.x_lo + 1 >= self.params.p && self.y_hi - self.y_lo + 1 >= self.params.q
    }

    /// Whether some lift of `v` lies in the window.
    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::Euclid { x, y, .. } => {
                let pr = self.params;
                let lo = div_ceil(x - self.x_hi, pr.p).max(div_ceil(self.y_lo - y, pr.q));
                let hi = div_floor(x - self.x_lo, pr.p).min(div_floor(self.y_hi - y, pr.q));
                lo <= hi
            }
            Vertex::Tube { ht, .. } => ht >= 0 && ht <= self.tube_ht_cap,
        }
    }

    /// All canonical Euclidean vertices of the window on component `comp`.
    pub fn euclid_vertices(&self, comp: u8) -> Vec<Vertex> {
        let mut out = Vec::new();
        for x in self.x_lo..=self.x_hi {
            for y in self.y_lo..=self.y_hi {
                out.push(e(comp, x, y));
            }
        }
        canonical_set(out, self.params)
    }

    /// All canonical vertices of the window, in canonical order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = self.euclid_vertices(0);
        out.extend(self.euclid_vertices(1));
        out.extend(tube_vertices(self.params, self.tube_ht_cap));
        out.sort();
        out
    }

    /// The brick candidates of the window.
    pub fn brick_pool(&self) -> Vec<Vertex> {
        self.vertices().into_iter().filter(|v| v.is_brick_candidate(self.params)).collect()
    }
}

/// Canonicalizes, sorts and deduplicates a collection of vertices.
pub fn canonical_set<I: IntoIterator<Item = Vertex>>(vs: I, pr: Params) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = vs.into_iter().map(|v| v.canonical(pr)).collect();
    out.sort();
    out.dedup();
    out
}

/// All tube vertices of the four exceptional tubes with height at most `cap`,
/// in canonical order.
pub fn tube_vertices(pr: Params, cap: i64) -> Vec<Vertex> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for level in 0..2u8 {
            for idx in 0..pr.rank(family) {
                for ht in 0..=cap {
                    out.push(Vertex::Tube { family, level, idx, ht });
                }
            }
        }
    }
    out.sort();
    out
}

/// One canonical representative of each Euclidean vertex with `0 ≤ x < p`,
/// `0 ≤ y < q` on both components, followed by all tube vertices with height
/// at most `tube_ht_cap`.
pub fn fundamental_domain(pr: Params, tube_ht_cap: i64) -> Vec<Vertex> {
    let mut out = Vec::new();
    for comp in 0..2u8 {
        for x in 0..pr.p {
            for y in 0..pr.q {
                out.push(e(comp, x, y));
            }
        }
    }
    out.extend(tube_vertices(pr, tube_ht_cap));
    out
}

/// All brick candidates among the tube vertices.
pub fn tube_brick_candidates(pr: Params) -> Vec<Vertex> {
    tube_vertices(pr, pr.p.max(pr.q) - 2)
        .into_iter()
        .filter(|v| v.is_brick_candidate(pr))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(e(0, -2, 3).canonical(pr(3, 3)), e(0, 1, 0));
        assert_eq!(e(0, 5, 1).canonical(pr(2, 3)), e(0, 5, 1));
        assert_eq!(tu(0, 7, 2).canonical(pr(3, 3)), tu(0, 1, 2));
    }

    #[test]
    fn tau_examples() {
        let p = pr(2, 3);
        assert_eq!(e(0, 0, 0).tau(p), e(0, -1, -1).canonical(p));
        assert_eq!(e(0, 0, 0).tau(p), e(0, -1 - p.p, p.q - 1));
        assert_ne!(e(0, 0, 0).tau(p), e(0, p.p - 1, p.q - 1));
        let mut v = e(0, 0, 0);
        for _ in 0..5 {
            v = v.tau(p);
        }
        assert_ne!(v, e(0, 0, 0));
        let mut t = tu(0, 1, 1);
        for _ in 0..3 {
            t = t.tau(p);
        }
        assert_eq!(t, tu(0, 1, 1));
    }

    #[test]
    fn omega_examples() {
        let p = pr(3, 4);
        assert_eq!(e(0, 2, 3).omega_inv(p), e(1, 3, 4).canonical(p));
        assert_eq!(tu(0, 0, 0).omega(p), tu(1, 0, 0));
        assert_eq!(e(0, 5, 7).omega(p).omega(p), e(0, 4, 6).canonical(p));
        assert_eq!(e(0, 5, 7).omega(p).omega(p), e(0, 5, 7).tau(p));
    }

    #[test]
    fn brick_candidates() {
        let p = pr(2, 3);
        assert!(e(1, 17, -4).is_brick_candidate(p));
        assert!(!tu(0, 0, 2).is_brick_candidate(p));
        assert!(tp(1, 0, 0).is_brick_candidate(p));
        assert!(!tp(1, 0, 1).is_brick_candidate(p));
    }

    #[test]
    fn fundamental_domain_counts() {
        assert_eq!(fundamental_domain(pr(2, 2), 0).len(), 16);
        assert_eq!(fundamental_domain(pr(1, 1), 0).len(), 6);
        let p = pr(3, 2);
        let fd = fundamental_domain(p, 2);
        assert_eq!(canonical_set(fd.iter().copied(), p).len(), fd.len());
    }

    #[test]
    fn syntax_round_trip() {
        for s in ["E(0,-2,3)", "TU(1,4,0)", "TP(0,0,2)"] {
            let v: Vertex = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("E(2,0,0)".parse::<Vertex>().is_err());
        assert!("TU(0,0,-1)".parse::<Vertex>().is_err());
        assert!("Q(0,0,0)".parse::<Vertex>().is_err());
        assert!("E(0,0)".parse::<Vertex>().is_err());
    }
}
