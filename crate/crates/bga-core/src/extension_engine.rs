//! Distinguished triangles of the stable category and the extension-closure
//! fixpoint used to certify simple-minded systems.
//!
//! A triangle `a → ⊕mids → c → Ω⁻¹a` yields three closure rules: `F` contains
//! the middle terms when it contains both ends, it contains `c` when it
//! contains the middle terms and `Ω⁻¹a`, and it contains `a` when it contains
//! `Ωc` and the middle terms.

use crate::ar_model::{canonical_set, div_ceil, e, tp, tu, Family, Params, Vertex, Window};
use crate::hom_calculus::{biperp, Region};
use crate::ortho::{is_orthogonal_system, maximality};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("the system is not maximal")]
    NotMaximal,
    #[error("parameter {0} is not uniquely determined")]
    ParameterNotUnique(String),
    #[error("the system is not orthogonal")]
    NotOrthogonal,
    #[error("window does not contain {0}")]
    WindowTooSmall(String),
    #[error("trace step {0} does not replay")]
    ReplayMismatch(usize),
}

/// A distinguished triangle `a → ⊕mids → c → Ω⁻¹a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DistinguishedTriangle {
    pub a: Vertex,
    pub mids: Vec<Vertex>,
    pub c: Vertex,
}

impl DistinguishedTriangle {
    fn new(a: Vertex, mids: Vec<Vertex>, c: Vertex, pr: Params) -> Self {
        let mut mids: Vec<Vertex> = mids.into_iter().map(|v| v.canonical(pr)).collect();
        mids.sort();
        DistinguishedTriangle { a: a.canonical(pr), mids, c: c.canonical(pr) }
    }

    fn map(&self, pr: Params, f: impl Fn(Vertex) -> Vertex) -> Self {
        DistinguishedTriangle::new(f(self.a), self.mids.iter().map(|v| f(*v)).collect(), f(self.c), pr)
    }

    /// The same triangle with every term replaced by its image under `Ω`.
    pub fn omega(&self, pr: Params) -> Self {
        self.map(pr, |v| v.omega(pr))
    }

    /// The same triangle with every term replaced by its image under `τ`.
    pub fn tau(&self, pr: Params) -> Self {
        self.map(pr, |v| v.tau(pr))
    }

    fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.a).chain(self.mids.iter().copied()).chain(std::iter::once(self.c))
    }
}

/// The default window for a system: the bounding box of `S ∪ ΩS ∪ Ω⁻¹S`
/// expanded by `p + q`, with tube heights capped at `max(p,q) - 1`.
pub fn default_window(s: &[Vertex], pr: Params) -> Window {
    window_with_margin(s, pr, pr.p + pr.q)
}

/// The bounding box of `S ∪ ΩS ∪ Ω⁻¹S` expanded by `margin`, with tube
/// heights capped at `max(p,q) - 1`.
pub fn window_with_margin(s: &[Vertex], pr: Params, margin: i64) -> Window {
    let (mut x0, mut x1, mut y0, mut y1) = (0i64, 0i64, 0i64, 0i64);
    let mut first = true;
    for v in s {
        for w in [*v, v.omega(pr), v.omega_inv(pr)] {
            if let Vertex::Euclid { x, y, .. } = w.canonical(pr) {
                if first {
                    (x0, x1, y0, y1) = (x, x, y, y);
                    first = false;
                } else {
                    x0 = x0.min(x);
                    x1 = x1.max(x);
                    y0 = y0.min(y);
                    y1 = y1.max(y);
                }
            }
        }
    }
    let m = margin;
    Window::new(pr, (x0 - m, x1 + m), (y0 - m, y1 + m), pr.p.max(pr.q) - 1)
}

/// The triangle families generated at one base position on component 0 or
/// level 0, before Ω-images are added.
fn base_triangles(pr: Params, w: &Window, out: &mut BTreeSet<DistinguishedTriangle>) {
    let cap = w.tube_ht_cap;
    for i in w.x_lo..=w.x_hi {
        for j in w.y_lo..=w.y_hi {
            for k in 1..=pr.p {
                for l in 1..=pr.q {
                    out.insert(DistinguishedTriangle::new(
                        e(0, i, j),
                        vec![e(0, i, j + l), e(0, i + k, j)],
                        e(0, i + k, j + l),
                        pr,
                    ));
                }
            }
            for k in 1..=cap + 1 {
                out.insert(DistinguishedTriangle::new(tp(0, i, k - 1), vec![e(0, i, j)], e(0, i + k, j), pr));
                out.insert(DistinguishedTriangle::new(tu(0, j, k - 1), vec![e(0, i, j)], e(0, i, j + k), pr));
            }
        }
    }
    for family in Family::ALL {
        for idx in 0..pr.rank(family) {
            for k in 0..cap {
                let t = |j: i64, h: i64| Vertex::Tube { family, level: 0, idx: j, ht: h };
                let mut mids = vec![t(idx, k + 1)];
                if k > 0 {
                    mids.push(t(idx + 1, k - 1));
                }
                out.insert(DistinguishedTriangle::new(t(idx, k), mids, t(idx + 1, k), pr));
            }
        }
    }
}

/// The catalog of distinguished triangles whose terms all lie in `w`.
pub fn triangle_catalog(pr: Params, w: &Window) -> Vec<DistinguishedTriangle> {
    let mut base = BTreeSet::new();
    base_triangles(pr, w, &mut base);
    let mut all = BTreeSet::new();
    for t in base {
        all.insert(t.omega(pr));
        all.insert(t.map(pr, |v| v.omega_inv(pr)));
        all.insert(t);
    }
    all.into_iter().filter(|t| t.vertices().all(|v| w.contains(v))).collect()
}

/// The closure rule that produced a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Seed,
    Ext,
    RotRight,
    RotLeft,
}

/// One derivation step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: Rule,
    pub triangle: Option<DistinguishedTriangle>,
    pub produced: Vertex,
}

impl TraceEntry {
    /// The vertices that must be in `F` for this step to fire.
    pub fn premises(&self, pr: Params) -> Vec<Vertex> {
        let Some(t) = &self.triangle else { return Vec::new() };
        match self.rule {
            Rule::Seed => Vec::new(),
            Rule::Ext => vec![t.a, t.c],
            Rule::RotRight => t.mids.iter().copied().chain(std::iter::once(t.a.omega_inv(pr))).collect(),
            Rule::RotLeft => t.mids.iter().copied().chain(std::iter::once(t.c.omega(pr))).collect(),
        }
    }
}

/// State of the extension-closure computation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosureState {
    pub in_f: BTreeSet<Vertex>,
    pub trace: Vec<TraceEntry>,
}

/// Least fixpoint of the closure rules over the catalog, seeded with `s`.
pub fn closure(s: &[Vertex], w: &Window) -> ClosureState {
    let pr = w.params;
    let catalog = triangle_catalog(pr, w);
    closure_with_catalog(s, pr, &catalog)
}

fn closure_with_catalog(s: &[Vertex], pr: Params, catalog: &[DistinguishedTriangle]) -> ClosureState {
    let mut index: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (k, t) in catalog.iter().enumerate() {
        let keys = t.vertices().chain([t.a.omega_inv(pr), t.c.omega(pr)]).collect::<HashSet<_>>();
        for v in keys {
            index.entry(v).or_default().push(k);
        }
    }
    let mut in_f: HashSet<Vertex> = HashSet::new();
    let mut trace = Vec::new();
    let mut queue = VecDeque::new();
    for v in canonical_set(s.iter().copied(), pr) {
        if in_f.insert(v) {
            trace.push(TraceEntry { rule: Rule::Seed, triangle: None, produced: v });
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let Some(ts) = index.get(&v) else { continue };
        for &k in ts {
            let t = &catalog[k];
            let mids_in = t.mids.iter().all(|m| in_f.contains(m));
            let mut fire = |rule: Rule, produced: Vertex, in_f: &mut HashSet<Vertex>| {
                if in_f.insert(produced) {
                    trace.push(TraceEntry { rule, triangle: Some(t.clone()), produced });
                    queue.push_back(produced);
                }
            };
            if in_f.contains(&t.a) && in_f.contains(&t.c) {
                for m in &t.mids {
                    fire(Rule::Ext, *m, &mut in_f);
                }
            }
            if mids_in && in_f.contains(&t.a.omega_inv(pr)) {
                fire(Rule::RotRight, t.c, &mut in_f);
            }
            if mids_in && in_f.contains(&t.c.omega(pr)) {
                fire(Rule::RotLeft, t.a, &mut in_f);
            }
        }
    }
    ClosureState { in_f: in_f.into_iter().collect(), trace }
}

/// Re-executes a trace from scratch, checking every premise.
pub fn replay(trace: &[TraceEntry], pr: Params) -> Result<BTreeSet<Vertex>, EngineError> {
    let mut f = BTreeSet::new();
    for (k, entry) in trace.iter().enumerate() {
        if entry.rule != Rule::Seed && !entry.premises(pr).iter().all(|v| f.contains(v)) {
            return Err(EngineError::ReplayMismatch(k));
        }
        f.insert(entry.produced);
    }
    Ok(f)
}

/// A trace as JSON lines, one entry per line.
pub fn trace_json_lines(trace: &[TraceEntry]) -> String {
    let mut out = String::new();
    for entry in trace {
        out.push_str(&serde_json::to_string(entry).expect("trace entries serialize"));
        out.push('\n');
    }
    out
}

/// Parses a trace written by [`trace_json_lines`].
pub fn parse_trace(text: &str) -> Result<Vec<TraceEntry>, serde_json::Error> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

/// The trace entries needed to derive `target`, in derivation order.
pub fn derivation_chain(state: &ClosureState, target: Vertex, pr: Params) -> Vec<TraceEntry> {
    let producer: HashMap<Vertex, usize> = state.trace.iter().enumerate().map(|(k, t)| (t.produced, k)).collect();
    let mut needed = BTreeSet::new();
    let mut stack = vec![target];
    while let Some(v) = stack.pop() {
        if let Some(&k) = producer.get(&v) {
            if needed.insert(k) {
                stack.extend(state.trace[k].premises(pr));
            }
        }
    }
    needed.into_iter().map(|k| state.trace[k].clone()).collect()
}

/// Outcome of a simple-minded-system certification.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub certified: bool,
    pub inconclusive: bool,
    pub params: Params,
    pub system: Vec<Vertex>,
    pub window: Window,
    /// For each member `v`, the derivation of `Ω⁻¹v` when it was reached.
    pub derivations: BTreeMap<String, Vec<TraceEntry>>,
    /// The full derivation log, emitted separately as JSON lines.
    #[serde(skip)]
    pub trace: Vec<TraceEntry>,
    pub missing: Vec<Vertex>,
}

/// Certifies `s` as a simple-minded system: it must have a Euclidean member
/// and `Ω⁻¹(S)` must lie in the extension closure computed on `w`.
pub fn certify_sms(s: &[Vertex], pr: Params, w: Option<Window>) -> Result<Certificate, EngineError> {
    let s = canonical_set(s.iter().copied(), pr);
    if !is_orthogonal_system(&s, pr) {
        return Err(EngineError::NotOrthogonal);
    }
    let w = w.unwrap_or_else(|| default_window(&s, pr));
    if let Some(v) = s.iter().find(|v| !w.contains(**v)) {
        return Err(EngineError::WindowTooSmall(v.to_string()));
    }
    let state = closure(&s, &w);
    let missing: Vec<Vertex> = s.iter().map(|v| v.omega_inv(pr)).filter(|v| !state.in_f.contains(v)).collect();
    let has_euclid = s.iter().any(Vertex::is_euclid);
    let certified = has_euclid && missing.is_empty();
    let derivations = s
        .iter()
        .map(|v| v.omega_inv(pr))
        .filter(|v| state.in_f.contains(v))
        .map(|v| (v.to_string(), derivation_chain(&state, v, pr)))
        .collect();
    Ok(Certificate {
        certified,
        inconclusive: !certified && has_euclid,
        params: pr,
        system: s,
        window: w,
        derivations,
        trace: state.trace,
        missing,
    })
}

/// Parameters of a maximal system read off its Euclidean and tube members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtractedParams {
    /// Members on component 0, lifted so that `a` increases and `b`
    /// decreases within one period.
    pub comp0: Vec<(i64, i64)>,
    pub t_list: Vec<i64>,
    pub s_list: Vec<i64>,
    pub predicted_comp1: Vec<Vertex>,
}

/// Lifts of the component-0 members, sorted by increasing `a`.
fn sorted_lifts(members: &[Vertex], pr: Params) -> Vec<(i64, i64)> {
    let Some(Vertex::Euclid { x: a1, .. }) = members.first().copied() else {
        return Vec::new();
    };
    let mut lifts: Vec<(i64, i64)> = members
        .iter()
        .map(|v| {
            let Vertex::Euclid { x, y, .. } = *v else { unreachable!() };
            // the unique lift with a1 - p < x' ≤ a1
            let l = div_ceil(x - a1, pr.p);
            (x - pr.p * l, y + pr.q * l)
        })
        .collect();
    lifts.sort();
    lifts
}

/// The unique `t` in `lo..=hi` such that the wings of the two quasi-simples
/// `(0, t-1, 0)` and `(1, t, 0)` of `family` miss `s`.
fn gap_parameter(s: &[Vertex], family: Family, lo: i64, hi: i64, pr: Params, name: &str) -> Result<i64, EngineError> {
    let misses = |t: i64| {
        let w0 = Region::Wing { family, level: 0, idx: t - 1, ht: 0 };
        let w1 = Region::Wing { family, level: 1, idx: t, ht: 0 };
        s.iter().all(|v| !w0.contains(*v, pr) && !w1.contains(*v, pr))
    };
    let hits: Vec<i64> = (lo..=hi).filter(|&t| misses(t)).collect();
    match hits.as_slice() {
        [t] => Ok(*t),
        _ => Err(EngineError::ParameterNotUnique(format!("{name} in {lo}..={hi}: {hits:?}"))),
    }
}

/// Reads the gap parameters of a maximal system and predicts its component-1
/// members from the bi-perpendicular of the remaining members.
pub fn extract_params(s: &[Vertex], pr: Params) -> Result<ExtractedParams, EngineError> {
    let s = canonical_set(s.iter().copied(), pr);
    if !is_orthogonal_system(&s, pr) || !maximality(&s, pr).is_maximal {
        return Err(EngineError::NotMaximal);
    }
    let comp0: Vec<Vertex> = s.iter().copied().filter(|v| v.is_euclid() && v.layer() == 0).collect();
    let lifts = sorted_lifts(&comp0, pr);
    let n = lifts.len();
    let rest: Vec<Vertex> = s.iter().copied().filter(|v| !(v.is_euclid() && v.layer() == 1)).collect();
    let region = biperp(&rest, pr);
    let (mut t_list, mut s_list, mut predicted) = (Vec::new(), Vec::new(), Vec::new());
    for r in 0..n {
        let (ar, br) = lifts[r];
        let (an, bn) = if r + 1 < n { lifts[r + 1] } else { (lifts[0].0 + pr.p, lifts[0].1 - pr.q) };
        let t = gap_parameter(&s, Family::Primed, ar + 1, an, pr, &format!("t{}", r + 1))?;
        let sv = gap_parameter(&s, Family::Unprimed, bn + 1, br, pr, &format!("s{}", r + 1))?;
        let boxed: Vec<Vertex> = canonical_set(
            (ar + 1..=an).flat_map(|x| (bn + 1..=br).map(move |y| e(1, x, y))),
            pr,
        )
        .into_iter()
        .filter(|v| region.contains(*v, pr))
        .collect();
        match boxed.as_slice() {
            [v] => predicted.push(*v),
            _ => {
                return Err(EngineError::ParameterNotUnique(format!(
                    "component-1 member {}: {} candidates",
                    r + 1,
                    boxed.len()
                )))
            }
        }
        t_list.push(t);
        s_list.push(sv);
    }
    Ok(ExtractedParams { comp0: lifts, t_list, s_list, predicted_comp1: canonical_set(predicted, pr) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: i64, q: i64) -> Params {
        Params::new(p, q).unwrap()
    }

    #[test]
    fn catalog_contains_anchor_triangles() {
        let p = pr(3, 3);
        let w = Window::new(p, (-4, 4), (-4, 4), 2);
        let cat: BTreeSet<DistinguishedTriangle> = triangle_catalog(p, &w).into_iter().collect();
        assert!(cat.contains(&DistinguishedTriangle::new(tu(0, 0, 0), vec![e(0, 0, 0)], e(0, 0, 1), p)));
        assert!(cat.contains(&DistinguishedTriangle::new(tp(0, 1, 0), vec![e(0, 1, 0)], e(0, 2, 0), p)));
        assert!(cat.contains(&DistinguishedTriangle::new(e(0, 0, 0), vec![e(0, 0, 1), e(0, 1, 0)], e(0, 1, 1), p)));
    }

    #[test]
    fn closure_examples() {
        let p = pr(3, 3);
        let s = [e(0, 0, 0), tp(1, 1, 0)];
        let state = closure(&s, &default_window(&s, p));
        assert!(state.in_f.contains(&e(0, 1, 0)));
        let single = closure(&[e(0, 0, 0)], &default_window(&[e(0, 0, 0)], p));
        assert_eq!(single.in_f.len(), 1);
    }
}
