//! End-to-end acceptance checks. Each check returns a verdict with a short
//! detail line; the `acceptance` test target prints one line per check.

use bga_cli::render::{expected_arrow_count, expected_node_count, render, Format, RenderSpec, RenderWindow};
use bga_core::ar_model::{canonical_set, e, Family, Params, Part, Vertex, Window};
use bga_core::brauer_graph::{classify, parse_graph, DomesticClass};
use bga_core::extension_engine::{certify_sms, closure, extract_params, replay, EngineError};
use bga_core::hom_calculus::stable_hom_nonzero;
use bga_core::ortho::{
    enumerate_ortho_on_triangle, format_system, maximal_on_triangle, maximal_systems_containing, maximality,
    PoolFilter, TrianglePool,
};
use bga_oracle::{exhaustive_max_ortho, formula_mismatches, fundamental_pool, listed_euclidean_systems};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {} ({:.2?})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

fn pr(p: i64, q: i64) -> Params {
    Params::new(p, q).expect("positive parameters")
}

fn timed(id: u32, name: &'static str, limit: Duration, f: impl FnOnce() -> (bool, String)) -> Verdict {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let within = elapsed <= limit;
    let detail = if within { detail } else { format!("{detail}; exceeded {limit:?}") };
    Verdict { id, name, pass: ok && within, detail, elapsed }
}

fn data_file(name: &str) -> String {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}"))
}

/// Classification of the 4-cycle and 3-cycle graphs.
pub fn classification() -> Verdict {
    let square = parse_graph(&data_file("example27.json")).expect("fixture parses");
    let triangle = parse_graph(&data_file("triangle.json")).expect("fixture parses");
    let start = Instant::now();
    let (a, b) = (classify(&square), classify(&triangle));
    let elapsed = start.elapsed();
    let ok_a = matches!(a, DomesticClass::TwoDomestic { p: 2, q: 2, n: 4, .. });
    let ok_b = b == DomesticClass::OneDomesticOddCycle;
    let ok = ok_a && ok_b && elapsed < Duration::from_millis(1);
    Verdict {
        id: 1,
        name: "classification",
        pass: ok,
        detail: format!("4-cycle {a:?}, 3-cycle {b:?}"),
        elapsed,
    }
}

/// Closed-form bi-perpendicular regions against brute force.
pub fn biperp_formulas() -> Verdict {
    timed(2, "bi-perpendicular formulas", Duration::from_secs(60), || {
        let mut bad = Vec::new();
        let mut checked = 0;
        for (p, q) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
            let pr = pr(p, q);
            checked += fundamental_pool(pr).len();
            let m = formula_mismatches(pr);
            if !m.is_empty() {
                bad.push(format!("({p},{q}): {} mismatches, first {}", m.len(), m[0]));
            }
        }
        (bad.is_empty(), if bad.is_empty() { format!("{checked} sources agree on 3-period windows") } else { bad.join("; ") })
    })
}

fn quasi_simples(pr: Params) -> Vec<Vertex> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for level in 0..2u8 {
            for idx in 0..pr.rank(family) {
                out.push(Vertex::Tube { family, level, idx, ht: 0 });
            }
        }
    }
    out
}

/// Violations of Serre duality, Ω/τ equivariance and reflexivity on a pair.
fn pair_violations(x: Vertex, y: Vertex, pr: Params) -> Option<String> {
    let h = stable_hom_nonzero(x, y, pr);
    if h != stable_hom_nonzero(y, x.omega(pr), pr) {
        return Some(format!("Serre duality at ({x}, {y})"));
    }
    if h != stable_hom_nonzero(x.omega(pr), y.omega(pr), pr) {
        return Some(format!("Ω-equivariance at ({x}, {y})"));
    }
    if h != stable_hom_nonzero(x.tau(pr), y.tau(pr), pr) {
        return Some(format!("τ-equivariance at ({x}, {y})"));
    }
    None
}

fn random_brick(rng: &mut ChaCha8Rng, pr: Params) -> Vertex {
    if rng.gen_bool(0.5) {
        e(rng.gen_range(0..2), rng.gen_range(-20..=20), rng.gen_range(-20..=20)).canonical(pr)
    } else {
        let family = if rng.gen_bool(0.5) { Family::Unprimed } else { Family::Primed };
        let rank = pr.rank(family);
        Vertex::Tube { family, level: rng.gen_range(0..2), idx: rng.gen_range(0..rank), ht: rng.gen_range(0..=rank - 2) }
    }
}

fn quasi_simple_count_violation(x: Vertex, pr: Params) -> Option<String> {
    if !x.is_euclid() {
        return None;
    }
    let zs = quasi_simples(pr);
    let out = zs.iter().filter(|&&z| stable_hom_nonzero(x, z, pr)).count();
    let inc = zs.iter().filter(|&&z| stable_hom_nonzero(z, x, pr)).count();
    (out != 2 || inc != 2).then(|| format!("quasi-simple count at {x}: {out} out, {inc} in"))
}

/// Duality and equivariance invariants, exhaustive at (3,3) and sampled at (4,4).
pub fn hom_invariants() -> Verdict {
    timed(3, "Serre duality, Ω/τ equivariance, quasi-simple count", Duration::from_secs(30), || {
        let mut problems = Vec::new();
        let p33 = pr(3, 3);
        let pool = fundamental_pool(p33);
        let window_pool = Window::periods_around(p33, 0, 0, 3).brick_pool();
        let mut pairs = 0usize;
        for &x in &pool {
            if !stable_hom_nonzero(x, x, p33) {
                problems.push(format!("reflexivity at {x}"));
            }
            problems.extend(quasi_simple_count_violation(x, p33));
            for &y in &window_pool {
                pairs += 1;
                problems.extend(pair_violations(x, y, p33));
            }
        }
        let p44 = pr(4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let samples = 20_000;
        for _ in 0..samples {
            let (x, y) = (random_brick(&mut rng, p44), random_brick(&mut rng, p44));
            problems.extend(pair_violations(x, y, p44));
            problems.extend(quasi_simple_count_violation(x, p44));
        }
        let detail = if problems.is_empty() {
            format!("{pairs} pairs at (3,3) and {samples} random pairs at (4,4)")
        } else {
            format!("{} violations, first {}", problems.len(), problems[0])
        };
        (problems.is_empty(), detail)
    })
}

fn size_histogram(systems: &[Vec<Vertex>]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in systems {
        *out.entry(s.len()).or_insert(0) += 1;
    }
    out
}

/// Orthogonal-system counts on single triangle areas of heights 1 to 3.
pub fn triangle_counts() -> Verdict {
    timed(4, "triangle-area counts", Duration::from_secs(10), || {
        let single = |h: i64| TrianglePool::Single { family: Family::Unprimed, level: 0, anchor: 1, height: h };
        let params = |h: i64| pr(h + 2, h + 2);
        let h1 = enumerate_ortho_on_triangle(single(1), params(1)).expect("admissible");
        let h1 = h1.iter().filter(|s| !s.is_empty()).count();
        let h2 = size_histogram(&enumerate_ortho_on_triangle(single(2), params(2)).expect("admissible"));
        let h3 = size_histogram(&maximal_on_triangle(single(3), params(3)).expect("admissible"));
        let ok = h1 == 4
            && h2.get(&2) == Some(&6)
            && h2.get(&3) == Some(&1)
            && h2.keys().all(|&k| k <= 3)
            && h3 == BTreeMap::from([(2, 2), (3, 6), (4, 1)]);
        (ok, format!("height 1: {h1} systems; height 2 sizes {h2:?}; height 3 maximal sizes {h3:?}"))
    })
}

/// Maximal systems on paired triangle areas have size `height + 1`.
pub fn paired_triangles() -> Verdict {
    timed(5, "paired triangle-area cardinalities", Duration::from_secs(120), || {
        let mut bad = Vec::new();
        let mut pools = 0;
        for r in 2..=6 {
            let pr = pr(r, r);
            for h in 0..=r - 2 {
                for family in Family::ALL {
                    for pool in [
                        TrianglePool::Paired { family, anchor: 1, height: h },
                        TrianglePool::LowerShifted { family, anchor: 1, height: h },
                        TrianglePool::UpperShifted { family, anchor: 1, height: h },
                    ] {
                        pools += 1;
                        let sizes = size_histogram(&maximal_on_triangle(pool, pr).expect("admissible"));
                        if sizes.keys().any(|&k| k as i64 != h + 1) {
                            bad.push(format!("{pool:?}: {sizes:?}"));
                        }
                    }
                }
            }
        }
        (bad.is_empty(), if bad.is_empty() { format!("{pools} pools, every maximal system of size height+1") } else { bad.join("; ") })
    })
}

/// The worked Euclidean example lists five maximal systems through `E(0,1,0)`.
pub fn euclidean_example() -> Verdict {
    timed(6, "Euclidean maximal systems through E(0,1,0) at p=q=3", Duration::from_secs(10), || {
        let pr = pr(3, 3);
        let listed = listed_euclidean_systems();
        let found = maximal_systems_containing(&[e(0, 1, 0)], pr, PoolFilter::EuclideanOnly).expect("orthogonal");
        let oracle = exhaustive_max_ortho(pr, e(0, 1, 0), true).expect("Euclidean anchor").systems;
        let listed_found = listed.iter().filter(|s| found.contains(s)).count();
        let extra: Vec<String> = found.iter().filter(|s| !listed.contains(s)).map(|s| format_system(s)).collect();
        let ok = found == listed;
        let detail = format!(
            "expected {} listed systems, found {} ({} of the listed among them, oracle agrees: {}); unlisted include {}",
            listed.len(),
            found.len(),
            listed_found,
            oracle == found,
            extra.first().map_or("none".to_string(), Clone::clone)
        );
        (ok, detail)
    })
}

fn tube_count(s: &[Vertex], family: Family) -> usize {
    s.iter().filter(|v| matches!(v, Vertex::Tube { family: f, .. } if *f == family)).count()
}

fn comp_count(s: &[Vertex], comp: u8) -> usize {
    s.iter().filter(|v| v.is_euclid() && v.layer() == comp).count()
}

/// The maximal systems containing `E(0,0,0)` at the three small parameter pairs.
pub fn anchored_systems() -> Vec<(Params, Vec<Vec<Vertex>>)> {
    [(2, 2), (2, 3), (3, 3)]
        .into_iter()
        .map(|(p, q)| {
            let pr = pr(p, q);
            (pr, maximal_systems_containing(&[e(0, 0, 0)], pr, PoolFilter::All).expect("orthogonal"))
        })
        .collect()
}

/// Cardinality, component balance and tube counts of maximal systems.
pub fn cardinalities() -> Verdict {
    timed(7, "cardinality theorems", Duration::from_secs(300), || {
        let mut bad = Vec::new();
        let mut summary = Vec::new();
        for (pr, systems) in anchored_systems() {
            let oracle = exhaustive_max_ortho(pr, e(0, 0, 0), false).expect("Euclidean anchor").systems;
            if oracle != systems {
                bad.push(format!("({},{}): enumeration disagrees with backtracking oracle", pr.p, pr.q));
            }
            for s in &systems {
                let (k0, k1) = (comp_count(s, 0), comp_count(s, 1));
                let ok = s.len() as i64 == pr.p + pr.q
                    && k0 == k1
                    && tube_count(s, Family::Unprimed) as i64 == pr.q - k0 as i64
                    && tube_count(s, Family::Primed) as i64 == pr.p - k0 as i64;
                if !ok {
                    bad.push(format!("({},{}): {}", pr.p, pr.q, format_system(s)));
                }
            }
            summary.push(format!("({},{}): {} systems", pr.p, pr.q, systems.len()));
        }
        (bad.is_empty(), if bad.is_empty() { summary.join(", ") } else { bad.join("; ") })
    })
}

/// Every maximal system certifies with a replayable trace; punctured systems
/// are non-maximal and do not certify.
pub fn certification() -> Verdict {
    timed(8, "simple-minded system certification", Duration::from_secs(600), || {
        let mut bad = Vec::new();
        let (mut certified, mut punctured) = (0, 0);
        for (pr, systems) in anchored_systems() {
            for s in &systems {
                let cert = certify_sms(s, pr, None).expect("orthogonal");
                let full = closure(s, &cert.window).in_f;
                match replay(&cert.trace, pr) {
                    Ok(f) if f == full && cert.certified => certified += 1,
                    Ok(_) => bad.push(format!("not certified or replay differs: {}", format_system(s))),
                    Err(e) => bad.push(format!("{e}: {}", format_system(s))),
                }
                for drop in 0..s.len() {
                    let sub: Vec<Vertex> = s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v).collect();
                    punctured += 1;
                    if maximality(&sub, pr).is_maximal {
                        bad.push(format!("punctured system reported maximal: {}", format_system(&sub)));
                    }
                    if certify_sms(&sub, pr, None).map(|c| c.certified).unwrap_or(false) {
                        bad.push(format!("punctured system certified: {}", format_system(&sub)));
                    }
                }
            }
        }
        (bad.is_empty(), if bad.is_empty() { format!("{certified} certified, {punctured} punctured systems rejected") } else { bad.join("; ") })
    })
}

/// Gap parameters predict the component-1 members.
pub fn parameter_round_trip() -> Verdict {
    timed(9, "parameter extraction round trip", Duration::from_secs(120), || {
        let mut bad = Vec::new();
        let mut n = 0;
        for (pr, systems) in anchored_systems() {
            for s in &systems {
                n += 1;
                let actual = canonical_set(s.iter().copied().filter(|v| v.is_euclid() && v.layer() == 1), pr);
                match extract_params(s, pr) {
                    Ok(x) if x.predicted_comp1 == actual => {}
                    Ok(x) => bad.push(format!("{}: predicted {}", format_system(s), format_system(&x.predicted_comp1))),
                    Err(e @ EngineError::ParameterNotUnique(_)) => bad.push(format!("{}: {e}", format_system(s))),
                    Err(e) => bad.push(format!("{}: {e}", format_system(s))),
                }
            }
        }
        (bad.is_empty(), if bad.is_empty() { format!("{n} systems round-trip") } else { bad.join("; ") })
    })
}

fn check_render(spec: &RenderSpec) -> Result<(), String> {
    let (pr, part, size) = (spec.params, spec.part, spec.window.size);
    let (nodes, arrows) = (expected_node_count(pr, part, size), expected_arrow_count(pr, part, size));
    let layout = spec.layout();
    if layout.nodes.len() != nodes || layout.arrows.len() != arrows {
        return Err(format!("{part:?}: layout {}/{} vs {nodes}/{arrows}", layout.nodes.len(), layout.arrows.len()));
    }
    let mut spec = spec.clone();
    spec.format = Format::Svg;
    let svg = render(&spec);
    if svg != render(&spec) {
        return Err("svg output differs between runs".into());
    }
    let doc = roxmltree::Document::parse(&svg).map_err(|e| format!("svg does not parse: {e}"))?;
    let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
    let lines = doc.descendants().filter(|n| n.has_tag_name("line")).count();
    if circles != nodes || lines != arrows {
        return Err(format!("{part:?}: svg has {circles} circles and {lines} lines"));
    }
    spec.format = Format::Dot;
    let dot = render(&spec);
    if dot != render(&spec) {
        return Err("dot output differs between runs".into());
    }
    let ast = dot_parser::ast::Graph::try_from(dot.as_str()).map_err(|e| format!("dot does not parse: {e}"))?;
    let g = dot_parser::canonical::Graph::from(ast);
    if g.nodes.set.len() != nodes || g.edges.set.len() != arrows {
        return Err(format!("{part:?}: dot has {} nodes and {} edges", g.nodes.set.len(), g.edges.set.len()));
    }
    for format in [Format::Tikz, Format::Json] {
        spec.format = format;
        if render(&spec) != render(&spec) {
            return Err(format!("{format:?} output differs between runs"));
        }
    }
    Ok(())
}

/// Renderer arithmetic, well-formedness and determinism.
pub fn renderer() -> Verdict {
    timed(10, "renderer", Duration::from_secs(30), || {
        let mut bad = Vec::new();
        let mut n = 0;
        for (p, q) in [(2, 3), (3, 3)] {
            let pr = pr(p, q);
            for part in Part::ALL {
                for size in 1..=5 {
                    n += 1;
                    let spec = RenderSpec::new(pr, part.name(), RenderWindow::centred(size), BTreeMap::new(), Format::Svg)
                        .expect("valid spec");
                    if let Err(e) = check_render(&spec) {
                        bad.push(e);
                    }
                }
            }
        }
        let pr = pr(3, 3);
        let hl = BTreeMap::from([("biperp".to_string(), canonical_set([e(0, -1, 1), e(0, -1, 2), e(0, 0, 1), e(0, 0, 2)], pr))]);
        let window = RenderWindow { x0: -2, y0: 0, size: 4 };
        match RenderSpec::new(pr, "e0", window, hl, Format::Svg) {
            Ok(spec) => {
                let lit = spec.layout().nodes.iter().filter(|n| !n.labels.is_empty()).count();
                if lit != 4 {
                    bad.push(format!("highlighted bi-perpendicular shows {lit} nodes"));
                }
                if let Err(e) = check_render(&spec) {
                    bad.push(e);
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
        (bad.is_empty(), if bad.is_empty() { format!("{} renderings checked", n + 1) } else { bad.join("; ") })
    })
}

/// All criteria in order.
pub fn run_all() -> Vec<Verdict> {
    vec![
        classification(),
        biperp_formulas(),
        hom_invariants(),
        triangle_counts(),
        paired_triangles(),
        euclidean_example(),
        cardinalities(),
        certification(),
        parameter_round_trip(),
        renderer(),
    ]
}
