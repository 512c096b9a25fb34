//! Drawings of one part of the stable AR-quiver over a finite window, with
//! labelled vertex sets highlighted, as DOT, SVG, TikZ or JSON.
//!
//! Euclidean parts are drawn as a patch of the universal cover: `x` grows to
//! the right and `y` grows along the up-left diagonal. Tube parts are drawn
//! as one period cut open, with height growing upwards.

use bga_core::ar_model::{e, Params, Part, Vertex};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("unknown part {0:?}, expected one of e0, e1, u0, u1, p0, p1")]
    UnknownPart(String),
    #[error("unknown format {0:?}, expected one of dot, svg, tikz, json")]
    UnknownFormat(String),
    #[error("window size must be positive, got {0}")]
    EmptyWindow(i64),
    #[error("highlight {label:?} contains {vertex}, which is outside the drawn part or window")]
    HighlightOutside { label: String, vertex: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
    Tikz,
    Json,
}

impl FromStr for Format {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            "json" => Ok(Format::Json),
            _ => Err(RenderError::UnknownFormat(s.to_string())),
        }
    }
}

/// The drawn window. On a Euclidean part it is the box
/// `[x0, x0+size) × [y0, y0+size)` of lifted coordinates; on a tube part it is
/// one period with heights `0..size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderWindow {
    pub x0: i64,
    pub y0: i64,
    pub size: i64,
}

impl RenderWindow {
    /// A square window of the given size centred on the origin.
    pub fn centred(size: i64) -> Self {
        let offset = -(size - 1).max(0) / 2;
        RenderWindow { x0: offset, y0: offset, size }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub params: Params,
    pub part: Part,
    pub window: RenderWindow,
    pub highlights: BTreeMap<String, Vec<Vertex>>,
    pub format: Format,
}

impl RenderSpec {
    /// Validates a spec, checking that every highlighted vertex is drawn.
    pub fn new(
        params: Params,
        part: &str,
        window: RenderWindow,
        highlights: BTreeMap<String, Vec<Vertex>>,
        format: Format,
    ) -> Result<Self, RenderError> {
        let part = Part::from_str(part).map_err(|_| RenderError::UnknownPart(part.to_string()))?;
        if window.size < 1 {
            return Err(RenderError::EmptyWindow(window.size));
        }
        let spec = RenderSpec { params, part, window, highlights, format };
        let drawn: Vec<Vertex> = spec.layout().nodes.iter().map(|n| n.vertex).collect();
        for (label, set) in &spec.highlights {
            if let Some(v) = set.iter().map(|v| v.canonical(params)).find(|v| !drawn.contains(v)) {
                return Err(RenderError::HighlightOutside { label: label.clone(), vertex: v.to_string() });
            }
        }
        Ok(spec)
    }

    fn labels_of(&self, v: Vertex) -> Vec<String> {
        self.highlights
            .iter()
            .filter(|(_, set)| set.iter().any(|x| x.canonical(self.params) == v))
            .map(|(label, _)| label.clone())
            .collect()
    }

    /// Nodes and mesh arrows of the window.
    pub fn layout(&self) -> Layout {
        let pr = self.params;
        let RenderWindow { x0, y0, size } = self.window;
        let mut nodes = Vec::new();
        let mut arrows = Vec::new();
        match self.part.tube() {
            None => {
                let comp = self.part.comp().expect("Euclidean part");
                let id = |x: i64, y: i64| ((x - x0) * size + (y - y0)) as usize;
                for x in x0..x0 + size {
                    for y in y0..y0 + size {
                        let vertex = e(comp, x, y).canonical(pr);
                        nodes.push(Node {
                            id: id(x, y),
                            vertex,
                            x: x as f64 - 0.5 * y as f64,
                            y: y as f64,
                            labels: self.labels_of(vertex),
                        });
                        if x + 1 < x0 + size {
                            arrows.push((id(x, y), id(x + 1, y)));
                        }
                        if y + 1 < y0 + size {
                            arrows.push((id(x, y), id(x, y + 1)));
                        }
                    }
                }
            }
            Some((family, level)) => {
                let rank = pr.rank(family);
                let id = |j: i64, k: i64| (j.rem_euclid(rank) * size + k) as usize;
                for j in 0..rank {
                    for k in 0..size {
                        let vertex = Vertex::Tube { family, level, idx: j, ht: k }.canonical(pr);
                        nodes.push(Node {
                            id: id(j, k),
                            vertex,
                            x: j as f64 + 0.5 * k as f64,
                            y: k as f64,
                            labels: self.labels_of(vertex),
                        });
                        if k + 1 < size {
                            arrows.push((id(j, k), id(j, k + 1)));
                        }
                        if k >= 1 {
                            arrows.push((id(j, k), id(j + 1, k - 1)));
                        }
                    }
                }
            }
        }
        nodes.sort_by_key(|n| n.id);
        arrows.sort();
        Layout { nodes, arrows }
    }
}

/// A drawn vertex. Coordinates are in layout units with `y` pointing up.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Node {
    pub id: usize,
    pub vertex: Vertex,
    pub x: f64,
    pub y: f64,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub nodes: Vec<Node>,
    pub arrows: Vec<(usize, usize)>,
}

/// Number of nodes a window of the given size shows on `part`.
pub fn expected_node_count(pr: Params, part: Part, size: i64) -> usize {
    match part.tube() {
        None => (size * size) as usize,
        Some((family, _)) => (pr.rank(family) * size) as usize,
    }
}

/// Number of mesh arrows a window of the given size shows on `part`.
pub fn expected_arrow_count(pr: Params, part: Part, size: i64) -> usize {
    match part.tube() {
        None => (2 * size * (size - 1)) as usize,
        Some((family, _)) => (2 * pr.rank(family) * (size - 1)) as usize,
    }
}

const PALETTE: &[&str] = &["#e6550d", "#3182bd", "#31a354", "#756bb1", "#de2d26", "#636363"];
const TIKZ_PALETTE: &[&str] = &["orange", "cyan", "green", "violet", "red", "gray"];

fn colour_index(spec: &RenderSpec, node: &Node) -> Option<usize> {
    let first = node.labels.first()?;
    spec.highlights.keys().position(|k| k == first).map(|i| i % PALETTE.len())
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn css_class(label: &str) -> String {
    label.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '-' }).collect()
}

/// Renders the spec in its chosen format. Output is deterministic.
pub fn render(spec: &RenderSpec) -> String {
    let layout = spec.layout();
    match spec.format {
        Format::Dot => render_dot(spec, &layout),
        Format::Svg => render_svg(spec, &layout),
        Format::Tikz => render_tikz(spec, &layout),
        Format::Json => render_json(spec, &layout),
    }
}

fn render_dot(spec: &RenderSpec, layout: &Layout) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", spec.part.name()).unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for n in &layout.nodes {
        write!(out, "  \"n{}\" [label=\"{}\", pos=\"{:.1},{:.1}!\"", n.id, n.vertex, n.x * 72.0, n.y * 72.0).unwrap();
        if let Some(c) = colour_index(spec, n) {
            write!(out, ", style=filled, fillcolor=\"{}\", tooltip=\"{}\"", PALETTE[c], n.labels.iter().map(|l| css_class(l)).collect::<Vec<_>>().join(" ")).unwrap();
        }
        writeln!(out, "];").unwrap();
    }
    for (a, b) in &layout.arrows {
        writeln!(out, "  \"n{a}\" -> \"n{b}\";").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

const SVG_UNIT: f64 = 60.0;
const SVG_MARGIN: f64 = 40.0;
const SVG_RADIUS: f64 = 6.0;

fn render_svg(spec: &RenderSpec, layout: &Layout) -> String {
    let min_x = layout.nodes.iter().map(|n| n.x).fold(f64::INFINITY, f64::min);
    let max_x = layout.nodes.iter().map(|n| n.x).fold(f64::NEG_INFINITY, f64::max);
    let max_y = layout.nodes.iter().map(|n| n.y).fold(f64::NEG_INFINITY, f64::max);
    let min_y = layout.nodes.iter().map(|n| n.y).fold(f64::INFINITY, f64::min);
    let width = (max_x - min_x) * SVG_UNIT + 2.0 * SVG_MARGIN;
    let height = (max_y - min_y) * SVG_UNIT + 2.0 * SVG_MARGIN;
    let px = |n: &Node| ((n.x - min_x) * SVG_UNIT + SVG_MARGIN, (max_y - n.y) * SVG_UNIT + SVG_MARGIN);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(out, "<title>{} p={} q={}</title>", spec.part.name(), spec.params.p, spec.params.q).unwrap();
    writeln!(
        out,
        r#"<defs><marker id="head" markerWidth="6" markerHeight="6" refX="6" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="black"/></marker></defs>"#
    )
    .unwrap();
    writeln!(out, r#"<g class="arrows" stroke="black" stroke-width="1">"#).unwrap();
    for (a, b) in &layout.arrows {
        let ((x1, y1), (x2, y2)) = (px(&layout.nodes[*a]), px(&layout.nodes[*b]));
        let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt();
        let (ux, uy) = ((x2 - x1) / len, (y2 - y1) / len);
        let shrink = SVG_RADIUS + 2.0;
        writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" marker-end="url(#head)"/>"#,
            x1 + ux * shrink,
            y1 + uy * shrink,
            x2 - ux * shrink,
            y2 - uy * shrink
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g class="nodes" font-family="sans-serif" font-size="9">"#).unwrap();
    for n in &layout.nodes {
        let (x, y) = px(n);
        let classes: Vec<String> = std::iter::once("node".to_string())
            .chain(n.labels.iter().map(|l| format!("hl-{}", css_class(l))))
            .collect();
        let fill = colour_index(spec, n).map_or("white", |c| PALETTE[c]);
        writeln!(
            out,
            r#"<g class="{}"><circle cx="{x:.1}" cy="{y:.1}" r="{SVG_RADIUS:.1}" fill="{fill}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text></g>"#,
            classes.join(" "),
            x,
            y + SVG_RADIUS + 10.0,
            xml_escape(&n.vertex.to_string())
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if !spec.highlights.is_empty() {
        writeln!(out, r#"<g class="legend" font-family="sans-serif" font-size="10">"#).unwrap();
        for (i, label) in spec.highlights.keys().enumerate() {
            let y = 14.0 + 14.0 * i as f64;
            writeln!(
                out,
                r#"<rect x="4" y="{:.1}" width="10" height="10" fill="{}"/><text x="18" y="{:.1}">{}</text>"#,
                y - 9.0,
                PALETTE[i % PALETTE.len()],
                y,
                xml_escape(label)
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

fn render_tikz(spec: &RenderSpec, layout: &Layout) -> String {
    let mut out = String::new();
    writeln!(out, "\\documentclass[tikz]{{standalone}}").unwrap();
    writeln!(out, "\\begin{{document}}").unwrap();
    writeln!(out, "% part {} with p={} q={}", spec.part.name(), spec.params.p, spec.params.q).unwrap();
    for (i, label) in spec.highlights.keys().enumerate() {
        writeln!(out, "% {}: {}", TIKZ_PALETTE[i % TIKZ_PALETTE.len()], css_class(label)).unwrap();
    }
    writeln!(out, "\\begin{{tikzpicture}}[x=1.4cm, y=1.4cm, every node/.style={{font=\\tiny}}]").unwrap();
    for n in &layout.nodes {
        let style = match colour_index(spec, n) {
            Some(c) => format!("draw, fill={}!40", TIKZ_PALETTE[c]),
            None => "draw".to_string(),
        };
        writeln!(out, "\\node[{style}] (n{}) at ({:.2},{:.2}) {{${}$}};", n.id, n.x, n.y, n.vertex).unwrap();
    }
    for (a, b) in &layout.arrows {
        writeln!(out, "\\draw[->] (n{a}) -- (n{b});").unwrap();
    }
    writeln!(out, "\\end{{tikzpicture}}").unwrap();
    writeln!(out, "\\end{{document}}").unwrap();
    out
}

#[derive(Serialize)]
struct JsonLayout<'a> {
    part: &'static str,
    params: Params,
    nodes: &'a [Node],
    arrows: Vec<[usize; 2]>,
}

fn render_json(spec: &RenderSpec, layout: &Layout) -> String {
    let doc = JsonLayout {
        part: spec.part.name(),
        params: spec.params,
        nodes: &layout.nodes,
        arrows: layout.arrows.iter().map(|&(a, b)| [a, b]).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("layout serializes");
    s.push('\n');
    s
}
