//! ASCII and SVG rendering of regions, tours, turn graphs, and spanning
//! trees. Output is deterministic: identical inputs give byte-identical
//! bytes, with SVG elements emitted in sorted order.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::GPoint;
use crate::pseudotour::Pseudotour;
use crate::region::Polyomino;
use crate::turngraph::{SpanningTree, TurnGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("no layers requested")]
    EmptyLayers,
    #[error("svg scale must be at least 4 pixels per cell")]
    ScaleTooSmall,
    #[error("layer {0:?} requested without a matching input")]
    MissingInput(Layer),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Region,
    Tour,
    TurnGraph,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub format: Format,
    pub layers: BTreeSet<Layer>,
    /// Pixels per cell, SVG only.
    pub scale: u32,
}

impl RenderSpec {
    pub fn new(format: Format, layers: impl IntoIterator<Item = Layer>, scale: u32) -> Self {
        RenderSpec {
            format,
            layers: layers.into_iter().collect(),
            scale,
        }
    }
}

/// The drawable inputs; layers pick from these. A requested turn-graph
/// layer falls back to deriving the graph from the tour.
#[derive(Debug, Clone, Copy, Default)]
pub struct RenderInput<'a> {
    pub region: Option<&'a Polyomino>,
    pub tour: Option<&'a Pseudotour>,
    pub turn_graph: Option<&'a TurnGraph>,
    pub tree: Option<&'a SpanningTree>,
}

pub fn render(input: &RenderInput, spec: &RenderSpec) -> Result<String, RenderError> {
    if spec.layers.is_empty() {
        return Err(RenderError::EmptyLayers);
    }
    if spec.format == Format::Svg && spec.scale < 4 {
        return Err(RenderError::ScaleTooSmall);
    }
    let region = input
        .region
        .or_else(|| input.tour.map(|t| t.region()))
        .or_else(|| input.turn_graph.map(|g| g.region()));
    let derived_graph = if spec.layers.contains(&Layer::TurnGraph) && input.turn_graph.is_none() {
        input.tour.map(crate::turngraph::build_turn_graph)
    } else {
        None
    };
    let graph = input.turn_graph.or(derived_graph.as_ref());

    for layer in &spec.layers {
        let ok = match layer {
            Layer::Region => region.is_some(),
            Layer::Tour => input.tour.is_some(),
            Layer::TurnGraph => graph.is_some(),
            Layer::Tree => input.tree.is_some(),
        };
        if !ok {
            return Err(RenderError::MissingInput(*layer));
        }
    }
    // tree nodes are plotted in the doubled region's coordinates, so a
    // tree-only render sizes the canvas to the doubled region
    let doubled = input.tree.map(|t| t.region().double());
    let region = region
        .or(doubled.as_ref())
        .ok_or(RenderError::MissingInput(Layer::Region))?;

    match spec.format {
        Format::Ascii => Ok(render_ascii(region, input, graph, spec)),
        Format::Svg => Ok(render_svg(region, input, graph, spec)),
    }
}

// Character canvas indexed directly by doubled coordinates: centers land on
// odd/odd positions, grid vertices on even/even.
fn render_ascii(
    region: &Polyomino,
    input: &RenderInput,
    graph: Option<&TurnGraph>,
    spec: &RenderSpec,
) -> String {
    let (w, h) = region.extent();
    let cols = (2 * w + 1) as usize;
    let rows = (2 * h + 1) as usize;
    let mut canvas = vec![vec![' '; cols]; rows];
    let put = |p: GPoint, ch: char, canvas: &mut Vec<Vec<char>>| {
        let col = p.x as usize;
        let row = (2 * h - p.y) as usize;
        canvas[row][col] = ch;
    };

    if spec.layers.contains(&Layer::Region) {
        for c in region.cells() {
            put(c.center(), '.', &mut canvas);
        }
    }
    if spec.layers.contains(&Layer::Tree) {
        if let Some(tree) = input.tree {
            for c in tree.region().cells() {
                put(GPoint::new(4 * c.x + 2, 4 * c.y + 2), '+', &mut canvas);
            }
            for &(a, b) in tree.edges() {
                let mid = GPoint::new(2 * (a.x + b.x) + 2, 2 * (a.y + b.y) + 2);
                let ch = if a.y == b.y { '-' } else { '|' };
                put(mid, ch, &mut canvas);
            }
        }
    }
    if spec.layers.contains(&Layer::Tour) {
        if let Some(tour) = input.tour {
            for &(a, b) in tour.edges() {
                let mid = GPoint::new((a.x + b.x) / 2, (a.y + b.y) / 2);
                let ch = if a.y == b.y { '-' } else { '|' };
                put(mid, ch, &mut canvas);
            }
            for cycle in tour.cycles() {
                let n = cycle.len();
                for i in 0..n {
                    let prev = cycle[(i + n - 1) % n];
                    let next = cycle[(i + 1) % n];
                    let v = cycle[i];
                    let dirs: BTreeSet<(i64, i64)> = [prev, next]
                        .iter()
                        .map(|u| ((u.x - v.x).signum(), (u.y - v.y).signum()))
                        .collect();
                    let ch = corner_char(&dirs);
                    put(v, ch, &mut canvas);
                }
            }
        }
    }
    // drawn last: each diagonal's visible character sits at its midpoint,
    // the turn vertex, which the tour layer would otherwise overwrite
    if spec.layers.contains(&Layer::TurnGraph) {
        if let Some(g) = graph {
            for d in g.diagonals() {
                let ch = if d.slope_positive() { '/' } else { '\\' };
                put(d.midpoint(), ch, &mut canvas);
            }
        }
    }

    let mut out = String::new();
    for row in canvas {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn corner_char(dirs: &BTreeSet<(i64, i64)>) -> char {
    let has = |d: (i64, i64)| dirs.contains(&d);
    match (has((-1, 0)), has((1, 0)), has((0, -1)), has((0, 1))) {
        (true, true, false, false) => '-',
        (false, false, true, true) => '|',
        (false, true, false, true) => '+', // up and right
        (true, false, false, true) => '+',
        (false, true, true, false) => '+',
        (true, false, true, false) => '+',
        _ => '*',
    }
}

fn px(doubled: i64, scale: u32) -> String {
    let v = doubled * scale as i64;
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{}.5", v.div_euclid(2))
    }
}

fn render_svg(
    region: &Polyomino,
    input: &RenderInput,
    graph: Option<&TurnGraph>,
    spec: &RenderSpec,
) -> String {
    let (w, h) = region.extent();
    let scale = spec.scale;
    let flip = |p: GPoint| GPoint::new(p.x, 2 * h - p.y);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        w * scale as i64,
        h * scale as i64,
        w * scale as i64,
        h * scale as i64
    ));

    if spec.layers.contains(&Layer::Region) {
        for c in region.cells() {
            let tl = flip(GPoint::new(2 * c.x, 2 * c.y + 2));
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#f2f2f2\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
                px(tl.x, scale),
                px(tl.y, scale),
                scale,
                scale
            ));
        }
    }
    if spec.layers.contains(&Layer::Tree) {
        if let Some(tree) = input.tree {
            for &(a, b) in tree.edges() {
                let pa = flip(GPoint::new(4 * a.x + 2, 4 * a.y + 2));
                let pb = flip(GPoint::new(4 * b.x + 2, 4 * b.y + 2));
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d82f2f\" stroke-width=\"2\"/>\n",
                    px(pa.x, scale),
                    px(pa.y, scale),
                    px(pb.x, scale),
                    px(pb.y, scale)
                ));
            }
            for c in tree.region().cells() {
                let p = flip(GPoint::new(4 * c.x + 2, 4 * c.y + 2));
                out.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#d82f2f\"/>\n",
                    px(p.x, scale),
                    px(p.y, scale)
                ));
            }
        }
    }
    if spec.layers.contains(&Layer::Tour) {
        if let Some(tour) = input.tour {
            for cycle in tour.cycles() {
                let pts: Vec<String> = cycle
                    .iter()
                    .chain(cycle.first())
                    .map(|&p| {
                        let q = flip(p);
                        format!("{},{}", px(q.x, scale), px(q.y, scale))
                    })
                    .collect();
                out.push_str(&format!(
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"#2458d8\" stroke-width=\"2\"/>\n",
                    pts.join(" ")
                ));
            }
        }
    }
    if spec.layers.contains(&Layer::TurnGraph) {
        if let Some(g) = graph {
            for d in g.diagonals() {
                let pa = flip(d.a());
                let pb = flip(d.b());
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#d82f2f\" stroke-width=\"2\"/>\n",
                    px(pa.x, scale),
                    px(pa.y, scale),
                    px(pb.x, scale),
                    px(pb.y, scale)
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudotour::boundary_pseudotour;
    use crate::testutil::two_rings_4x4;

    fn poly(text: &str) -> Polyomino {
        Polyomino::parse_ascii(text).unwrap()
    }

    #[test]
    fn ascii_2x2_tour() {
        let t = boundary_pseudotour(&poly("##\n##")).unwrap();
        let spec = RenderSpec::new(Format::Ascii, [Layer::Tour], 4);
        let input = RenderInput {
            tour: Some(&t),
            ..Default::default()
        };
        let art = render(&input, &spec).unwrap();
        assert_eq!(art, "\n +-+\n | |\n +-+\n\n");
    }

    #[test]
    fn empty_layers_rejected() {
        let t = boundary_pseudotour(&poly("##\n##")).unwrap();
        let input = RenderInput {
            tour: Some(&t),
            ..Default::default()
        };
        let spec = RenderSpec::new(Format::Ascii, [], 4);
        assert_eq!(render(&input, &spec), Err(RenderError::EmptyLayers));
    }

    #[test]
    fn missing_input_rejected() {
        let spec = RenderSpec::new(Format::Ascii, [Layer::Tour], 4);
        let input = RenderInput::default();
        assert_eq!(render(&input, &spec), Err(RenderError::MissingInput(Layer::Tour)));
    }

    #[test]
    fn svg_two_rings_with_turn_graph() {
        let t = two_rings_4x4();
        let spec = RenderSpec::new(Format::Svg, [Layer::Tour, Layer::TurnGraph], 16);
        let input = RenderInput {
            tour: Some(&t),
            ..Default::default()
        };
        let svg = render(&input, &spec).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<line").count(), 8);
        // deterministic: identical inputs give identical bytes
        assert_eq!(render(&input, &spec).unwrap(), svg);
    }

    #[test]
    fn svg_scale_floor() {
        let t = two_rings_4x4();
        let input = RenderInput {
            tour: Some(&t),
            ..Default::default()
        };
        let spec = RenderSpec::new(Format::Svg, [Layer::Tour], 2);
        assert_eq!(render(&input, &spec), Err(RenderError::ScaleTooSmall));
    }
}
