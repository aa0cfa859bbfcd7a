//! Browser bindings for the interactive demo page: region diagnostics,
//! minimum-turn tour construction, and tour improvement, all rendered as
//! SVG strings for direct injection into the page.

use wasm_bindgen::prelude::*;

use minturn::oracle::{min_turn_regular, EnumerationLimits};
use minturn::render::{render, Format, Layer, RenderInput, RenderSpec};
use minturn::transform::improve;
use minturn::turngraph::{is_regular, tour_from_spanning_tree};
use minturn::{Polyomino, Pseudotour};

fn parse_region(text: &str) -> Result<Polyomino, String> {
    let parsed = if text.trim_start().starts_with("cell ") {
        Polyomino::parse_cell_lines(text)
    } else {
        Polyomino::parse_ascii(text)
    };
    parsed.map_err(|e| e.to_string())
}

fn svg_of(tour: &Pseudotour, with_graph: bool, scale: u32) -> String {
    let mut layers = vec![Layer::Region, Layer::Tour];
    if with_graph {
        layers.push(Layer::TurnGraph);
    }
    let graph = minturn::turngraph::build_turn_graph(tour);
    let input = RenderInput {
        region: Some(tour.region()),
        tour: Some(tour),
        turn_graph: Some(&graph),
        tree: None,
    };
    render(&input, &RenderSpec::new(Format::Svg, layers, scale))
        .expect("render of a valid tour succeeds")
}

/// Diagnoses a region typed into the demo: connectivity, holes, evenness.
#[wasm_bindgen]
pub fn check_region(text: &str) -> String {
    let region = match parse_region(text) {
        Ok(r) => r,
        Err(e) => return format!("error: {e}"),
    };
    let mut notes = Vec::new();
    if !region.is_simply_connected() {
        notes.push("not simply connected".to_string());
    }
    if !region.is_even() {
        notes.push("not even".to_string());
    }
    if notes.is_empty() {
        let s = region.halve().expect("even region halves");
        format!(
            "even, simply connected, {} cells (S has {})",
            region.len(),
            s.len()
        )
    } else {
        notes.join(", ")
    }
}

/// Builds a minimum-turn tour of an even simply connected region via the
/// spanning-tree search and returns it drawn as SVG.
#[wasm_bindgen]
pub fn min_tour_svg(text: &str, scale: u32) -> String {
    let region = match parse_region(text) {
        Ok(r) => r,
        Err(e) => return format!("error: {e}"),
    };
    if !region.is_even() || !region.is_simply_connected() {
        return "error: region must be an even simply connected polyomino".to_string();
    }
    let limits = EnumerationLimits {
        max_cells: 64,
        time_budget: std::time::Duration::from_secs(10),
    };
    match min_turn_regular(&region, &limits) {
        Ok((_, trees)) => {
            let tree = trees.into_iter().next().expect("spanning tree exists");
            svg_of(&tour_from_spanning_tree(&tree), false, scale)
        }
        Err(e) => format!("error: {e}"),
    }
}

/// Improves a tour typed in the tour format. Returns
/// `[before_svg, after_svg, trace]`, or a single `error: ...` entry.
#[wasm_bindgen]
pub fn improve_tour(text: &str, scale: u32) -> Vec<String> {
    let tour = match Pseudotour::parse_tour_text(text) {
        Ok(t) => t,
        Err(e) => return vec![format!("error: {e}")],
    };
    if !tour.is_tour() {
        return vec!["error: input is not a single-cycle tour".to_string()];
    }
    let before = svg_of(&tour, true, scale);
    if is_regular(&tour) {
        let trace = "already regular\n".to_string();
        return vec![before.clone(), before, trace];
    }
    match improve(&tour) {
        Ok((out, report)) => vec![before, svg_of(&out, true, scale), report.to_trace_text()],
        Err(e) => vec![format!("error: {e}")],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_region_strings() {
        assert!(check_region("##\n##").contains("even, simply connected"));
        assert!(check_region("###").contains("not even"));
        assert!(check_region("@@").starts_with("error:"));
    }

    #[test]
    fn min_tour_svg_draws_a_polyline() {
        let svg = min_tour_svg("####\n####", 24);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn improve_tour_returns_before_after_trace() {
        let irregular = "0,0 1,0 2,0 3,0 3,1 2,1 2,2 3,2 3,3 2,3 1,3 0,3 0,2 1,2 1,1 0,1\n";
        let parts = improve_tour(irregular, 24);
        assert_eq!(parts.len(), 3);
        assert!(parts[0].starts_with("<svg"));
        assert!(parts[1].starts_with("<svg"));
        assert!(parts[2].contains("delete "));
    }
}
