//! Pseudotours: 2-regular spanning subgraphs of the adjacency graph of a
//! polyomino, their cycle decompositions, and turn extraction.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::GPoint;
use crate::region::{ordered, Cell, Polyomino, RegionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PseudotourError {
    #[error("vertex {0:?} does not have degree 2")]
    DegreeViolation(GPoint),
    #[error("edge {0:?}-{1:?} does not join side-adjacent cells of the region")]
    ForeignEdge(GPoint, GPoint),
    #[error("malformed tour line: {0}")]
    BadLine(String),
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// A vertex of a pseudotour whose two incident edges are perpendicular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Turn {
    pub v: GPoint,
    pub u1: GPoint,
    pub u2: GPoint,
}

/// Cycle and turn counts of a pseudotour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TourStats {
    pub cycles: usize,
    pub turns: usize,
}

/// A 2-factor of the adjacency graph: disjoint cycles covering every cell of
/// the region exactly once. A tour is the single-cycle case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudotour {
    region: Polyomino,
    edges: BTreeSet<(GPoint, GPoint)>,
}

impl Pseudotour {
    pub fn new<I>(region: Polyomino, edges: I) -> Result<Self, PseudotourError>
    where
        I: IntoIterator<Item = (GPoint, GPoint)>,
    {
        let edges: BTreeSet<(GPoint, GPoint)> =
            edges.into_iter().map(|(a, b)| ordered(a, b)).collect();
        validate(&region, &edges)?;
        Ok(Pseudotour { region, edges })
    }

    pub fn region(&self) -> &Polyomino {
        &self.region
    }

    pub fn edges(&self) -> &BTreeSet<(GPoint, GPoint)> {
        &self.edges
    }

    pub fn contains_edge(&self, a: GPoint, b: GPoint) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    pub fn neighbors(&self, v: GPoint) -> Vec<GPoint> {
        let mut out = Vec::with_capacity(2);
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort();
        out
    }

    /// The connected components, each traversed as a cyclic vertex sequence.
    /// Deterministic: cycles are listed by least vertex, each starting at its
    /// least vertex and proceeding toward its least neighbor.
    pub fn cycles(&self) -> Vec<Vec<GPoint>> {
        let mut adj: BTreeMap<GPoint, Vec<GPoint>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        for ns in adj.values_mut() {
            ns.sort();
        }
        let mut seen: BTreeSet<GPoint> = BTreeSet::new();
        let mut out = Vec::new();
        for (&start, ns) in &adj {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut prev = start;
            let mut at = ns[0];
            while at != start {
                seen.insert(at);
                cycle.push(at);
                let ns = &adj[&at];
                let next = if ns[0] == prev { ns[1] } else { ns[0] };
                prev = at;
                at = next;
            }
            out.push(cycle);
        }
        out
    }

    /// One turn per vertex whose two incident edges are perpendicular.
    pub fn turns(&self) -> Vec<Turn> {
        let mut incident: BTreeMap<GPoint, Vec<GPoint>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            incident.entry(a).or_default().push(b);
            incident.entry(b).or_default().push(a);
        }
        let mut out = Vec::new();
        for (v, mut us) in incident {
            us.sort();
            let (u1, u2) = (us[0], us[1]);
            let d1 = (u1.x - v.x, u1.y - v.y);
            let d2 = (u2.x - v.x, u2.y - v.y);
            if d1.0 * d2.0 + d1.1 * d2.1 == 0 {
                out.push(Turn { v, u1, u2 });
            }
        }
        out
    }

    pub fn stats(&self) -> TourStats {
        TourStats {
            cycles: self.cycles().len(),
            turns: self.turns().len(),
        }
    }

    pub fn is_tour(&self) -> bool {
        self.cycles().len() == 1
    }

    /// Serializes to the tour format: one line per cycle listing cell
    /// coordinates in traversal order.
    pub fn to_tour_text(&self) -> String {
        let mut out = String::new();
        for cycle in self.cycles() {
            let line: Vec<String> = cycle
                .iter()
                .map(|&p| {
                    let c = Cell::from_center(p).expect("pseudotour vertices are cell centers");
                    format!("{},{}", c.x, c.y)
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the tour format. The region is implied by the cells listed.
    pub fn parse_tour_text(text: &str) -> Result<Self, PseudotourError> {
        let mut cells = Vec::new();
        let mut edges = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cycle: Vec<Cell> = Vec::new();
            for tok in line.split_whitespace() {
                let (x, y) = tok
                    .split_once(',')
                    .ok_or_else(|| PseudotourError::BadLine(line.to_string()))?;
                let x = x.parse().map_err(|_| PseudotourError::BadLine(line.to_string()))?;
                let y = y.parse().map_err(|_| PseudotourError::BadLine(line.to_string()))?;
                cycle.push(Cell::new(x, y));
            }
            if cycle.len() < 4 {
                return Err(PseudotourError::BadLine(line.to_string()));
            }
            for i in 0..cycle.len() {
                let a = cycle[i].center();
                let b = cycle[(i + 1) % cycle.len()].center();
                edges.push((a, b));
            }
            cells.extend(cycle);
        }
        let min_x = cells.iter().map(|c| c.x).min().ok_or(RegionError::EmptyRegion)?;
        let min_y = cells.iter().map(|c| c.y).min().unwrap();
        let region = Polyomino::from_cells(cells.iter().map(|c| Cell::new(c.x - min_x, c.y - min_y)))?;
        let edges = edges.into_iter().map(|(a, b)| {
            (
                GPoint::new(a.x - 2 * min_x, a.y - 2 * min_y),
                GPoint::new(b.x - 2 * min_x, b.y - 2 * min_y),
            )
        });
        Pseudotour::new(region, edges)
    }

    /// Rotates the pseudotour a quarter turn counterclockwise, renormalizing
    /// the region to the origin.
    pub fn rotate_ccw(&self) -> Pseudotour {
        self.transform(|c| Cell::new(-1 - c.y, c.x))
    }

    /// Inverse of [`Pseudotour::rotate_ccw`] up to translation.
    pub fn rotate_cw(&self) -> Pseudotour {
        self.transform(|c| Cell::new(c.y, -1 - c.x))
    }

    fn transform(&self, f: impl Fn(Cell) -> Cell) -> Pseudotour {
        let mapped: Vec<Cell> = self.region.cells().map(&f).collect();
        let min_x = mapped.iter().map(|c| c.x).min().unwrap();
        let min_y = mapped.iter().map(|c| c.y).min().unwrap();
        let shift = |c: Cell| Cell::new(c.x - min_x, c.y - min_y);
        let region = Polyomino::from_cells(mapped.iter().map(|&c| shift(c))).unwrap();
        let edges = self.edges.iter().map(|&(a, b)| {
            let ca = shift(f(Cell::from_center(a).unwrap()));
            let cb = shift(f(Cell::from_center(b).unwrap()));
            (ca.center(), cb.center())
        });
        Pseudotour::new(region, edges).expect("rotation preserves validity")
    }
}

/// Checks the 2-factor invariants: every cell center has degree exactly two
/// and every edge joins side-adjacent cells of the region.
pub fn validate(
    region: &Polyomino,
    edges: &BTreeSet<(GPoint, GPoint)>,
) -> Result<(), PseudotourError> {
    let adjacency = region.adjacency_graph();
    for &(a, b) in edges {
        if !adjacency.edges.contains(&(a, b)) {
            return Err(PseudotourError::ForeignEdge(a, b));
        }
    }
    let mut degree: BTreeMap<GPoint, usize> = BTreeMap::new();
    for &(a, b) in edges {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    for v in &adjacency.vertices {
        if degree.get(v).copied().unwrap_or(0) != 2 {
            return Err(PseudotourError::DegreeViolation(*v));
        }
    }
    Ok(())
}

/// The boundary tour of a rectangle-like region, built from its cells'
/// boundary trace. Panics unless the trace visits every cell; intended for
/// tests and examples on regions whose boundary covers all cells.
pub fn boundary_pseudotour(region: &Polyomino) -> Result<Pseudotour, PseudotourError> {
    let ring: Vec<Cell> = ring_cells(region);
    let mut edges = Vec::new();
    for i in 0..ring.len() {
        edges.push((ring[i].center(), ring[(i + 1) % ring.len()].center()));
    }
    Pseudotour::new(region.clone(), edges)
}

fn ring_cells(region: &Polyomino) -> Vec<Cell> {
    // walk the cells adjacent to the outer boundary, in boundary order
    let b = region
        .boundary()
        .expect("boundary_pseudotour needs a simply connected region");
    let pts = b.points();
    let mut out: Vec<Cell> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        // the cell on the left of the directed boundary side a->b
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let (lx, ly) = (-dy, dx);
        let cx = (a.x + b.x) / 2 + lx / 2 - 1;
        let cy = (a.y + b.y) / 2 + ly / 2 - 1;
        let cell = Cell::new(cx.div_euclid(2), cy.div_euclid(2));
        if out.last() != Some(&cell) && out.first() != Some(&cell) {
            out.push(cell);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> Polyomino {
        Polyomino::parse_ascii(text).unwrap()
    }

    fn square2() -> Pseudotour {
        boundary_pseudotour(&poly("##\n##")).unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = square2();
        assert_eq!(t.edges().len(), 4);

        // one edge removed: degree violation
        let mut edges: Vec<_> = t.edges().iter().copied().collect();
        edges.pop();
        let err = Pseudotour::new(t.region().clone(), edges).unwrap_err();
        assert!(matches!(err, PseudotourError::DegreeViolation(_)));

        // edge between non-adjacent cells
        let region = poly("###");
        let a = Cell::new(0, 0).center();
        let c = Cell::new(2, 0).center();
        let err = Pseudotour::new(region, [(a, c)]).unwrap_err();
        assert!(matches!(err, PseudotourError::ForeignEdge(_, _)));
    }

    #[test]
    fn cycles_examples() {
        let t = square2();
        let cycles = t.cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);

        let t = boundary_pseudotour(&poly("####\n####")).unwrap();
        assert_eq!(t.cycles()[0].len(), 8);
    }

    #[test]
    fn two_rings_pseudotour() {
        let t = crate::testutil::two_rings_4x4();
        let cycles = t.cycles();
        assert_eq!(cycles.len(), 2);
        let mut lens: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![4, 12]);
        assert_eq!(t.turns().len(), 8);
    }

    #[test]
    fn turns_examples() {
        assert_eq!(square2().turns().len(), 4);
        let t = boundary_pseudotour(&poly("####\n####")).unwrap();
        assert_eq!(t.turns().len(), 4);
    }

    #[test]
    fn cycle_lengths_sum_to_region_size() {
        for t in [square2(), crate::testutil::two_rings_4x4()] {
            let total: usize = t.cycles().iter().map(|c| c.len()).sum();
            assert_eq!(total, t.region().len());
        }
    }

    #[test]
    fn tour_text_roundtrip() {
        for t in [square2(), crate::testutil::two_rings_4x4()] {
            let text = t.to_tour_text();
            let back = Pseudotour::parse_tour_text(&text).unwrap();
            assert_eq!(back, t);
            // bit-exact round trip of the serialized form
            assert_eq!(back.to_tour_text(), text);
        }
    }

    #[test]
    fn rotation_roundtrip() {
        for t in [square2(), crate::testutil::two_rings_4x4()] {
            assert_eq!(t.rotate_ccw().rotate_cw(), t);
            assert_eq!(
                t.rotate_ccw().rotate_ccw().rotate_ccw().rotate_ccw(),
                t
            );
        }
    }

    #[test]
    fn turn_count_is_even() {
        for t in [
            square2(),
            boundary_pseudotour(&poly("####\n####")).unwrap(),
            crate::testutil::two_rings_4x4(),
        ] {
            assert_eq!(t.turns().len() % 2, 0);
        }
    }
}
