//! Polyomino representation, parsing, structural checks, doubling, and the
//! adjacency graph on cell centers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::geometry::GPoint;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("region is empty")]
    EmptyRegion,
    #[error("region is not 4-connected")]
    NotConnected,
    #[error("unexpected character {0:?} in region text")]
    BadCharacter(char),
    #[error("region is not an even polyomino (not a union of aligned 2x2 blocks)")]
    NotEven,
    #[error("region is not simply connected")]
    NotSimplyConnected,
    #[error("malformed region line: {0}")]
    BadLine(String),
}

/// A unit cell, named by its lower-left corner in original units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// Center of the cell in doubled coordinates: both coordinates odd.
    pub fn center(&self) -> GPoint {
        GPoint::new(2 * self.x + 1, 2 * self.y + 1)
    }

    /// Inverse of [`Cell::center`]. Returns `None` unless both doubled
    /// coordinates are odd.
    pub fn from_center(p: GPoint) -> Option<Cell> {
        if p.is_cell_center() {
            Some(Cell::new((p.x - 1) / 2, (p.y - 1) / 2))
        } else {
            None
        }
    }

    pub fn neighbors(&self) -> [Cell; 4] {
        [
            Cell::new(self.x + 1, self.y),
            Cell::new(self.x - 1, self.y),
            Cell::new(self.x, self.y + 1),
            Cell::new(self.x, self.y - 1),
        ]
    }
}

/// A finite 4-connected set of unit cells, normalized so min x = min y = 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyomino {
    cells: BTreeSet<Cell>,
}

impl Polyomino {
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, RegionError> {
        let raw: BTreeSet<Cell> = cells.into_iter().collect();
        if raw.is_empty() {
            return Err(RegionError::EmptyRegion);
        }
        if !is_connected(&raw) {
            return Err(RegionError::NotConnected);
        }
        let min_x = raw.iter().map(|c| c.x).min().unwrap();
        let min_y = raw.iter().map(|c| c.y).min().unwrap();
        let cells = raw
            .into_iter()
            .map(|c| Cell::new(c.x - min_x, c.y - min_y))
            .collect();
        Ok(Polyomino { cells })
    }

    /// Parses an ASCII grid over `#` (cell) and `.` (empty). Rows are listed
    /// top to bottom; cell coordinates grow upward, so the parser flips y.
    pub fn parse_ascii(text: &str) -> Result<Self, RegionError> {
        let lines: Vec<&str> = text.lines().collect();
        let mut cells = Vec::new();
        let rows = lines.len();
        for (row, line) in lines.iter().enumerate() {
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '#' => cells.push(Cell::new(col as i64, (rows - 1 - row) as i64)),
                    '.' | ' ' => {}
                    other => return Err(RegionError::BadCharacter(other)),
                }
            }
        }
        Polyomino::from_cells(cells)
    }

    /// Parses the structured form: one `cell x y` line per cell.
    pub fn parse_cell_lines(text: &str) -> Result<Self, RegionError> {
        let mut cells = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["cell", x, y] => {
                    let x = x.parse().map_err(|_| RegionError::BadLine(line.to_string()))?;
                    let y = y.parse().map_err(|_| RegionError::BadLine(line.to_string()))?;
                    cells.push(Cell::new(x, y));
                }
                _ => return Err(RegionError::BadLine(line.to_string())),
            }
        }
        Polyomino::from_cells(cells)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Width and height of the bounding box in cells.
    pub fn extent(&self) -> (i64, i64) {
        let max_x = self.cells.iter().map(|c| c.x).max().unwrap_or(-1);
        let max_y = self.cells.iter().map(|c| c.y).max().unwrap_or(-1);
        (max_x + 1, max_y + 1)
    }

    /// True when the cell complement (within a one-cell margin of the
    /// bounding box) is 4-connected, i.e. the region has no holes.
    pub fn is_simply_connected(&self) -> bool {
        let (w, h) = self.extent();
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        let start = Cell::new(-1, -1);
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if n.x < -1 || n.y < -1 || n.x > w || n.y > h {
                    continue;
                }
                if self.contains(n) || seen.contains(&n) {
                    continue;
                }
                seen.insert(n);
                queue.push_back(n);
            }
        }
        for x in -1..=w {
            for y in -1..=h {
                let c = Cell::new(x, y);
                if !self.contains(c) && !seen.contains(&c) {
                    return false;
                }
            }
        }
        true
    }

    /// Scales the region up by two: each cell becomes an aligned 2x2 block.
    pub fn double(&self) -> Polyomino {
        let cells = self.cells.iter().flat_map(|c| {
            (0..2).flat_map(move |i| (0..2).map(move |j| Cell::new(2 * c.x + i, 2 * c.y + j)))
        });
        Polyomino::from_cells(cells).expect("doubling preserves connectivity")
    }

    /// Inverse of [`Polyomino::double`]; fails when the region is not a
    /// union of aligned 2x2 blocks.
    pub fn halve(&self) -> Result<Polyomino, RegionError> {
        for c in &self.cells {
            let bx = 2 * c.x.div_euclid(2);
            let by = 2 * c.y.div_euclid(2);
            for i in 0..2 {
                for j in 0..2 {
                    if !self.contains(Cell::new(bx + i, by + j)) {
                        return Err(RegionError::NotEven);
                    }
                }
            }
        }
        let cells = self
            .cells
            .iter()
            .map(|c| Cell::new(c.x.div_euclid(2), c.y.div_euclid(2)));
        Polyomino::from_cells(cells)
    }

    /// True when the region is of the form `2S`.
    pub fn is_even(&self) -> bool {
        self.halve().is_ok()
    }

    /// Counterclockwise boundary cycle with corners flagged.
    pub fn boundary(&self) -> Result<BoundaryCycle, RegionError> {
        if !self.is_simply_connected() {
            return Err(RegionError::NotSimplyConnected);
        }
        let points = trace_cell_boundary(&self.cells);
        Ok(BoundaryCycle::from_points(points))
    }

    /// The set of boundary corners, determined locally: a grid vertex is a
    /// corner iff it touches an odd number (1 or 3) of cells of the region.
    pub fn corners(&self) -> BTreeSet<GPoint> {
        let mut counts: BTreeMap<GPoint, u8> = BTreeMap::new();
        for c in &self.cells {
            for (dx, dy) in [(0, 0), (2, 0), (0, 2), (2, 2)] {
                *counts
                    .entry(GPoint::new(2 * c.x + dx, 2 * c.y + dy))
                    .or_default() += 1;
            }
        }
        counts
            .into_iter()
            .filter(|(_, n)| n % 2 == 1)
            .map(|(p, _)| p)
            .collect()
    }

    /// All grid vertices touching the region (corners of its cells).
    pub fn grid_vertices(&self) -> BTreeSet<GPoint> {
        let mut out = BTreeSet::new();
        for c in &self.cells {
            for (dx, dy) in [(0, 0), (2, 0), (0, 2), (2, 2)] {
                out.insert(GPoint::new(2 * c.x + dx, 2 * c.y + dy));
            }
        }
        out
    }

    pub fn adjacency_graph(&self) -> AdjacencyGraph {
        let vertices: Vec<GPoint> = self.cells.iter().map(|c| c.center()).collect();
        let mut edges = BTreeSet::new();
        for c in &self.cells {
            for n in [Cell::new(c.x + 1, c.y), Cell::new(c.x, c.y + 1)] {
                if self.contains(n) {
                    edges.insert(ordered(c.center(), n.center()));
                }
            }
        }
        AdjacencyGraph { vertices, edges }
    }

    pub fn to_ascii(&self) -> String {
        let (w, h) = self.extent();
        let mut out = String::new();
        for y in (0..h).rev() {
            for x in 0..w {
                out.push(if self.contains(Cell::new(x, y)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

pub fn ordered(a: GPoint, b: GPoint) -> (GPoint, GPoint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Graph on cell centers with edges between side-adjacent cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub vertices: Vec<GPoint>,
    pub edges: BTreeSet<(GPoint, GPoint)>,
}

impl AdjacencyGraph {
    pub fn neighbors(&self, v: GPoint) -> Vec<GPoint> {
        let mut out: Vec<GPoint> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }
}

/// The boundary of a polyomino, traced counterclockwise in doubled
/// coordinates, with the corner subsequence flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycle {
    points: Vec<GPoint>,
    corner_flags: Vec<bool>,
}

impl BoundaryCycle {
    fn from_points(points: Vec<GPoint>) -> Self {
        let n = points.len();
        let corner_flags = (0..n)
            .map(|i| {
                let prev = points[(i + n - 1) % n];
                let next = points[(i + 1) % n];
                let din = (points[i].x - prev.x, points[i].y - prev.y);
                let dout = (next.x - points[i].x, next.y - points[i].y);
                din != dout
            })
            .collect();
        BoundaryCycle { points, corner_flags }
    }

    pub fn points(&self) -> &[GPoint] {
        &self.points
    }

    pub fn corners(&self) -> Vec<GPoint> {
        self.points
            .iter()
            .zip(&self.corner_flags)
            .filter(|(_, &c)| c)
            .map(|(&p, _)| p)
            .collect()
    }

    /// The corner polygon: the boundary reduced to its corners.
    pub fn corner_polygon(&self) -> Vec<GPoint> {
        self.corners()
    }
}

fn is_connected(cells: &BTreeSet<Cell>) -> bool {
    let start = match cells.iter().next() {
        Some(&c) => c,
        None => return true,
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for n in c.neighbors() {
            if cells.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// Traces the outer boundary of a cell set counterclockwise (region kept on
/// the left), returning grid vertices in doubled coordinates of the same
/// lattice. The cell set must describe a simply connected region.
pub fn trace_cell_boundary(cells: &BTreeSet<Cell>) -> Vec<GPoint> {
    // Directed boundary sides, oriented with the region on the left.
    let mut outgoing: BTreeMap<GPoint, Vec<GPoint>> = BTreeMap::new();
    let mut edge_count = 0usize;
    for c in cells {
        let bl = GPoint::new(2 * c.x, 2 * c.y);
        let br = GPoint::new(2 * c.x + 2, 2 * c.y);
        let tr = GPoint::new(2 * c.x + 2, 2 * c.y + 2);
        let tl = GPoint::new(2 * c.x, 2 * c.y + 2);
        let sides = [
            (Cell::new(c.x, c.y - 1), bl, br),
            (Cell::new(c.x + 1, c.y), br, tr),
            (Cell::new(c.x, c.y + 1), tr, tl),
            (Cell::new(c.x - 1, c.y), tl, bl),
        ];
        for (nb, from, to) in sides {
            if !cells.contains(&nb) {
                outgoing.entry(from).or_default().push(to);
                edge_count += 1;
            }
        }
    }
    let start = *outgoing.keys().next().expect("nonempty region");
    let mut points = Vec::with_capacity(edge_count);
    let mut at = start;
    let mut dir: Option<(i64, i64)> = None;
    loop {
        points.push(at);
        let nexts = outgoing.get_mut(&at).expect("boundary walk stays on boundary");
        let next = if nexts.len() == 1 {
            nexts.pop().unwrap()
        } else {
            // pinch vertex: prefer the sharpest left turn to keep the
            // region on the left (cannot occur for simply connected input)
            let d = dir.expect("pinch cannot be the start vertex");
            let left = (-d.1, d.0);
            let pick = |cand: &GPoint| {
                let cd = (cand.x - at.x, cand.y - at.y);
                if cd == left {
                    0
                } else if cd == d {
                    1
                } else {
                    2
                }
            };
            let best = (0..nexts.len()).min_by_key(|&i| pick(&nexts[i])).unwrap();
            nexts.remove(best)
        };
        dir = Some((next.x - at.x, next.y - at.y));
        at = next;
        if at == start {
            break;
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> Polyomino {
        Polyomino::parse_ascii(text).unwrap()
    }

    #[test]
    fn parse_ascii_examples() {
        let p = poly("##\n##");
        assert_eq!(p.len(), 4);
        assert!(p.contains(Cell::new(0, 0)));
        assert!(p.contains(Cell::new(1, 1)));
        assert_eq!(
            Polyomino::parse_ascii("#.\n.#"),
            Err(RegionError::NotConnected)
        );
        assert_eq!(poly("#").len(), 1);
        assert_eq!(
            Polyomino::parse_ascii("#x"),
            Err(RegionError::BadCharacter('x'))
        );
        assert_eq!(Polyomino::parse_ascii(""), Err(RegionError::EmptyRegion));
    }

    #[test]
    fn ascii_orientation_flips_y() {
        // top row of the file is the highest y
        let p = poly("#.\n##");
        assert!(p.contains(Cell::new(0, 1)));
        assert!(p.contains(Cell::new(0, 0)));
        assert!(p.contains(Cell::new(1, 0)));
        assert!(!p.contains(Cell::new(1, 1)));
    }

    #[test]
    fn cell_lines_roundtrip() {
        let p = poly("##\n#.");
        let text: String = p
            .cells()
            .map(|c| format!("cell {} {}\n", c.x, c.y))
            .collect();
        assert_eq!(Polyomino::parse_cell_lines(&text).unwrap(), p);
    }

    #[test]
    fn simply_connected_examples() {
        assert!(poly("###\n###\n###").is_simply_connected());
        assert!(!poly("###\n#.#\n###").is_simply_connected());
        // 7-cell ring: encloses one complement cell
        let ring = Polyomino::from_cells([
            Cell::new(0, 0),
            Cell::new(0, 1),
            Cell::new(0, 2),
            Cell::new(1, 0),
            Cell::new(1, 2),
            Cell::new(2, 0),
            Cell::new(2, 1),
        ])
        .unwrap();
        assert!(!ring.is_simply_connected());
    }

    #[test]
    fn double_and_halve() {
        let s = poly("#");
        let p = s.double();
        assert_eq!(p, poly("##\n##"));
        assert_eq!(p.halve().unwrap(), s);

        let domino = poly("##");
        assert_eq!(domino.double().len(), 8);
        assert_eq!(domino.double().extent(), (4, 2));

        let l = poly("#.\n##");
        assert_eq!(l.double().len(), 12);
        assert_eq!(l.double().halve().unwrap(), l);

        assert_eq!(poly("###\n###").halve(), Err(RegionError::NotEven));
        assert_eq!(poly("####\n####\n####\n####").halve().unwrap(), poly("##\n##"));
    }

    #[test]
    fn boundary_examples() {
        let p = poly("##\n##");
        let b = p.boundary().unwrap();
        assert_eq!(
            b.corners(),
            vec![
                GPoint::new(0, 0),
                GPoint::new(4, 0),
                GPoint::new(4, 4),
                GPoint::new(0, 4)
            ]
        );
        // counterclockwise and closed
        assert_eq!(b.points().len(), 8);

        let rect = poly("####\n####");
        assert_eq!(rect.boundary().unwrap().corners().len(), 4);

        let l = poly("#.\n##").double();
        assert_eq!(l.boundary().unwrap().corners().len(), 6);

        let holed = poly("###\n#.#\n###");
        assert_eq!(holed.boundary(), Err(RegionError::NotSimplyConnected));
    }

    #[test]
    fn even_corners_are_multiples_of_four() {
        let p = poly("#.\n##").double();
        for c in p.boundary().unwrap().corners() {
            assert_eq!(c.x.rem_euclid(4), 0);
            assert_eq!(c.y.rem_euclid(4), 0);
        }
    }

    #[test]
    fn corner_count_matches_halved_region() {
        for text in ["#", "##", "#.\n##", "###\n#..", "##\n##"] {
            let s = poly(text);
            let p = s.double();
            assert_eq!(
                s.boundary().unwrap().corners().len(),
                p.boundary().unwrap().corners().len()
            );
        }
    }

    #[test]
    fn adjacency_graph_examples() {
        let g = poly("##\n##").adjacency_graph();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.edges.len(), 4);

        let strip = poly("###").adjacency_graph();
        assert_eq!(strip.vertices.len(), 3);
        assert_eq!(strip.edges.len(), 2);

        let sq4 = poly("####\n####\n####\n####").adjacency_graph();
        assert_eq!(sq4.vertices.len(), 16);
        assert_eq!(sq4.edges.len(), 24);
    }

    #[test]
    fn local_corners_match_boundary_corners() {
        for text in ["#", "##", "#.\n##", "###\n#..", "##.\n###\n.##"] {
            let p = poly(text);
            let from_boundary: BTreeSet<GPoint> =
                p.boundary().unwrap().corners().into_iter().collect();
            assert_eq!(p.corners(), from_boundary, "region:\n{text}");
        }
    }
}
