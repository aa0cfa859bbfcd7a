//! The turn graph of a pseudotour: the cell diagonals bisecting its turns.
//!
//! Turn graphs characterize pseudotours exactly: a diagonal set inside the
//! region is the turn graph of a (unique) pseudotour iff it has at most one
//! diagonal per cell, odd degree at each boundary corner, and even degree
//! everywhere else. The module provides both directions of that bijection,
//! the turn-evenness and regularity predicates, and the correspondence
//! between spanning trees of `S` and regular tours of `2S`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::geometry::{DiagEdge, GPoint, ParityClass, PointLocation};
use crate::pseudotour::{Pseudotour, PseudotourError};
use crate::region::{Cell, Polyomino, RegionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TurnGraphError {
    #[error("diagonal set violates the turn-graph conditions")]
    NotWellFormed,
    #[error("vertex {0:?} has the wrong degree parity")]
    ParityViolation(GPoint),
    #[error("edge set is not a spanning tree of the region's adjacency graph")]
    NotSpanningTree,
    #[error("tour is not regular")]
    NotRegular,
    #[error("diagonal {0:?}-{1:?} lies outside the region")]
    DiagonalOutsideRegion(GPoint, GPoint),
    #[error(transparent)]
    Pseudotour(#[from] PseudotourError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

/// A set of unit-cell diagonals inside a polyomino.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnGraph {
    region: Polyomino,
    diagonals: BTreeSet<DiagEdge>,
}

impl TurnGraph {
    pub fn new<I>(region: Polyomino, diagonals: I) -> Result<Self, TurnGraphError>
    where
        I: IntoIterator<Item = DiagEdge>,
    {
        let diagonals: BTreeSet<DiagEdge> = diagonals.into_iter().collect();
        for d in &diagonals {
            let cell = Cell::from_center(d.midpoint()).ok_or_else(|| {
                TurnGraphError::DiagonalOutsideRegion(d.a(), d.b())
            })?;
            if !region.contains(cell) {
                return Err(TurnGraphError::DiagonalOutsideRegion(d.a(), d.b()));
            }
        }
        Ok(TurnGraph { region, diagonals })
    }

    pub fn region(&self) -> &Polyomino {
        &self.region
    }

    pub fn diagonals(&self) -> &BTreeSet<DiagEdge> {
        &self.diagonals
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    fn degrees(&self) -> BTreeMap<GPoint, usize> {
        let mut deg: BTreeMap<GPoint, usize> = BTreeMap::new();
        for d in &self.diagonals {
            *deg.entry(d.a()).or_default() += 1;
            *deg.entry(d.b()).or_default() += 1;
        }
        deg
    }

    /// Odd degree exactly at the boundary corners of the region, even degree
    /// (possibly zero) everywhere else.
    pub fn check_degree_parity(&self) -> Result<(), TurnGraphError> {
        let corners = self.region.corners();
        let deg = self.degrees();
        for v in self.region.grid_vertices() {
            let d = deg.get(&v).copied().unwrap_or(0);
            if (d % 2 == 1) != corners.contains(&v) {
                return Err(TurnGraphError::ParityViolation(v));
            }
        }
        Ok(())
    }

    /// Well-formedness: no two diagonals in one cell, odd degree at
    /// corners, even degree elsewhere.
    pub fn is_wellformed(&self) -> bool {
        let mut cells_used = BTreeSet::new();
        for d in &self.diagonals {
            if !cells_used.insert(d.midpoint()) {
                return false;
            }
        }
        self.check_degree_parity().is_ok()
    }

    /// True iff every diagonal lies in the even diagonal-grid component.
    pub fn is_turn_even(&self) -> bool {
        self.diagonals
            .iter()
            .all(|d| d.parity_class() == ParityClass::Even)
    }

    /// True iff the diagonal set is acyclic as a graph.
    pub fn is_acyclic(&self) -> bool {
        let mut parent: BTreeMap<GPoint, GPoint> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<GPoint, GPoint>, v: GPoint) -> GPoint {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                v
            } else {
                let r = find(parent, p);
                parent.insert(v, r);
                r
            }
        }
        for d in &self.diagonals {
            let ra = find(&mut parent, d.a());
            let rb = find(&mut parent, d.b());
            if ra == rb {
                return false;
            }
            parent.insert(ra, rb);
        }
        true
    }

    /// Serializes as `diag x1 y1 x2 y2` lines in doubled coordinates.
    pub fn to_diag_text(&self) -> String {
        let mut out = String::new();
        for d in &self.diagonals {
            out.push_str(&format!(
                "diag {} {} {} {}\n",
                d.a().x,
                d.a().y,
                d.b().x,
                d.b().y
            ));
        }
        out
    }
}

/// One diagonal per turn: for a turn `u1 - v - u2`, the diagonal joins
/// `(u1 + u2) / 2` and its reflection through `v`.
pub fn build_turn_graph(tour: &Pseudotour) -> TurnGraph {
    let diagonals = tour.turns().into_iter().map(|t| {
        let w1 = GPoint::new((t.u1.x + t.u2.x) / 2, (t.u1.y + t.u2.y) / 2);
        let w2 = GPoint::new(2 * t.v.x - w1.x, 2 * t.v.y - w1.y);
        DiagEdge::new(w1, w2).expect("turn bisector is a cell diagonal")
    });
    TurnGraph::new(tour.region().clone(), diagonals)
        .expect("turn bisectors stay inside the region")
}

/// Regularity criterion: a single cycle whose turn graph avoids the odd
/// diagonal component entirely.
pub fn is_regular(tour: &Pseudotour) -> bool {
    tour.is_tour() && build_turn_graph(tour).is_turn_even()
}

// Unit of the face 2-coloring: a whole cell, or one of the two triangles a
// diagonal cuts it into. Part 1 contains the bottom side, part 2 the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Unit {
    cell: Cell,
    part: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    fn opposite(self) -> Side {
        match self {
            Side::Bottom => Side::Top,
            Side::Top => Side::Bottom,
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn neighbor(self, c: Cell) -> Cell {
        match self {
            Side::Bottom => Cell::new(c.x, c.y - 1),
            Side::Top => Cell::new(c.x, c.y + 1),
            Side::Left => Cell::new(c.x - 1, c.y),
            Side::Right => Cell::new(c.x + 1, c.y),
        }
    }
}

fn unit_at_side(cell: Cell, side: Side, diag: Option<bool>) -> Unit {
    // diag: None for an uncut cell, Some(slope_positive) otherwise
    let part = match diag {
        None => 0,
        Some(positive) => match side {
            Side::Bottom => 1,
            Side::Top => 2,
            // positive slope joins bottom-left to top-right: the right side
            // belongs to the bottom triangle, the left side to the top one
            Side::Right => {
                if positive {
                    1
                } else {
                    2
                }
            }
            Side::Left => {
                if positive {
                    2
                } else {
                    1
                }
            }
        },
    };
    Unit { cell, part }
}

/// The inverse of [`build_turn_graph`]: reconstructs the unique pseudotour
/// whose turn graph is the given well-formed diagonal set.
///
/// Cells holding a diagonal are split into two triangles; the resulting
/// units are 2-colored so that crossing a diagonal flips the color and
/// crossing a cell side does not, normalized so units on horizontal
/// boundary sides are white. Horizontal adjacency edges are kept in white
/// units and vertical ones in black units.
pub fn pseudotour_from_turn_graph(graph: &TurnGraph) -> Result<Pseudotour, TurnGraphError> {
    if !graph.is_wellformed() {
        return Err(TurnGraphError::NotWellFormed);
    }
    let region = graph.region();
    let mut cut: BTreeMap<Cell, bool> = BTreeMap::new();
    for d in graph.diagonals() {
        let cell = Cell::from_center(d.midpoint()).expect("diagonal midpoint is a cell center");
        cut.insert(cell, d.slope_positive());
    }
    let diag_of = |c: Cell| cut.get(&c).copied();

    // 2-color the units by flood fill
    let mut color: BTreeMap<Unit, bool> = BTreeMap::new();
    let start_cell = region.cells().next().expect("region is nonempty");
    let start = unit_at_side(start_cell, Side::Bottom, diag_of(start_cell));
    color.insert(start, true);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let c = color[&u];
        let mut visit = |v: Unit, col: bool| {
            match color.get(&v) {
                Some(&existing) => assert_eq!(existing, col, "face 2-coloring contradiction"),
                None => {
                    color.insert(v, col);
                    queue.push_back(v);
                }
            }
        };
        // across the diagonal, if any
        if let Some(positive) = diag_of(u.cell) {
            let other = Unit {
                cell: u.cell,
                part: 3 - u.part,
            };
            let _ = positive;
            visit(other, !c);
        }
        // across each side of the cell that this unit touches
        for side in [Side::Bottom, Side::Right, Side::Top, Side::Left] {
            if unit_at_side(u.cell, side, diag_of(u.cell)) != u {
                continue;
            }
            let n = side.neighbor(u.cell);
            if region.contains(n) {
                visit(unit_at_side(n, side.opposite(), diag_of(n)), c);
            }
        }
    }

    // normalize: units on horizontal boundary sides are white
    let mut flip: Option<bool> = None;
    for cell in region.cells() {
        for side in [Side::Bottom, Side::Top] {
            if !region.contains(side.neighbor(cell)) {
                let u = unit_at_side(cell, side, diag_of(cell));
                let white = color[&u];
                match flip {
                    None => flip = Some(!white),
                    Some(f) => assert_eq!(
                        f,
                        !white,
                        "horizontal boundary sides disagree on color"
                    ),
                }
            }
        }
    }
    let flip = flip.unwrap_or(false);
    let white = |u: Unit| color[&u] != flip;

    // vertical boundary sides must come out black
    for cell in region.cells() {
        for side in [Side::Left, Side::Right] {
            if !region.contains(side.neighbor(cell)) {
                assert!(
                    !white(unit_at_side(cell, side, diag_of(cell))),
                    "vertical boundary side is not black"
                );
            }
        }
    }

    // horizontal adjacency edges live in white units, vertical ones in black
    let mut edges = Vec::new();
    for cell in region.cells() {
        for (side, horizontal) in [(Side::Right, true), (Side::Top, false)] {
            let n = side.neighbor(cell);
            if !region.contains(n) {
                continue;
            }
            let ua = unit_at_side(cell, side, diag_of(cell));
            let ub = unit_at_side(n, side.opposite(), diag_of(n));
            assert_eq!(
                white(ua),
                white(ub),
                "half-segments of one adjacency edge disagree on color"
            );
            if white(ua) == horizontal {
                edges.push((cell.center(), n.center()));
            }
        }
    }
    Ok(Pseudotour::new(region.clone(), edges)?)
}

/// A spanning tree of the adjacency graph of a polyomino.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpanningTree {
    region: Polyomino,
    edges: BTreeSet<(Cell, Cell)>,
}

impl SpanningTree {
    pub fn new<I>(region: Polyomino, edges: I) -> Result<Self, TurnGraphError>
    where
        I: IntoIterator<Item = (Cell, Cell)>,
    {
        let edges: BTreeSet<(Cell, Cell)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        if edges.len() != region.len() - 1 {
            return Err(TurnGraphError::NotSpanningTree);
        }
        let mut adj: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
        for &(a, b) in &edges {
            if !region.contains(a)
                || !region.contains(b)
                || (a.x - b.x).abs() + (a.y - b.y).abs() != 1
            {
                return Err(TurnGraphError::NotSpanningTree);
            }
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        // connectivity with |V| - 1 edges implies a tree
        let start = region.cells().next().ok_or(TurnGraphError::NotSpanningTree)?;
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &n in adj.get(&c).into_iter().flatten() {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        if seen.len() != region.len() {
            return Err(TurnGraphError::NotSpanningTree);
        }
        Ok(SpanningTree { region, edges })
    }

    pub fn region(&self) -> &Polyomino {
        &self.region
    }

    pub fn edges(&self) -> &BTreeSet<(Cell, Cell)> {
        &self.edges
    }
}

/// Maps a spanning tree of `S` to a regular tour of `2S`: the tour is the
/// boundary of the doubled tree thickened by one dual cell around each of
/// its vertices.
pub fn tour_from_spanning_tree(tree: &SpanningTree) -> Pseudotour {
    let s = tree.region();
    let p = s.double();
    // dual-lattice cells covered by the thickened doubled tree: one per
    // vertex of S (at its doubled center) and one per tree edge (at the
    // doubled edge midpoint)
    let mut covered: BTreeSet<Cell> = BTreeSet::new();
    for c in s.cells() {
        covered.insert(Cell::new(2 * c.x + 1, 2 * c.y + 1));
    }
    for &(a, b) in tree.edges() {
        covered.insert(Cell::new(a.x + b.x + 1, a.y + b.y + 1));
    }
    let trace = crate::region::trace_cell_boundary(&covered);
    // dual-lattice boundary vertices map to cell centers of P
    let centers: Vec<GPoint> = trace
        .iter()
        .map(|pt| GPoint::new(pt.x - 1, pt.y - 1))
        .collect();
    let mut edges = Vec::new();
    for i in 0..centers.len() {
        edges.push((centers[i], centers[(i + 1) % centers.len()]));
    }
    Pseudotour::new(p, edges).expect("tree boundary is a tour of the doubled region")
}

/// Inverse of [`tour_from_spanning_tree`]: recovers the spanning tree of
/// `S = P/2` from a regular tour of `P`. An edge of `S` is kept iff the
/// mixed dual cell between its two blocks lies inside the tour's enclosed
/// region.
pub fn spanning_tree_from_regular_tour(tour: &Pseudotour) -> Result<SpanningTree, TurnGraphError> {
    if !is_regular(tour) {
        return Err(TurnGraphError::NotRegular);
    }
    let s = tour.region().halve().map_err(|_| TurnGraphError::NotRegular)?;
    let polygon = tour.cycles().remove(0);
    let mut edges = Vec::new();
    for a in s.cells() {
        for b in [Cell::new(a.x + 1, a.y), Cell::new(a.x, a.y + 1)] {
            if !s.contains(b) {
                continue;
            }
            let mid = GPoint::new(2 * (a.x + b.x + 1), 2 * (a.y + b.y + 1));
            let loc = crate::geometry::point_in_polygon(mid, &polygon)
                .expect("tour cycle is a simple polygon");
            debug_assert_ne!(loc, PointLocation::OnBoundary);
            if loc == PointLocation::Inside {
                edges.push((a, b));
            }
        }
    }
    SpanningTree::new(s, edges)
}

/// Canonical ordered pair of grid points, re-exported for turn-graph users.
pub fn diag_between(a: GPoint, b: GPoint) -> DiagEdge {
    DiagEdge::new(a, b).expect("valid diagonal")
}
