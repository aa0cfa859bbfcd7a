//! Exact integer lattice primitives in doubled coordinates.
//!
//! Every geometric point of interest (cell corners, cell centers, edge
//! midpoints) is stored with both coordinates multiplied by two, so all
//! arithmetic stays in integers. Cell corners have both coordinates even,
//! cell centers both odd, and edge midpoints one of each.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point {0:?} is not a grid vertex (coordinates must both be even)")]
    NotGridVertex(GPoint),
    #[error("diagonal endpoints {0:?} and {1:?} do not span a unit cell")]
    NotDiagonal(GPoint, GPoint),
    #[error("polygon has fewer than 3 points")]
    TooFewPoints,
    #[error("polygon is not simple")]
    NotSimple,
}

/// A lattice point in doubled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GPoint {
    pub x: i64,
    pub y: i64,
}

impl GPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        GPoint { x, y }
    }

    /// True for vertices of the primal grid (cell corners).
    pub fn is_grid_vertex(&self) -> bool {
        self.x.rem_euclid(2) == 0 && self.y.rem_euclid(2) == 0
    }

    /// True for cell centers (vertices of the dual grid).
    pub fn is_cell_center(&self) -> bool {
        self.x.rem_euclid(2) == 1 && self.y.rem_euclid(2) == 1
    }
}

/// The two connected components of the diagonal grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Even,
    Odd,
}

/// Which diagonal component a grid vertex belongs to: `Even` iff the sum of
/// its original (undoubled) coordinates is even.
pub fn parity_class(p: GPoint) -> Result<ParityClass, GeometryError> {
    if !p.is_grid_vertex() {
        return Err(GeometryError::NotGridVertex(p));
    }
    if (p.x / 2 + p.y / 2).rem_euclid(2) == 0 {
        Ok(ParityClass::Even)
    } else {
        Ok(ParityClass::Odd)
    }
}

/// A unit-cell diagonal, stored with endpoints in lexicographic order.
///
/// Both endpoints are grid vertices two doubled units apart in each
/// coordinate, so they always lie in the same diagonal-grid component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagEdge {
    a: GPoint,
    b: GPoint,
}

impl DiagEdge {
    pub fn new(p: GPoint, q: GPoint) -> Result<Self, GeometryError> {
        if !p.is_grid_vertex() {
            return Err(GeometryError::NotGridVertex(p));
        }
        if !q.is_grid_vertex() {
            return Err(GeometryError::NotGridVertex(q));
        }
        if (p.x - q.x).abs() != 2 || (p.y - q.y).abs() != 2 {
            return Err(GeometryError::NotDiagonal(p, q));
        }
        debug_assert_eq!(parity_class(p), parity_class(q));
        let (a, b) = if p <= q { (p, q) } else { (q, p) };
        Ok(DiagEdge { a, b })
    }

    pub fn a(&self) -> GPoint {
        self.a
    }

    pub fn b(&self) -> GPoint {
        self.b
    }

    /// The midpoint of the diagonal, i.e. the center of the cell it crosses.
    pub fn midpoint(&self) -> GPoint {
        GPoint::new((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)
    }

    pub fn parity_class(&self) -> ParityClass {
        parity_class(self.a).expect("diagonal endpoint is a grid vertex")
    }

    /// True when the diagonal runs from lower-left to upper-right.
    pub fn slope_positive(&self) -> bool {
        (self.b.x - self.a.x) * (self.b.y - self.a.y) > 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    OnBoundary,
    Outside,
}

fn cross(o: GPoint, a: GPoint, b: GPoint) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn on_segment(p: GPoint, a: GPoint, b: GPoint) -> bool {
    cross(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

fn segments_intersect(a: GPoint, b: GPoint, c: GPoint, d: GPoint) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    (d1 == 0 && on_segment(a, c, d))
        || (d2 == 0 && on_segment(b, c, d))
        || (d3 == 0 && on_segment(c, a, b))
        || (d4 == 0 && on_segment(d, a, b))
}

fn check_simple(poly: &[GPoint]) -> Result<(), GeometryError> {
    let n = poly.len();
    if n < 3 {
        return Err(GeometryError::TooFewPoints);
    }
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return Err(GeometryError::NotSimple);
        }
        for j in i + 1..n {
            if poly[i] == poly[j] {
                return Err(GeometryError::NotSimple);
            }
        }
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        for j in i + 1..n {
            // skip adjacent segments (they share exactly one endpoint,
            // which vertex distinctness already guarantees)
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return Err(GeometryError::NotSimple);
            }
        }
    }
    Ok(())
}

/// Exact even-odd point-in-polygon classification.
///
/// `poly` lists the corners of a simple closed chain; the closing segment
/// from the last point back to the first is implicit.
pub fn point_in_polygon(p: GPoint, poly: &[GPoint]) -> Result<PointLocation, GeometryError> {
    check_simple(poly)?;
    let n = poly.len();
    for i in 0..n {
        if on_segment(p, poly[i], poly[(i + 1) % n]) {
            return Ok(PointLocation::OnBoundary);
        }
    }
    let mut crossings = 0u32;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.y > p.y) != (b.y > p.y) {
            // sign of (x_intersection - p.x) * (b.y - a.y), exactly
            let d = b.y - a.y;
            let num = (p.y - a.y) * (b.x - a.x) + (a.x - p.x) * d;
            if (num > 0) == (d > 0) {
                crossings += 1;
            }
        }
    }
    if crossings % 2 == 1 {
        Ok(PointLocation::Inside)
    } else {
        Ok(PointLocation::Outside)
    }
}

/// Signed shoelace sum: positive for counterclockwise chains.
pub fn polygon_signed_area2(poly: &[GPoint]) -> Result<i64, GeometryError> {
    if poly.len() < 3 {
        return Err(GeometryError::TooFewPoints);
    }
    let n = poly.len();
    let mut sum = 0i64;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        sum += a.x * b.y - b.x * a.y;
    }
    Ok(sum)
}

/// Twice the enclosed area of a simple closed chain, in doubled units.
pub fn polygon_area2(poly: &[GPoint]) -> Result<i64, GeometryError> {
    check_simple(poly)?;
    Ok(polygon_signed_area2(poly)?.abs())
}
