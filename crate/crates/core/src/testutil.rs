//! Shared fixtures for unit and integration tests.

use crate::pseudotour::Pseudotour;
use crate::region::{Cell, Polyomino};

/// The 4x4 region covered by its 12-cell outer ring plus the inner 2x2 ring.
pub fn two_rings_4x4() -> Pseudotour {
    let region = Polyomino::parse_ascii("####\n####\n####\n####").unwrap();
    let outer = [
        (0, 0),
        (1, 0),
        (2, 0),
        (3, 0),
        (3, 1),
        (3, 2),
        (3, 3),
        (2, 3),
        (1, 3),
        (0, 3),
        (0, 2),
        (0, 1),
    ];
    let inner = [(1, 1), (2, 1), (2, 2), (1, 2)];
    let mut edges = Vec::new();
    for ring in [&outer[..], &inner[..]] {
        for i in 0..ring.len() {
            let (x1, y1) = ring[i];
            let (x2, y2) = ring[(i + 1) % ring.len()];
            edges.push((Cell::new(x1, y1).center(), Cell::new(x2, y2).center()));
        }
    }
    Pseudotour::new(region, edges).unwrap()
}
