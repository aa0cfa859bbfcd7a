//! Brute-force ground truth at desk scale: exhaustive enumeration of tours,
//! pseudotours, spanning trees, and small polyominoes, plus the harnesses
//! that confirm the structural claims on every small instance.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::pseudotour::Pseudotour;
use crate::region::{Cell, Polyomino};
use crate::transform::improve;
use crate::turngraph::{
    build_turn_graph, is_regular, tour_from_spanning_tree, SpanningTree,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance exceeds the enumeration budget ({0})")]
    BudgetExceeded(String),
    #[error("region is not an even polyomino")]
    NotEven,
    #[error("theorem violated: irregular minimum-turn tour found (t_min = {t_min})")]
    TheoremViolation { t_min: usize },
    #[error("proposition violated: minimum-turn pseudotour is not turn-even (t_min = {t_min})")]
    PropositionViolation { t_min: usize },
}

/// Caps for the exhaustive enumerations. Exceeding a cap yields a clean
/// error, never a silently partial result.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    pub max_cells: usize,
    pub time_budget: Duration,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cells: 36,
            time_budget: Duration::from_secs(300),
        }
    }
}

impl EnumerationLimits {
    pub fn with_max_cells(max_cells: usize) -> Self {
        EnumerationLimits {
            max_cells,
            ..Default::default()
        }
    }

    fn check_size(&self, cells: usize) -> Result<(), OracleError> {
        if cells > self.max_cells {
            Err(OracleError::BudgetExceeded(format!(
                "{cells} cells > cap {}",
                self.max_cells
            )))
        } else {
            Ok(())
        }
    }
}

struct Deadline {
    at: Instant,
}

impl Deadline {
    fn new(limits: &EnumerationLimits) -> Self {
        Deadline {
            at: Instant::now() + limits.time_budget,
        }
    }

    fn check(&self) -> Result<(), OracleError> {
        if Instant::now() > self.at {
            Err(OracleError::BudgetExceeded("time budget exhausted".into()))
        } else {
            Ok(())
        }
    }
}

/// Every Hamiltonian cycle of the adjacency graph, each exactly once.
///
/// Backtracking from the least vertex; the cycle's two traversal directions
/// are collapsed by requiring the first step to be smaller than the last.
pub fn enumerate_tours(
    region: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<Vec<Pseudotour>, OracleError> {
    limits.check_size(region.len())?;
    let deadline = Deadline::new(limits);
    let cells: Vec<Cell> = region.cells().collect();
    let n = cells.len();
    let index = |c: Cell| cells.binary_search(&c).ok();
    let adj: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| c.neighbors().iter().filter_map(|&nb| index(nb)).collect())
        .collect();

    let mut out = Vec::new();
    if n < 4 {
        return Ok(out);
    }
    let mut path = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;

    fn feasible(adj: &[Vec<usize>], visited: &[bool], path: &[usize]) -> bool {
        let last = *path.last().unwrap();
        let n = visited.len();
        // every unvisited vertex still needs two usable neighbors
        for v in 0..n {
            if visited[v] {
                continue;
            }
            let usable = adj[v]
                .iter()
                .filter(|&&w| !visited[w] || w == 0 || w == last)
                .count();
            if usable < 2 {
                return false;
            }
        }
        // the unvisited vertices together with the path ends stay connected
        let start = match (0..n).find(|&v| !visited[v]) {
            Some(v) => v,
            None => return true,
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        let mut touches_last = false;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if w == last {
                    touches_last = true;
                }
                if !visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        touches_last && reached == (0..n).filter(|&v| !visited[v]).count()
    }

    fn search(
        adj: &[Vec<usize>],
        cells: &[Cell],
        path: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        out: &mut Vec<Pseudotour>,
        region: &Polyomino,
        deadline: &Deadline,
    ) -> Result<(), OracleError> {
        deadline.check()?;
        let n = visited.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            if adj[last].contains(&0) && path[1] < last {
                let edges = path.iter().zip(path.iter().cycle().skip(1)).map(|(&a, &b)| {
                    (cells[a].center(), cells[b].center())
                });
                out.push(
                    Pseudotour::new(region.clone(), edges.take(n))
                        .expect("enumerated cycle is a valid tour"),
                );
            }
            return Ok(());
        }
        for &w in &adj[last] {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            path.push(w);
            if feasible(adj, visited, path) {
                search(adj, cells, path, visited, out, region, deadline)?;
            }
            path.pop();
            visited[w] = false;
        }
        Ok(())
    }

    search(&adj, &cells, &mut path, &mut visited, &mut out, region, &deadline)?;
    Ok(out)
}

/// Every 2-factor of the adjacency graph, each exactly once: cell-by-cell
/// backtracking over the degree constraints.
pub fn enumerate_pseudotours(
    region: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<Vec<Pseudotour>, OracleError> {
    limits.check_size(region.len())?;
    let deadline = Deadline::new(limits);
    let cells: Vec<Cell> = region.cells().collect();
    let n = cells.len();
    let index = |c: Cell| cells.binary_search(&c).ok();
    let adj: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| c.neighbors().iter().filter_map(|&nb| index(nb)).collect())
        .collect();

    let mut out = Vec::new();
    let mut degree = vec![0u8; n];
    let mut chosen: Vec<(usize, usize)> = Vec::new();

    fn search(
        v: usize,
        adj: &[Vec<usize>],
        cells: &[Cell],
        degree: &mut Vec<u8>,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Pseudotour>,
        region: &Polyomino,
        deadline: &Deadline,
    ) -> Result<(), OracleError> {
        deadline.check()?;
        let n = degree.len();
        if v == n {
            let edges = chosen
                .iter()
                .map(|&(a, b)| (cells[a].center(), cells[b].center()));
            out.push(
                Pseudotour::new(region.clone(), edges.collect::<Vec<_>>())
                    .expect("degree-2 subgraph is a pseudotour"),
            );
            return Ok(());
        }
        let later: Vec<usize> = adj[v].iter().copied().filter(|&w| w > v).collect();
        let need = 2i32 - degree[v] as i32;
        if need < 0 || need as usize > later.len() {
            return Ok(());
        }
        let need = need as usize;
        // choose `need` of the later neighbors
        let mut picks = vec![0usize; need];
        fn combos(
            later: &[usize],
            start: usize,
            k: usize,
            picks: &mut Vec<usize>,
            depth: usize,
            v: usize,
            adj: &[Vec<usize>],
            cells: &[Cell],
            degree: &mut Vec<u8>,
            chosen: &mut Vec<(usize, usize)>,
            out: &mut Vec<Pseudotour>,
            region: &Polyomino,
            deadline: &Deadline,
        ) -> Result<(), OracleError> {
            if depth == k {
                let mut ok = true;
                for i in 0..k {
                    let w = picks[i];
                    if degree[w] >= 2 {
                        ok = false;
                    }
                }
                if ok {
                    for i in 0..k {
                        degree[picks[i]] += 1;
                        chosen.push((v, picks[i]));
                    }
                    degree[v] += k as u8;
                    search(v + 1, adj, cells, degree, chosen, out, region, deadline)?;
                    degree[v] -= k as u8;
                    for _ in 0..k {
                        let (_, w) = chosen.pop().unwrap();
                        degree[w] -= 1;
                    }
                }
                return Ok(());
            }
            for i in start..later.len() {
                picks[depth] = later[i];
                combos(
                    later, i + 1, k, picks, depth + 1, v, adj, cells, degree, chosen, out,
                    region, deadline,
                )?;
            }
            Ok(())
        }
        combos(
            &later, 0, need, &mut picks, 0, v, adj, cells, degree, chosen, out, region,
            deadline,
        )
    }

    search(0, &adj, &cells, &mut degree, &mut chosen, &mut out, region, &deadline)?;
    Ok(out)
}

/// All spanning trees of the adjacency graph, by include/exclude
/// backtracking over the edge list.
pub fn enumerate_spanning_trees(
    region: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<Vec<SpanningTree>, OracleError> {
    limits.check_size(region.len())?;
    let deadline = Deadline::new(limits);
    let cells: Vec<Cell> = region.cells().collect();
    let n = cells.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let index = |c: Cell| cells.binary_search(&c).ok();
    for (i, c) in cells.iter().enumerate() {
        for nb in [Cell::new(c.x + 1, c.y), Cell::new(c.x, c.y + 1)] {
            if let Some(j) = index(nb) {
                edges.push((i, j));
            }
        }
    }

    struct Dsu {
        parent: Vec<usize>,
    }
    impl Dsu {
        fn find(&mut self, v: usize) -> usize {
            if self.parent[v] == v {
                v
            } else {
                let r = self.find(self.parent[v]);
                self.parent[v] = r;
                r
            }
        }
    }

    let mut out = Vec::new();
    let mut included: Vec<(usize, usize)> = Vec::new();

    fn search(
        pos: usize,
        edges: &[(usize, usize)],
        n: usize,
        parent: Vec<usize>,
        included: &mut Vec<(usize, usize)>,
        cells: &[Cell],
        region: &Polyomino,
        out: &mut Vec<SpanningTree>,
        deadline: &Deadline,
    ) -> Result<(), OracleError> {
        deadline.check()?;
        if included.len() == n - 1 {
            let tree_edges = included.iter().map(|&(a, b)| (cells[a], cells[b]));
            out.push(
                SpanningTree::new(region.clone(), tree_edges)
                    .expect("acyclic edge set of size n-1 spanning all vertices"),
            );
            return Ok(());
        }
        if pos == edges.len() || included.len() + (edges.len() - pos) < n - 1 {
            return Ok(());
        }
        let (a, b) = edges[pos];
        let mut dsu = Dsu { parent: parent.clone() };
        let (ra, rb) = (dsu.find(a), dsu.find(b));
        if ra != rb {
            let mut merged = dsu.parent.clone();
            merged[ra] = rb;
            included.push((a, b));
            search(pos + 1, edges, n, merged, included, cells, region, out, deadline)?;
            included.pop();
        }
        search(pos + 1, edges, n, parent, included, cells, region, out, deadline)
    }

    let parent: Vec<usize> = (0..n).collect();
    search(0, &edges, n, parent, &mut included, &cells, region, &mut out, &deadline)?;
    Ok(out)
}

/// Spanning-tree count by the matrix-tree theorem: the determinant of any
/// cofactor of the graph Laplacian, computed exactly with Bareiss
/// fraction-free elimination.
pub fn matrix_tree_count(region: &Polyomino) -> u128 {
    let cells: Vec<Cell> = region.cells().collect();
    let n = cells.len();
    if n == 1 {
        return 1;
    }
    let index = |c: Cell| cells.binary_search(&c).ok();
    let mut lap = vec![vec![0i128; n]; n];
    for (i, c) in cells.iter().enumerate() {
        for nb in c.neighbors() {
            if let Some(j) = index(nb) {
                lap[i][j] -= 1;
                lap[i][i] += 1;
            }
        }
    }
    // delete the last row and column, then take the determinant
    let m = n - 1;
    let mut a: Vec<Vec<i128>> = (0..m).map(|i| lap[i][..m].to_vec()).collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let swap = (k + 1..m).find(|&r| a[r][k] != 0);
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[m - 1][m - 1]) as u128
}

/// Exact minimum turn count over all tours, with every witness attaining it.
pub fn min_turn_tour(
    region: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<(usize, Vec<Pseudotour>), OracleError> {
    let tours = enumerate_tours(region, limits)?;
    let t_min = tours
        .iter()
        .map(|t| t.turns().len())
        .min()
        .unwrap_or(0);
    let witnesses = tours
        .into_iter()
        .filter(|t| t.turns().len() == t_min)
        .collect();
    Ok((t_min, witnesses))
}

/// Minimum turn count over the regular tours only, searched through the
/// spanning trees of the halved region.
pub fn min_turn_regular(
    region: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<(usize, Vec<SpanningTree>), OracleError> {
    let s = region.halve().map_err(|_| OracleError::NotEven)?;
    let trees = enumerate_spanning_trees(&s, limits)?;
    let turn_count = |tree: &SpanningTree| tour_from_spanning_tree(tree).turns().len();
    let t_min = trees.iter().map(turn_count).min().unwrap_or(0);
    let witnesses = trees.into_iter().filter(|t| turn_count(t) == t_min).collect();
    Ok((t_min, witnesses))
}

/// All polyominoes with `n` cells up to translation; with `free` set, also
/// deduplicated up to the eight plane symmetries.
pub fn enumerate_polyominoes(n: usize, free: bool) -> Vec<Polyomino> {
    assert!(n >= 1);
    let mut current: HashSet<Vec<Cell>> = HashSet::new();
    current.insert(vec![Cell::new(0, 0)]);
    for _ in 1..n {
        let mut next: HashSet<Vec<Cell>> = HashSet::new();
        for shape in &current {
            let cells: BTreeSet<Cell> = shape.iter().copied().collect();
            let mut candidates: BTreeSet<Cell> = BTreeSet::new();
            for c in &cells {
                for nb in c.neighbors() {
                    if !cells.contains(&nb) {
                        candidates.insert(nb);
                    }
                }
            }
            for cand in candidates {
                let mut grown = cells.clone();
                grown.insert(cand);
                next.insert(normalize(grown.into_iter()));
            }
        }
        current = next;
    }
    let mut out: Vec<Polyomino> = if free {
        let mut canon: HashSet<Vec<Cell>> = HashSet::new();
        let mut kept = Vec::new();
        for shape in current {
            let key = free_canonical(&shape);
            if canon.insert(key) {
                kept.push(shape);
            }
        }
        kept
    } else {
        current.into_iter().collect()
    }
    .into_iter()
    .map(|cells| Polyomino::from_cells(cells).expect("grown shapes are connected"))
    .collect();
    out.sort();
    out
}

fn normalize(cells: impl Iterator<Item = Cell>) -> Vec<Cell> {
    let cells: Vec<Cell> = cells.collect();
    let min_x = cells.iter().map(|c| c.x).min().unwrap();
    let min_y = cells.iter().map(|c| c.y).min().unwrap();
    let mut out: Vec<Cell> = cells
        .iter()
        .map(|c| Cell::new(c.x - min_x, c.y - min_y))
        .collect();
    out.sort();
    out
}

fn free_canonical(cells: &[Cell]) -> Vec<Cell> {
    let transforms: [fn(Cell) -> Cell; 8] = [
        |c| c,
        |c| Cell::new(-c.y, c.x),
        |c| Cell::new(-c.x, -c.y),
        |c| Cell::new(c.y, -c.x),
        |c| Cell::new(-c.x, c.y),
        |c| Cell::new(c.x, -c.y),
        |c| Cell::new(c.y, c.x),
        |c| Cell::new(-c.y, -c.x),
    ];
    transforms
        .iter()
        .map(|f| normalize(cells.iter().map(|&c| f(c))))
        .min()
        .unwrap()
}

/// Per-instance result of the theorem harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub cells_s: usize,
    pub t_min: usize,
    pub tour_count: usize,
    pub regular_count: usize,
    pub min_witness_count: usize,
    pub irregular_improved: usize,
}

/// Checks that every minimum-turn tour of `2S` is regular, and that the
/// improvement pipeline saves at least two turns on every irregular tour.
pub fn verify_theorem(
    s: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<TheoremReport, OracleError> {
    let p = s.double();
    let tours = enumerate_tours(&p, limits)?;
    let t_min = tours.iter().map(|t| t.turns().len()).min().unwrap_or(0);
    let mut regular_count = 0;
    let mut min_witness_count = 0;
    let mut irregular_improved = 0;
    for tour in &tours {
        let regular = is_regular(tour);
        if regular {
            regular_count += 1;
        }
        let turns = tour.turns().len();
        if turns == t_min {
            min_witness_count += 1;
            if !regular {
                return Err(OracleError::TheoremViolation { t_min });
            }
        }
        if !regular {
            let (improved, report) =
                improve(tour).expect("pipeline applies to every tour of an even polyomino");
            assert!(improved.is_tour());
            assert!(report.final_stats.turns <= turns - 2);
            irregular_improved += 1;
        }
    }
    Ok(TheoremReport {
        cells_s: s.len(),
        t_min,
        tour_count: tours.len(),
        regular_count,
        min_witness_count,
        irregular_improved,
    })
}

/// Per-instance result of the proposition harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionReport {
    pub cells_p: usize,
    pub t_min: usize,
    pub pseudotour_count: usize,
    pub min_witness_count: usize,
}

/// Checks that every minimum-turn pseudotour of an even polyomino is
/// turn-even.
pub fn verify_proposition(
    p: &Polyomino,
    limits: &EnumerationLimits,
) -> Result<PropositionReport, OracleError> {
    if !p.is_even() {
        return Err(OracleError::NotEven);
    }
    let pseudotours = enumerate_pseudotours(p, limits)?;
    let t_min = pseudotours
        .iter()
        .map(|t| t.turns().len())
        .min()
        .unwrap_or(0);
    let mut min_witness_count = 0;
    for t in &pseudotours {
        if t.turns().len() == t_min {
            min_witness_count += 1;
            if !build_turn_graph(t).is_turn_even() {
                return Err(OracleError::PropositionViolation { t_min });
            }
        }
    }
    Ok(PropositionReport {
        cells_p: p.len(),
        t_min,
        pseudotour_count: pseudotours.len(),
        min_witness_count,
    })
}
