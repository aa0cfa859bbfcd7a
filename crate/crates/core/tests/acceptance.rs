//! Exhaustive desk-scale verification of the main results. Each test covers
//! one criterion, checks it exactly (no tolerances), and prints a single
//! pass line. The corpus is every free simply connected polyomino S with
//! 1..=6 cells; the doubled regions P = 2S have at most 24 cells.

use minturn::oracle::{
    enumerate_polyominoes, enumerate_pseudotours, enumerate_spanning_trees, enumerate_tours,
    matrix_tree_count, min_turn_regular, min_turn_tour, verify_proposition, verify_theorem,
    EnumerationLimits,
};
use minturn::transform::{delete_cycle, find_innermost_cycle, improve, stitch};
use minturn::turngraph::{
    build_turn_graph, is_regular, pseudotour_from_turn_graph, spanning_tree_from_regular_tour,
    tour_from_spanning_tree,
};
use minturn::{Polyomino, Pseudotour};
use std::sync::OnceLock;

fn limits() -> EnumerationLimits {
    EnumerationLimits {
        max_cells: 36,
        time_budget: std::time::Duration::from_secs(1800),
    }
}

/// Free simply connected polyominoes with 1..=max cells.
fn corpus(max: usize) -> Vec<Polyomino> {
    (1..=max)
        .flat_map(|n| enumerate_polyominoes(n, true))
        .filter(|s| s.is_simply_connected())
        .collect()
}

/// Every tour of every doubled corpus region, enumerated once and shared
/// across the pipeline criteria.
fn doubled_tours() -> &'static Vec<(Polyomino, Vec<Pseudotour>)> {
    static CACHE: OnceLock<Vec<(Polyomino, Vec<Pseudotour>)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        corpus(6)
            .into_iter()
            .map(|s| {
                let p = s.double();
                let tours = enumerate_tours(&p, &limits()).unwrap();
                (p, tours)
            })
            .collect()
    })
}

#[test]
fn criterion_1_minimum_turn_tours_are_regular() {
    let mut instances = 0;
    for s in corpus(6) {
        let report = verify_theorem(&s, &limits()).unwrap();
        assert!(report.min_witness_count >= 1);
        instances += 1;
    }
    assert_eq!(instances, 1 + 1 + 2 + 5 + 12 + 35);
    println!("PASS criterion 1: theorem holds on all {instances} corpus instances");
}

#[test]
fn criterion_2_minimum_turn_pseudotours_are_turn_even() {
    let mut instances = 0;
    for s in corpus(4) {
        let p = s.double();
        verify_proposition(&p, &limits()).unwrap();
        instances += 1;
    }
    assert_eq!(instances, 1 + 1 + 2 + 5);
    println!("PASS criterion 2: proposition holds on all {instances} instances with |S| <= 4");
}

#[test]
fn criterion_3_pipeline_saves_two_turns_on_every_irregular_tour() {
    let mut improved = 0;
    for (_, tours) in doubled_tours() {
        for tour in tours {
            if is_regular(tour) {
                continue;
            }
            let t = tour.turns().len();
            let (out, report) = improve(tour).unwrap();
            assert!(out.is_tour());
            assert!(out.turns().len() <= t - 2);
            assert_eq!(report.final_stats.turns, out.turns().len());
            improved += 1;
        }
    }
    assert!(improved > 0);
    println!("PASS criterion 3: improve achieved <= t - 2 on all {improved} irregular tours");
}

#[test]
fn criterion_4_cycle_deletion_accounting() {
    // replay the downward phase of the pipeline on every irregular tour,
    // checking the per-deletion bookkeeping directly
    let mut deletions = 0;
    for (_, tours) in doubled_tours() {
        for tour in tours {
            if is_regular(tour) {
                continue;
            }
            let mut current = tour.clone();
            while let Some(cycle) = find_innermost_cycle(&build_turn_graph(&current)) {
                let before = current.stats();
                let (next, report) = delete_cycle(&current, &cycle).unwrap();
                assert!(report.ell >= 2);
                assert_eq!(cycle.len(), 2 * report.ell);
                assert_eq!(report.after.turns, before.turns - 2 * report.ell);
                assert!(report.after.cycles <= before.cycles + report.ell - 1);
                deletions += 1;
                current = next;
            }
        }
    }
    assert!(deletions > 0);
    println!("PASS criterion 4: t' = t - 2*ell and s' <= s + ell - 1 on all {deletions} deletions");
}

#[test]
fn criterion_5_stitch_accounting() {
    // replay the upward phase: after the deletions, stitch back to a tour,
    // checking cycle count, turn growth, and turn-evenness at every step
    let mut stitches = 0;
    for (_, tours) in doubled_tours() {
        for tour in tours {
            if is_regular(tour) {
                continue;
            }
            let mut current = tour.clone();
            while let Some(cycle) = find_innermost_cycle(&build_turn_graph(&current)) {
                current = delete_cycle(&current, &cycle).unwrap().0;
            }
            while current.stats().cycles > 1 {
                let before = current.stats();
                let (next, _) = stitch(&current).unwrap();
                assert_eq!(next.stats().cycles, before.cycles - 1);
                assert!(next.stats().turns <= before.turns + 2);
                assert!(build_turn_graph(&next).is_turn_even());
                stitches += 1;
                current = next;
            }
        }
    }
    assert!(stitches > 0);
    println!("PASS criterion 5: s - 1 cycles, <= t + 2 turns, turn-even on all {stitches} stitches");
}

#[test]
fn criterion_6_turn_graph_bijection_on_all_pseudotours() {
    let mut count = 0;
    for s in corpus(4) {
        let p = s.double();
        assert!(p.len() <= 16);
        for pt in enumerate_pseudotours(&p, &limits()).unwrap() {
            let u = build_turn_graph(&pt);
            assert!(u.is_wellformed());
            assert_eq!(pseudotour_from_turn_graph(&u).unwrap(), pt);
            count += 1;
        }
    }
    assert!(count > 0);
    println!("PASS criterion 6: bijection round-trips on all {count} pseudotours");
}

#[test]
fn criterion_7_spanning_trees_give_invertible_regular_tours() {
    let mut tree_count = 0;
    for s in corpus(6) {
        let trees = enumerate_spanning_trees(&s, &limits()).unwrap();
        assert_eq!(trees.len() as u128, matrix_tree_count(&s));
        let p = s.double();
        for tree in &trees {
            let tour = tour_from_spanning_tree(tree);
            assert_eq!(tour.region(), &p);
            assert!(tour.is_tour());
            assert!(is_regular(&tour));
            assert_eq!(&spanning_tree_from_regular_tour(&tour).unwrap(), tree);
            tree_count += 1;
        }
    }
    println!("PASS criterion 7: all {tree_count} spanning-tree tours regular and invertible");
}

#[test]
fn criterion_8_regular_minimum_equals_global_minimum() {
    let mut instances = 0;
    for s in corpus(6) {
        let p = s.double();
        let (t_reg, _) = min_turn_regular(&p, &limits()).unwrap();
        let (t_all, _) = min_turn_tour(&p, &limits()).unwrap();
        assert_eq!(t_reg, t_all);
        instances += 1;
    }
    println!("PASS criterion 8: min_turn_regular = min_turn_tour on all {instances} instances");
}
