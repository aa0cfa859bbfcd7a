//! Command-line front end: parse regions, build and improve tours, run the
//! verification harnesses, and render results as ASCII art or SVG.
//!
//! Exit codes: 0 ok, 1 failed predicate, 2 parse error, 3 budget refused,
//! 4 verification violation.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use minturn::oracle::{
    enumerate_polyominoes, min_turn_regular, min_turn_tour, verify_proposition, verify_theorem,
    EnumerationLimits, OracleError,
};
use minturn::render::{render, Format, Layer, RenderInput, RenderSpec};
use minturn::transform::improve;
use minturn::turngraph::{build_turn_graph, is_regular, SpanningTree};
use minturn::{Cell, Polyomino, Pseudotour};

const EXIT_PREDICATE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

/// Largest --max-cells accepted by `verify`; beyond this the exhaustive
/// tour enumerations stop being a desk-scale job.
const VERIFY_CAP: usize = 8;

#[derive(Parser)]
#[command(name = "minturn", version, about = "Minimum-turn tours of even polyominoes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Diagnose a region file: connectivity, holes, evenness.
    Check { region: PathBuf },
    /// Rewrite a tour with at least two fewer turns unless already regular.
    Improve {
        tour: PathBuf,
        /// Print one line per pipeline step to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Emit a minimum-turn tour of an even region.
    MinTour {
        region: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Regular)]
        method: Method,
    },
    /// Exhaustively verify the minimum-turn results on all small regions.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_cells: usize,
        /// Also write the per-instance report lines to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a region, tour, turn graph, or spanning tree.
    Render {
        #[arg(long)]
        region: Option<PathBuf>,
        #[arg(long)]
        tour: Option<PathBuf>,
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Comma-separated subset of region,tour,turn-graph,tree.
        #[arg(long, value_delimiter = ',', required = true)]
        layers: Vec<LayerArg>,
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        /// Pixels per cell (SVG only).
        #[arg(long, default_value_t = 24)]
        scale: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Oracle,
    Regular,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayerArg {
    Region,
    Tour,
    TurnGraph,
    Tree,
}

impl From<LayerArg> for Layer {
    fn from(l: LayerArg) -> Layer {
        match l {
            LayerArg::Region => Layer::Region,
            LayerArg::Tour => Layer::Tour,
            LayerArg::TurnGraph => Layer::TurnGraph,
            LayerArg::Tree => Layer::Tree,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn run(cmd: Cmd) -> Result<(), u8> {
    match cmd {
        Cmd::Check { region } => cmd_check(&region),
        Cmd::Improve { tour, trace } => cmd_improve(&tour, trace),
        Cmd::MinTour { region, method } => cmd_min_tour(&region, method),
        Cmd::Verify { max_cells, out } => cmd_verify(max_cells, out.as_deref()),
        Cmd::Render {
            region,
            tour,
            tree,
            layers,
            format,
            scale,
        } => cmd_render(
            region.as_deref(),
            tour.as_deref(),
            tree.as_deref(),
            &layers,
            format,
            scale,
        ),
    }
}

fn read_file(path: &std::path::Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })
}

/// Region files hold either an ASCII grid of `#`/`.` rows or `cell x y`
/// lines.
fn parse_region(text: &str) -> Result<Polyomino, minturn::region::RegionError> {
    if text.trim_start().starts_with("cell ") {
        Polyomino::parse_cell_lines(text)
    } else {
        Polyomino::parse_ascii(text)
    }
}

fn load_region(path: &std::path::Path) -> Result<Polyomino, u8> {
    let text = read_file(path)?;
    parse_region(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn cmd_check(path: &std::path::Path) -> Result<(), u8> {
    let region = load_region(path)?;
    let simply_connected = region.is_simply_connected();
    let even = region.is_even();
    if !simply_connected {
        println!("not simply connected");
    }
    if !even {
        println!("not even");
    }
    if simply_connected && even {
        let s = region.halve().expect("even region halves");
        println!(
            "even, simply connected, S = {} cell{}",
            s.len(),
            if s.len() == 1 { "" } else { "s" }
        );
        Ok(())
    } else {
        Err(EXIT_PREDICATE)
    }
}

fn cmd_improve(path: &std::path::Path, trace: bool) -> Result<(), u8> {
    let text = read_file(path)?;
    let tour = Pseudotour::parse_tour_text(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })?;
    if !tour.is_tour() {
        eprintln!("error: input is a pseudotour with {} cycles, not a tour", tour.stats().cycles);
        return Err(EXIT_PREDICATE);
    }
    if is_regular(&tour) {
        eprintln!("already regular");
        print!("{}", tour.to_tour_text());
        return Ok(());
    }
    let (improved, report) = improve(&tour).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PREDICATE
    })?;
    if trace {
        eprint!("{}", report.to_trace_text());
    }
    print!("{}", improved.to_tour_text());
    Ok(())
}

fn budget_exit(e: OracleError) -> u8 {
    eprintln!("error: {e}");
    match e {
        OracleError::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_PREDICATE,
    }
}

fn cmd_min_tour(path: &std::path::Path, method: Method) -> Result<(), u8> {
    let region = load_region(path)?;
    if !region.is_even() || !region.is_simply_connected() {
        eprintln!("error: region must be an even simply connected polyomino");
        return Err(EXIT_PREDICATE);
    }
    let limits = EnumerationLimits::default();
    let (t_min, tour, count) = match method {
        Method::Oracle => {
            let (t_min, witnesses) = min_turn_tour(&region, &limits).map_err(budget_exit)?;
            let count = witnesses.len();
            (t_min, witnesses.into_iter().next().expect("even region has a tour"), count)
        }
        Method::Regular => {
            let (t_min, trees) = min_turn_regular(&region, &limits).map_err(budget_exit)?;
            let count = trees.len();
            let tree = trees.into_iter().next().expect("region has a spanning tree");
            (t_min, minturn::turngraph::tour_from_spanning_tree(&tree), count)
        }
    };
    eprintln!("t_min {t_min}");
    eprintln!("witnesses {count}");
    print!("{}", tour.to_tour_text());
    Ok(())
}

fn cmd_verify(max_cells: usize, out: Option<&std::path::Path>) -> Result<(), u8> {
    if max_cells > VERIFY_CAP {
        eprintln!("error: --max-cells {max_cells} exceeds the cap of {VERIFY_CAP}");
        return Err(EXIT_BUDGET);
    }
    let limits = EnumerationLimits::default();
    let mut lines = Vec::new();
    let mut failures = 0usize;
    for n in 1..=max_cells {
        for s in enumerate_polyominoes(n, true) {
            if !s.is_simply_connected() {
                continue;
            }
            let shape = shape_id(&s);
            let line = match verify_theorem(&s, &limits) {
                Ok(r) => format!(
                    "instance shape={shape} cells={} t_min={} tours={} regular={} min_witnesses={} result=pass",
                    r.cells_s, r.t_min, r.tour_count, r.regular_count, r.min_witness_count
                ),
                Err(OracleError::BudgetExceeded(msg)) => {
                    eprintln!("error: {msg}");
                    return Err(EXIT_BUDGET);
                }
                Err(e) => {
                    failures += 1;
                    format!("instance shape={shape} cells={n} result=FAIL ({e})")
                }
            };
            println!("{line}");
            lines.push(line);
            // the pseudotour proposition is only desk-scale up to 2x2 blocks
            // of 4 source cells
            if n <= 4 {
                let line = match verify_proposition(&s.double(), &limits) {
                    Ok(r) => format!(
                        "proposition shape={shape} cells={} t_min={} pseudotours={} min_witnesses={} result=pass",
                        r.cells_p, r.t_min, r.pseudotour_count, r.min_witness_count
                    ),
                    Err(OracleError::BudgetExceeded(msg)) => {
                        eprintln!("error: {msg}");
                        return Err(EXIT_BUDGET);
                    }
                    Err(e) => {
                        failures += 1;
                        format!("proposition shape={shape} cells={n} result=FAIL ({e})")
                    }
                };
                println!("{line}");
                lines.push(line);
            }
        }
    }
    let summary = format!("summary instances={} failures={failures}", lines.len());
    println!("{summary}");
    lines.push(summary);
    if let Some(path) = out {
        std::fs::write(path, lines.join("\n") + "\n").map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_PARSE
        })?;
    }
    if failures > 0 {
        Err(EXIT_VIOLATION)
    } else {
        Ok(())
    }
}

/// Compact one-line shape key: rows of the ASCII form joined with '/'.
fn shape_id(region: &Polyomino) -> String {
    region.to_ascii().trim_end().replace('\n', "/")
}

/// Tree files are self-contained: `cell x y` lines list the vertices and
/// `edge x1 y1 x2 y2` lines the tree edges.
fn parse_tree(text: &str) -> Result<SpanningTree, String> {
    let mut cells = Vec::new();
    let mut edges = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let nums = |want: usize| -> Result<Vec<i64>, String> {
            if fields.len() != want + 1 {
                return Err(format!("malformed tree line: {line}"));
            }
            fields[1..]
                .iter()
                .map(|f| f.parse().map_err(|_| format!("malformed tree line: {line}")))
                .collect()
        };
        match fields[0] {
            "cell" => {
                let v = nums(2)?;
                cells.push(Cell::new(v[0], v[1]));
            }
            "edge" => {
                let v = nums(4)?;
                edges.push((Cell::new(v[0], v[1]), Cell::new(v[2], v[3])));
            }
            other => return Err(format!("unknown tree record: {other}")),
        }
    }
    let region = Polyomino::from_cells(cells).map_err(|e| e.to_string())?;
    SpanningTree::new(region, edges).map_err(|e| e.to_string())
}

fn cmd_render(
    region: Option<&std::path::Path>,
    tour: Option<&std::path::Path>,
    tree: Option<&std::path::Path>,
    layers: &[LayerArg],
    format: FormatArg,
    scale: u32,
) -> Result<(), u8> {
    let region = region.map(load_region).transpose()?;
    let tour = tour
        .map(|p| {
            let text = read_file(p)?;
            Pseudotour::parse_tour_text(&text).map_err(|e| {
                eprintln!("error: {}: {e}", p.display());
                EXIT_PARSE
            })
        })
        .transpose()?;
    let tree = tree
        .map(|p| {
            let text = read_file(p)?;
            parse_tree(&text).map_err(|e| {
                eprintln!("error: {}: {e}", p.display());
                EXIT_PARSE
            })
        })
        .transpose()?;

    let graph = tour.as_ref().map(build_turn_graph);
    let input = RenderInput {
        region: region.as_ref(),
        tour: tour.as_ref(),
        turn_graph: graph.as_ref(),
        tree: tree.as_ref(),
    };
    let layer_set: BTreeSet<Layer> = layers.iter().map(|&l| Layer::from(l)).collect();
    let spec = RenderSpec {
        format: match format {
            FormatArg::Ascii => Format::Ascii,
            FormatArg::Svg => Format::Svg,
        },
        layers: layer_set,
        scale,
    };
    let art = render(&input, &spec).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_PARSE
    })?;
    print!("{art}");
    Ok(())
}
