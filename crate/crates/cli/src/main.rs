//! `distmagic`: construct, verify, rearrange and search for distance magic
//! labelings from the command line.
//!
//! Exit status: 0 on success or a positive verdict, 1 on a negative verdict
//! (not magic, none found), 2 on input errors.

mod spec;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distmagic::construct::{
    classify_cycle, classify_cycle_cartesian, classify_cycle_direct, classify_lex_cycles, label_c4,
    label_complete_bipartite, label_complete_minus_matching, label_cycle_product, label_direct,
    label_lexicographic, GridLabeling, Orientation,
};
use distmagic::magic::eit_schedule;
use distmagic::rearrange::{
    couple_layers_traced, extract_factor_labeling, extract_lexicographic_factor, scramble_balanced,
    BalancedProductLabeling, CoupleOutcome, Factor,
};
use distmagic::{
    find_distance_magic, generate, product, verify_balanced, verify_distance_magic, Graph,
    GraphKind, Labeling, ProductKind, SearchBudget, SearchResult,
};

use spec::{builtin_balanced, load_graph, read_file, CliResult};

#[derive(Parser)]
#[command(
    name = "distmagic",
    version,
    about = "Distance magic labelings of graphs and graph products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Header `m n k`, then one line per grid row.
    Grid,
    /// One `vertex label` line per vertex.
    List,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridOrientation {
    /// Row 0 printed last (lower left corner is vertex (0,0)).
    RowZeroLast,
    RowZeroFirst,
}

impl From<GridOrientation> for Orientation {
    fn from(o: GridOrientation) -> Self {
        match o {
            GridOrientation::RowZeroLast => Orientation::RowZeroLast,
            GridOrientation::RowZeroFirst => Orientation::RowZeroFirst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    /// Balanced labeling of C4.
    C4,
    /// Balanced labeling of K_{2n,2n}.
    CompleteBipartite,
    /// Balanced labeling of K_{2n} minus a perfect matching.
    CompleteMinusMatching,
    /// Balanced labeling of G ∘ H (G regular, H balanced).
    Lexicographic,
    /// Balanced labeling of G × H (G regular, H balanced).
    Direct,
    /// Distance magic labeling of C_m × C_n, m, n ≡ 0 (mod 4), both > 4.
    CycleProduct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProductArg {
    Cartesian,
    Lexicographic,
    Direct,
}

impl From<ProductArg> for ProductKind {
    fn from(p: ProductArg) -> Self {
        match p {
            ProductArg::Cartesian => ProductKind::Cartesian,
            ProductArg::Lexicographic => ProductKind::Lexicographic,
            ProductArg::Direct => ProductKind::Direct,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// C_m × C_n.
    Direct,
    /// C_m □ C_n.
    Cartesian,
    /// C_n ∘ C_m.
    Lexicographic,
    /// C_n.
    Cycle,
}

#[derive(Args)]
struct Output {
    /// Write the main output here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct LabelingInput {
    /// Labeling file format.
    #[arg(long, value_enum, default_value = "list")]
    format: Format,
    /// Row order of grid files.
    #[arg(long, value_enum, default_value = "row-zero-last")]
    orientation: GridOrientation,
}

#[derive(Subcommand)]
enum Command {
    /// Build a labeling with one of the explicit constructions.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        /// Row count of a cycle product.
        #[arg(long)]
        m: Option<usize>,
        /// Size parameter: n of K_{2n,2n} / K_{2n}-M, columns of a cycle product.
        #[arg(long)]
        n: Option<usize>,
        /// Factor G of a product construction (graph spec or file).
        #[arg(long)]
        g: Option<String>,
        /// Factor H of a product construction (graph spec or file).
        #[arg(long)]
        h: Option<String>,
        /// Balanced labeling of H; built in for cycle:4, empty:2n, kbip:2n,2n, kminusm:2n.
        #[arg(long)]
        h_labeling: Option<String>,
        /// Output format; defaults to grid for cycle products, list otherwise.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_enum, default_value = "row-zero-last")]
        orientation: GridOrientation,
        /// Also write the labeled graph as an edge list.
        #[arg(long)]
        graph_out: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a labeling and print a key=value report.
    Verify {
        /// Graph spec or edge-list file.
        graph: String,
        /// Labeling file.
        labeling: String,
        /// Also check balance.
        #[arg(long)]
        balanced: bool,
        #[command(flatten)]
        input: LabelingInput,
    },
    /// Write a product of two graphs as an edge list.
    Product {
        #[arg(long, value_enum)]
        kind: ProductArg,
        g: String,
        h: String,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustively search for a distance magic labeling.
    Search {
        graph: String,
        /// Maximum number of label assignments to try.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness labeling here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Rearrange a balanced product labeling until layers are coupled and
    /// extract a balanced labeling of a factor.
    Couple {
        #[arg(long, value_enum, default_value = "direct")]
        kind: ProductArg,
        g: String,
        h: String,
        labeling: String,
        /// Scramble the input within twin-preserving classes first.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        input: LabelingInput,
        /// Write the factor labeling here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Classify a cycle family.
    Classify {
        #[arg(value_enum)]
        family: Family,
        /// Cycle lengths: `m n` for products, `n m` for lexicographic, `n` for a cycle.
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<usize>,
    },
    /// Print the equalized incomplete tournament of a regular distance magic labeling.
    Eit {
        graph: String,
        labeling: String,
        #[command(flatten)]
        input: LabelingInput,
        #[command(flatten)]
        output: Output,
    },
    /// Print the 16 × 16 cycle product grid.
    Table16 {
        #[arg(long, value_enum, default_value = "row-zero-last")]
        orientation: GridOrientation,
        #[command(flatten)]
        output: Output,
    },
}

/// Successful run: exit status 0 or 1.
enum Verdict {
    Positive,
    Negative,
}

fn emit(out: &Option<String>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn lib<T>(r: distmagic::Result<T>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

fn load_labeling(path: &str, input: &LabelingInput) -> CliResult<Labeling> {
    let text = read_file(path)?;
    let parsed = match input.format {
        Format::List => Labeling::parse(&text),
        Format::Grid => {
            GridLabeling::parse(&text, input.orientation.into()).and_then(|(g, _)| g.to_labeling())
        }
    };
    parsed.map_err(|e| format!("{path}: {e}"))
}

fn required<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| format!("--{flag} is required for this kind"))
}

fn construct(cmd: Command) -> CliResult<Verdict> {
    let Command::Construct {
        kind,
        m,
        n,
        g,
        h,
        h_labeling,
        format,
        orientation,
        graph_out,
        output,
    } = cmd
    else {
        unreachable!()
    };
    // (graph, labeling, grid shape if any)
    let (graph, labeling, shape): (Graph, Labeling, Option<(usize, usize)>) = match kind {
        ConstructKind::C4 => (lib(generate(GraphKind::Cycle(4)))?, label_c4(), None),
        ConstructKind::CompleteBipartite => {
            let n = required(n, "n")?;
            let l = lib(label_complete_bipartite(n))?;
            (
                lib(generate(GraphKind::CompleteBipartite(2 * n, 2 * n)))?,
                l,
                None,
            )
        }
        ConstructKind::CompleteMinusMatching => {
            let n = required(n, "n")?;
            let l = lib(label_complete_minus_matching(n))?;
            (
                lib(generate(GraphKind::CompleteMinusPerfectMatching(2 * n)))?,
                l,
                None,
            )
        }
        ConstructKind::Lexicographic | ConstructKind::Direct => {
            let (gs, hs) = (required(g, "g")?, required(h, "h")?);
            let (gg, hg) = (load_graph(&gs)?, load_graph(&hs)?);
            let hl = match h_labeling {
                Some(path) => load_labeling(
                    &path,
                    &LabelingInput {
                        format: Format::List,
                        orientation,
                    },
                )?,
                None => builtin_balanced(&hs)?,
            };
            let (pk, l) = if kind == ConstructKind::Direct {
                (ProductKind::Direct, lib(label_direct(&gg, &hg, &hl))?)
            } else {
                (
                    ProductKind::Lexicographic,
                    lib(label_lexicographic(&gg, &hg, &hl))?,
                )
            };
            let shape = (gg.order(), hg.order());
            (product(pk, &gg, &hg).base().clone(), l, Some(shape))
        }
        ConstructKind::CycleProduct => {
            let (m, n) = (required(m, "m")?, required(n, "n")?);
            let grid = lib(label_cycle_product(m, n))?;
            let g = product(
                ProductKind::Direct,
                &lib(generate(GraphKind::Cycle(m)))?,
                &lib(generate(GraphKind::Cycle(n)))?,
            );
            (g.base().clone(), lib(grid.to_labeling())?, Some((m, n)))
        }
    };
    let format = format.unwrap_or(if kind == ConstructKind::CycleProduct {
        Format::Grid
    } else {
        Format::List
    });
    let text = match (format, shape) {
        (Format::List, _) => labeling.to_text(),
        (Format::Grid, Some((rows, cols))) => {
            let k = lib(verify_distance_magic(&graph, &labeling))?
                .magic_constant
                .unwrap_or(0);
            lib(GridLabeling::from_labeling(rows, cols, &labeling))?.to_text(k, orientation.into())
        }
        (Format::Grid, None) => return Err("--format grid needs a product construction".into()),
    };
    emit(&output.out, &text)?;
    if let Some(path) = graph_out {
        emit(&Some(path), &graph.to_edge_list())?;
    }
    Ok(Verdict::Positive)
}

fn verify(
    graph: &str,
    labeling: &str,
    balanced: bool,
    input: &LabelingInput,
) -> CliResult<Verdict> {
    let g = load_graph(graph)?;
    let l = load_labeling(labeling, input)?;
    let report = if balanced {
        verify_balanced(&g, &l)
    } else {
        verify_distance_magic(&g, &l)
    };
    let report = lib(report)?;
    print!("{}", report.to_kv());
    let ok = report.is_distance_magic && (!balanced || report.is_balanced);
    Ok(if ok {
        Verdict::Positive
    } else {
        Verdict::Negative
    })
}

fn search(graph: &str, budget: Option<u64>, out: &Option<String>) -> CliResult<Verdict> {
    let g = load_graph(graph)?;
    let budget = match budget {
        Some(b) => lib(SearchBudget::nodes(b))?,
        None => SearchBudget::unlimited(),
    };
    let outcome = find_distance_magic(&g, budget);
    print!("{outcome}");
    match &outcome.result {
        SearchResult::Found { labeling, .. } => {
            match out {
                Some(_) => emit(out, &labeling.to_text())?,
                None => print!("labeling\n{}", labeling.to_text()),
            }
            Ok(Verdict::Positive)
        }
        _ => Ok(Verdict::Negative),
    }
}

fn format_outcome(outcome: &CoupleOutcome) -> String {
    match outcome {
        CoupleOutcome::ClosedHLayer(g) => format!("closed_h_layer {g}"),
        CoupleOutcome::CoupledPairs(pairs) => {
            let list: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}:{b}")).collect();
            format!("coupled_pairs {}", list.join(" "))
        }
    }
}

fn couple(cmd: Command) -> CliResult<Verdict> {
    let Command::Couple {
        kind,
        g,
        h,
        labeling,
        seed,
        input,
        out,
    } = cmd
    else {
        unreachable!()
    };
    let p = product(kind.into(), &load_graph(&g)?, &load_graph(&h)?);
    let l = load_labeling(&labeling, &input)?;
    let mut bl = lib(BalancedProductLabeling::new(p, l))?;
    if let Some(seed) = seed {
        bl = scramble_balanced(&bl, seed);
    }
    let factor = if ProductKind::from(kind) == ProductKind::Lexicographic {
        println!("outcome=twins_within_h_layers");
        println!("factor=H");
        lib(extract_lexicographic_factor(&bl))?
    } else {
        let run = lib(couple_layers_traced(&bl))?;
        println!("outcome={}", format_outcome(&run.outcome));
        println!("swaps={}", run.swaps.len());
        let (which, factor) = lib(extract_factor_labeling(&run.labeling, &run.outcome))?;
        println!("factor={}", if which == Factor::G { "G" } else { "H" });
        factor
    };
    match out {
        Some(_) => emit(&out, &factor.to_text())?,
        None => print!("labeling\n{}", factor.to_text()),
    }
    Ok(Verdict::Positive)
}

fn classify(family: Family, params: &[usize]) -> CliResult<Verdict> {
    let two = || match params {
        [a, b] => Ok((*a, *b)),
        _ => Err("this family takes two cycle lengths".to_string()),
    };
    let yes_no = |b: bool| {
        if b {
            "distance_magic"
        } else {
            "not_distance_magic"
        }
    };
    let (name, positive) = match family {
        Family::Direct => {
            let (m, n) = two()?;
            let class = lib(classify_cycle_direct(m, n))?;
            (class.name(), class.is_distance_magic())
        }
        Family::Cartesian => {
            let (m, n) = two()?;
            let b = lib(classify_cycle_cartesian(m, n))?;
            (yes_no(b), b)
        }
        Family::Lexicographic => {
            let (n, m) = two()?;
            let b = lib(classify_lex_cycles(n, m))?;
            (yes_no(b), b)
        }
        Family::Cycle => {
            let [n] = params else {
                return Err("the cycle family takes one length".into());
            };
            let b = lib(classify_cycle(*n))?;
            (yes_no(b), b)
        }
    };
    println!("{name}");
    Ok(if positive {
        Verdict::Positive
    } else {
        Verdict::Negative
    })
}

fn eit(graph: &str, labeling: &str, input: &LabelingInput, output: &Output) -> CliResult<Verdict> {
    let g = load_graph(graph)?;
    let l = load_labeling(labeling, input)?;
    if g.regularity().is_none() {
        return Err(format!(
            "{graph}: graph is not regular, so it does not define an EIT"
        ));
    }
    if !lib(verify_distance_magic(&g, &l))?.is_distance_magic {
        println!("not_distance_magic");
        return Ok(Verdict::Negative);
    }
    emit(&output.out, &lib(eit_schedule(&g, &l))?.to_string())?;
    Ok(Verdict::Positive)
}

fn run(cli: Cli) -> CliResult<Verdict> {
    match cli.command {
        cmd @ Command::Construct { .. } => construct(cmd),
        Command::Verify {
            graph,
            labeling,
            balanced,
            input,
        } => verify(&graph, &labeling, balanced, &input),
        Command::Product { kind, g, h, output } => {
            let p = product(kind.into(), &load_graph(&g)?, &load_graph(&h)?);
            emit(&output.out, &p.base().to_edge_list())?;
            Ok(Verdict::Positive)
        }
        Command::Search { graph, budget, out } => search(&graph, budget, &out),
        cmd @ Command::Couple { .. } => couple(cmd),
        Command::Classify { family, params } => classify(family, &params),
        Command::Eit {
            graph,
            labeling,
            input,
            output,
        } => eit(&graph, &labeling, &input, &output),
        Command::Table16 {
            orientation,
            output,
        } => {
            let grid = lib(label_cycle_product(16, 16))?;
            emit(&output.out, &grid.to_text(2 * 256 + 2, orientation.into()))?;
            Ok(Verdict::Positive)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Positive) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
