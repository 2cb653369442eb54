//! `mengerian`: recognize Mengerian multigraphs, compute temporal Menger
//! quantities, search for violating time-functions and generate test graphs.
//!
//! Exit codes: 0 for Mengerian / no counterexample / success, 1 for
//! non-Mengerian / counterexample found, 2 for usage, parse and resource errors.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mengerian_core::dot::to_dot;
use mengerian_core::format::GraphFile;
use mengerian_core::generate::{m_subdivided_pattern, random_multigraph};
use mengerian_core::menger::{
    edge_menger, falsify_mengerian, vertex_menger, FalsifyMode, OracleLimits,
};
use mengerian_core::patterns::{Pattern, PatternId};
use mengerian_core::recognizer::{recognize, recognize_with_proof};
use mengerian_core::Error;

#[derive(Parser)]
#[command(
    name = "mengerian",
    version,
    about = "Mengerian multigraph recognition and temporal Menger oracles"
)]
struct Cli {
    /// Worker threads for the parallel parts (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest vertex count accepted by the exponential oracles.
    #[arg(
        long,
        global = true,
        env = "MENGERIAN_MAX_VERTICES",
        default_value_t = 16
    )]
    max_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a multigraph is Mengerian.
    Recognize(RecognizeArgs),
    /// Compute p and c (or p' and c') for a labeled graph.
    Menger(MengerArgs),
    /// Search for a time-function with p < c.
    Falsify(FalsifyArgs),
    /// Print a generated graph file.
    Gen(GenArgs),
}

#[derive(Args)]
struct RecognizeArgs {
    path: PathBuf,
    /// Attach and verify a violating time-function.
    #[arg(long)]
    proof: bool,
    /// Print a JSON report.
    #[arg(long)]
    json: bool,
    /// Write a DOT drawing to PATH (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    dot: Option<String>,
}

#[derive(Args)]
struct MengerArgs {
    path: PathBuf,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    /// Edge-disjoint paths and edge cuts.
    #[arg(long, conflicts_with = "vertex")]
    edge: bool,
    /// Internally vertex-disjoint paths and vertex cuts (default).
    #[arg(long)]
    vertex: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["exhaustive", "samples"]))]
struct FalsifyArgs {
    path: PathBuf,
    /// Try every weak order of the edges.
    #[arg(long)]
    exhaustive: bool,
    /// Number of uniformly random time-functions.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest edge count accepted by --exhaustive.
    #[arg(long, default_value_t = OracleLimits::default().max_edges)]
    max_edges: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Multigraph,
    MSubdividedPattern,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    max_mult: usize,
    /// F1, F2 or F3.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, default_value_t = 0)]
    ops: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let limits = OracleLimits {
        max_vertices: cli.max_size,
        ..OracleLimits::default()
    };
    let result = match cli.command {
        Command::Recognize(a) => cmd_recognize(a, &limits),
        Command::Menger(a) => cmd_menger(a, &limits),
        Command::Falsify(a) => cmd_falsify(a, &limits),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<u8, String>;

fn load(path: &Path) -> Result<GraphFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    GraphFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn cmd_recognize(a: RecognizeArgs, limits: &OracleLimits) -> CmdResult {
    let file = load(&a.path)?;
    let start = Instant::now();
    let (rec, proof) = if a.proof {
        recognize_with_proof(&file.graph, limits)
    } else {
        (recognize(&file.graph), None)
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let to_stdout_dot = a.dot.as_deref() == Some("-");
    if let Some(target) = &a.dot {
        let dot = to_dot(&file, rec.verdict.embedding());
        if to_stdout_dot {
            print!("{dot}");
        } else {
            std::fs::write(target, dot).map_err(|e| format!("{target}: {e}"))?;
        }
    }
    if a.json {
        let value = report::recognition_json(&file, &rec, proof.as_ref(), elapsed_ms);
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("reports serialize")
        );
    } else if !to_stdout_dot {
        print!("{}", report::recognition_text(&file, &rec, proof.as_ref()));
    }
    Ok(if rec.verdict.is_mengerian() { 0 } else { 1 })
}

fn cmd_menger(a: MengerArgs, limits: &OracleLimits) -> CmdResult {
    let file = load(&a.path)?;
    let tg = file.temporal().map_err(err)?;
    let s = file.vertex(&a.source).map_err(err)?;
    let t = file.vertex(&a.target).map_err(err)?;
    if a.edge {
        let r = edge_menger(&tg, s, t).map_err(err)?;
        if a.json {
            println!("{}", report::edge_menger_json(&file, &r));
        } else {
            print!("{}", report::edge_menger_text(&file, tg.times(), &r));
        }
    } else {
        if file.graph.adjacent(s, t) {
            return Err(err(Error::AdjacentTerminals(s, t)));
        }
        let r = vertex_menger(&tg, s, t, limits).map_err(err)?;
        if a.json {
            println!("{}", report::menger_json(&file, &r));
        } else {
            print!("{}", report::menger_text(&file, tg.times(), &r));
        }
    }
    Ok(0)
}

fn cmd_falsify(a: FalsifyArgs, limits: &OracleLimits) -> CmdResult {
    let file = load(&a.path)?;
    let limits = OracleLimits {
        max_edges: a.max_edges,
        ..*limits
    };
    let mode = match a.samples {
        Some(samples) => FalsifyMode::Randomized {
            samples,
            seed: a.seed,
        },
        None => FalsifyMode::Exhaustive,
    };
    match falsify_mengerian(&file.graph, mode, &limits).map_err(err)? {
        Some(c) => {
            print!("{}", report::counterexample_text(&file, &c));
            Ok(1)
        }
        None => {
            println!("# no counterexample found");
            Ok(0)
        }
    }
}

fn parse_pattern(name: &str) -> Result<PatternId, String> {
    PatternId::ALL
        .into_iter()
        .find(|id| id.to_string().eq_ignore_ascii_case(name))
        .ok_or_else(|| format!("unknown pattern {name:?} (expected F1, F2 or F3)"))
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let file = match a.model {
        Model::Multigraph => {
            if a.pattern.is_some() || a.ops != 0 {
                return Err("--pattern and --ops apply to --model m-subdivided-pattern".into());
            }
            let n = a.n.ok_or("--model multigraph needs --n")?;
            let m = a.m.ok_or("--model multigraph needs --m")?;
            GraphFile::unnamed(
                random_multigraph(n, m, a.max_mult, a.seed).map_err(err)?,
                None,
            )
        }
        Model::MSubdividedPattern => {
            if a.n.is_some() || a.m.is_some() {
                return Err("--n and --m apply to --model multigraph".into());
            }
            let id = parse_pattern(
                a.pattern
                    .as_deref()
                    .ok_or("--model m-subdivided-pattern needs --pattern")?,
            )?;
            let g = m_subdivided_pattern(id, a.ops, a.seed);
            let pattern = Pattern::get(id);
            let mut names: Vec<String> = pattern.names.iter().map(|s| s.to_string()).collect();
            names.extend((names.len()..g.vertex_count()).map(|i| format!("x{i}")));
            GraphFile {
                names,
                graph: g,
                labels: None,
            }
        }
    };
    print!("{}", file.emit());
    Ok(0)
}
