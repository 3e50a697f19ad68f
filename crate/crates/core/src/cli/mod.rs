//! Command-line front end: `chi` on a matrix file, `fuzz` for seeded
//! self-checks.

mod fuzz;
mod parse;
mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::cayley::{ball, full_graph, CayleyError};
use crate::chromatic::{chi, ChromaticError, ChromaticResult};
use crate::oracle::{sandwich_verify, verify_certificate, OracleConfig, DEFAULT_NODE_BUDGET};

pub use fuzz::{
    fuzz, random_matrix, random_signed_permutation, random_unimodular, run_fuzz, Count, FuzzArgs,
    FuzzSummary,
};
pub use parse::{
    detect_format, parse_document, parse_json, parse_matrix, parse_text, InputFormat,
    MatrixDocument, ParseError,
};
pub use report::{render_text, status_label, ResultSummary, RunReport, SCHEMA_VERSION};

pub const EXIT_CHI: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNCOLORABLE: i32 = 2;
pub const EXIT_BEYOND_RANK_TWO: i32 = 3;

/// Name of the environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "CAYLEY_CHROMA_BUDGET_NODES";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Chromatic(#[from] ChromaticError),
    #[error("graph export: {0}")]
    Graph(#[from] CayleyError),
    #[error("internal error: certificate failed independent verification")]
    Rejected,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "cayley-chroma",
    version,
    about = "Chromatic numbers of Abelian Cayley graphs from integer matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chromatic number of the graph of one matrix.
    Chi(ChiArgs),
    /// Seeded random (or exhaustive) self-check of the engine against the oracle.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Ball radii for lower bounds (repeat or comma-separate).
    #[arg(long = "ball-radius", value_delimiter = ',', default_values_t = [2u32, 3, 4, 5])]
    pub ball_radius: Vec<u32>,
    /// Quotient moduli for upper bounds (repeat or comma-separate).
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12])]
    pub moduli: Vec<u64>,
    /// Search-node budget per exact coloring.
    #[arg(long = "budget-nodes", env = BUDGET_ENV, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget_nodes: u64,
    /// Skip colorings of cyclic images and search only the quotients.
    #[arg(long)]
    pub no_cyclic: bool,
}

impl OracleArgs {
    pub fn config(&self) -> OracleConfig {
        OracleConfig {
            ball_radii: self.ball_radius.clone(),
            moduli: self.moduli.clone(),
            node_budget: self.budget_nodes,
            cyclic_images: !self.no_cyclic,
            ..OracleConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ChiArgs {
    /// Matrix file, or `-` for standard input.
    pub path: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Include the full certificate.
    #[arg(long)]
    pub certify: bool,
    /// Audit the answer with ball and quotient bounds.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub oracle: OracleArgs,
    /// Write the finite graph (or the largest ball) as an edge list.
    #[arg(long = "dump-graph")]
    pub dump_graph: Option<PathBuf>,
    /// Report wall-clock time.
    #[arg(long)]
    pub timing: bool,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let read = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })?;
    Ok(text)
}

fn dump_graph(doc: &MatrixDocument, cfg: &OracleConfig, path: &PathBuf) -> Result<(), CliError> {
    let text = match full_graph(&doc.matrix, cfg.quotient_cap)? {
        Some(g) => g.graph().to_edge_list(),
        None => {
            let radius = cfg.ball_radii.iter().copied().max().unwrap_or(2);
            ball(&doc.matrix, radius, cfg.ball_cap)?
                .graph()
                .to_edge_list()
        }
    };
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

pub fn exit_code(result: &ChromaticResult) -> i32 {
    match result {
        ChromaticResult::Chi { .. } => EXIT_CHI,
        ChromaticResult::Uncolorable { .. } => EXIT_UNCOLORABLE,
        ChromaticResult::BeyondRankTwo { .. } => EXIT_BEYOND_RANK_TWO,
    }
}

/// Run `chi` on already loaded input text, writing the report to `out`.
/// Returns the exit code.
pub fn run_chi_on(
    args: &ChiArgs,
    doc: MatrixDocument,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let cfg = args.oracle.config();
    let start = Instant::now();
    let result = chi(&doc.matrix)?;
    if !verify_certificate(&doc.matrix, &result) {
        return Err(CliError::Rejected);
    }
    let beyond = matches!(result, ChromaticResult::BeyondRankTwo { .. });
    let sandwich = (args.verify || beyond).then(|| sandwich_verify(&doc.matrix, &result, &cfg));
    if let Some(path) = &args.dump_graph {
        dump_graph(&doc, &cfg, path)?;
    }
    let elapsed = args.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let code = exit_code(&result);
    let report = RunReport::new(doc, &result, args.certify, sandwich, elapsed)?;
    match args.format {
        OutputFormat::Text => out.write_all(render_text(&report).as_bytes())?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
    }
    Ok(code)
}

pub fn run_chi(args: &ChiArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_input(&args.path)?;
    let doc = parse_document(args.path.clone(), &text)?;
    run_chi_on(args, doc, out)
}

/// Dispatch a parsed command line. Errors are printed to `err` and map to
/// exit code 1.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match &cli.command {
        Command::Chi(args) => run_chi(args, out),
        Command::Fuzz(args) => run_fuzz(args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            // nothing more to do if stderr is gone
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
