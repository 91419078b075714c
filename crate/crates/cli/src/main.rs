mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skeleton_core::moduli::{count_s_cones, count_sp_cones, DedupMode, Placement};
use skeleton_core::realize::{realize, verify};
use skeleton_core::{compute_skeleton, BranchConfiguration, GraphFile, SkeletonReport};

use crate::error::CliError;
use crate::io::{read_json, to_json, write_text, CoveringFile, CurveFile};

#[derive(Parser)]
#[command(
    name = "skeleton",
    version,
    about = "Tropical skeleta of superelliptic curves y^n = f(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the skeleton of a curve.
    Compute {
        #[arg(long)]
        input: PathBuf,
        /// Write the covering graph before stabilization, with its map to the
        /// tree, instead of the skeleton.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Full run report: tree, divisor, slopes, fibers, checks and timing.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build a curve whose skeleton is a given cover of a tree.
    Realize {
        #[arg(long)]
        covering: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        output: PathBuf,
        /// Recompute the skeleton of the result and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Count maximal cones of a moduli space of tropical superelliptic curves.
    Moduli {
        #[arg(long, value_enum, ignore_case = true)]
        space: Space,
        #[arg(long)]
        leaves: usize,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        emit_types: Option<PathBuf>,
        /// Where ∞ may sit for Sp.
        #[arg(long, value_enum, default_value_t = PlacementArg::BranchPoints)]
        placement: PlacementArg,
        #[arg(long, value_enum, default_value_t = DedupArg::Constrained)]
        dedup: DedupArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    #[value(name = "S")]
    S,
    #[value(name = "Sp")]
    Sp,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementArg {
    Vertices,
    Leaves,
    Union,
    BranchPoints,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Vertices => Placement::Vertices,
            PlacementArg::Leaves => Placement::Leaves,
            PlacementArg::Union => Placement::Union,
            PlacementArg::BranchPoints => Placement::BranchPoints,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DedupArg {
    Constrained,
    Graph,
}

impl From<DedupArg> for DedupMode {
    fn from(d: DedupArg) -> Self {
        match d {
            DedupArg::Constrained => DedupMode::Constrained,
            DedupArg::Graph => DedupMode::Graph,
        }
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    #[serde(flatten)]
    report: &'a SkeletonReport,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct RealizeSummary {
    genus: u64,
    scale: skeleton_core::Rational,
    verified: Option<bool>,
}

fn compute(
    input: PathBuf,
    raw: bool,
    dot: Option<PathBuf>,
    output: Option<PathBuf>,
    report_path: Option<PathBuf>,
) -> Result<(), CliError> {
    let curve: CurveFile = read_json(&input)?;
    let start = Instant::now();
    let cfg = BranchConfiguration::new(curve.n, curve.roots)?;
    let report = compute_skeleton(&cfg)?;
    let elapsed = start.elapsed();
    let (graph, text) = if raw {
        (report.covering.to_graph(), to_json(&report.covering))
    } else {
        (report.skeleton.clone(), to_json(&GraphFile::new(&report.skeleton)))
    };
    match output {
        Some(path) => write_text(&path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = dot {
        write_text(&path, &graph.to_dot())?;
    }
    if let Some(path) = report_path {
        let run = RunReport {
            report: &report,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        };
        write_text(&path, &to_json(&run))?;
    }
    Ok(())
}

fn realize_cmd(covering: PathBuf, prime: u64, output: PathBuf, check: bool) -> Result<(), CliError> {
    let file: CoveringFile = read_json(&covering)?;
    let datum = file.into_datum(prime)?;
    let realization = realize(&datum)?;
    let verified = if check {
        if !verify(&datum, &realization)? {
            return Err(CliError::VerificationFailed);
        }
        Some(true)
    } else {
        None
    };
    let curve = CurveFile {
        n: prime,
        roots: realization.configuration.roots(),
    };
    write_text(&output, &to_json(&curve))?;
    let summary = RealizeSummary {
        genus: skeleton_core::rh_genus(&realization.configuration),
        scale: realization.scale,
        verified,
    };
    print!("{}", to_json(&summary));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn moduli(
    space: Space,
    leaves: usize,
    prime: u64,
    jobs: Option<usize>,
    emit_types: Option<PathBuf>,
    placement: PlacementArg,
    dedup: DedupArg,
) -> Result<(), CliError> {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let report = match space {
        Space::S => count_s_cones(leaves, prime, dedup.into(), jobs)?,
        Space::Sp => count_sp_cones(leaves, prime, placement.into(), dedup.into(), jobs)?,
    };
    println!("{}", report.count);
    if let Some(path) = emit_types {
        write_text(&path, &to_json(&report.types))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            input,
            raw,
            dot,
            output,
            report,
        } => compute(input, raw, dot, output, report),
        Command::Realize {
            covering,
            prime,
            output,
            verify,
        } => realize_cmd(covering, prime, output, verify),
        Command::Moduli {
            space,
            leaves,
            prime,
            jobs,
            emit_types,
            placement,
            dedup,
        } => moduli(space, leaves, prime, jobs, emit_types, placement, dedup),
    }
}

fn report_error(kind: &str, message: &str) {
    let body = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("Usage", e.to_string().trim_end());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
