//! `arrlab`: analyze plane line arrangements with exact arithmetic.
//!
//! Sources are either input files (JSON) or `catalog:` specs such as
//! `catalog:generic:5`, `catalog:L:7:5`, `catalog:lhat:3:3`,
//! `catalog:monomial:3`, `catalog:pencil:4`.
//!
//! Exit codes: 0 ok, 1 a violation verdict, 2 parse or construction error,
//! 3 non-essential arrangement, 4 internal invariant failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use arrlab_core::analysis::{
    analyze_source, batch_paths, batch_summary_json, directory_inputs, load_source,
    AnalysisOptions,
};
use arrlab_core::arrangement::to_input_json;

#[derive(Parser)]
#[command(name = "arrlab", version, about = "Exact invariants of plane line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one arrangement and print a JSON report.
    Analyze {
        /// Input file path or catalog spec.
        source: String,
        /// Dimension of the (-1)-monodromy eigenspace on H^1 of the Milnor
        /// fiber, for the even-degree bound.
        #[arg(long)]
        h1: Option<u64>,
        /// Assert that all components of a bare-polynomial input are
        /// rational curves.
        #[arg(long)]
        rational: bool,
        /// Skip the spectrum and the derived bound checks.
        #[arg(long)]
        skip_spectrum: bool,
        /// Compact single-line JSON instead of pretty-printed.
        #[arg(long)]
        json: bool,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Analyze every .json file in a directory and group realizations by
    /// lattice certificate.
    Batch {
        /// Directory of input files.
        dir: PathBuf,
        /// Number of worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Include wall-clock timings in the per-file reports.
        #[arg(long)]
        timings: bool,
    },
    /// Emit the input JSON for a catalog spec.
    Catalog {
        /// Catalog spec, e.g. catalog:monomial:3.
        spec: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze {
            source,
            h1,
            rational,
            skip_spectrum,
            json,
            timings,
        } => analyze_cmd(&source, h1, rational, skip_spectrum, json, timings),
        Command::Batch { dir, jobs, timings } => batch_cmd(&dir, jobs, timings),
        Command::Catalog { spec } => catalog_cmd(&spec),
    };
    ExitCode::from(code as u8)
}

fn analyze_cmd(
    source: &str,
    h1: Option<u64>,
    rational: bool,
    skip_spectrum: bool,
    compact: bool,
    timings: bool,
) -> i32 {
    let opts = AnalysisOptions {
        h1_override: h1,
        assume_rational: rational,
        skip_spectrum,
        with_timings: timings,
    };
    match analyze_source(source, &opts) {
        Ok(analysis) => {
            print_value(&analysis.report(), compact);
            analysis.exit_code()
        }
        Err(err) => {
            eprintln!("arrlab: {err}");
            err.exit_code()
        }
    }
}

fn batch_cmd(dir: &std::path::Path, jobs: Option<usize>, timings: bool) -> i32 {
    if let Some(n) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("arrlab: cannot size thread pool: {e}");
        }
    }
    let paths = match directory_inputs(dir) {
        Ok(p) => p,
        Err(err) => {
            eprintln!("arrlab: {err}");
            return err.exit_code();
        }
    };
    let opts = AnalysisOptions {
        with_timings: timings,
        ..Default::default()
    };
    let outcome = batch_paths(&paths, &opts);
    for entry in &outcome.entries {
        let line = match &entry.outcome {
            Ok(a) => serde_json::json!({
                "path": entry.path,
                "report": a.report(),
            }),
            Err(err) => serde_json::json!({
                "path": entry.path,
                "error": err.to_string(),
                "exit_code": err.exit_code().to_string(),
            }),
        };
        println!("{}", serde_json::to_string(&line).expect("serializable"));
    }
    let summary = batch_summary_json(&outcome);
    println!("{}", serde_json::to_string(&summary).expect("serializable"));
    outcome.exit_code
}

fn catalog_cmd(spec: &str) -> i32 {
    match load_source(spec) {
        Ok(arr) => {
            print_value(&to_input_json(&arr), false);
            0
        }
        Err(err) => {
            eprintln!("arrlab: {err}");
            err.exit_code()
        }
    }
}

fn print_value(v: &Value, compact: bool) {
    let text = if compact {
        serde_json::to_string(v).expect("serializable")
    } else {
        serde_json::to_string_pretty(v).expect("serializable")
    };
    println!("{text}");
}
