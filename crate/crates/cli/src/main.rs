use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gkm_cli::{Outcome, EXIT_INPUT};

/// Validation, transport search, cohomology and rigidity for GKM graphs given as JSON files.
#[derive(Parser)]
#[command(name = "gkm", version)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Suppress diagnostics on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms and report every failure.
    Validate { graph: PathBuf },
    /// Search for a parallel transport.
    Transport { graph: PathBuf },
    /// Integer bases of the graded pieces up to a cohomological degree.
    Cohomology {
        graph: PathBuf,
        /// Even cohomological degree; defaults to twice the valence.
        #[arg(long)]
        max_cohdeg: Option<u32>,
    },
    /// Thom class of every vertex.
    Thom { graph: PathBuf },
    /// Divisibility lemmas, witness identity and pair characterization over all vertex pairs.
    Audit { graph: PathBuf },
    /// Direct isomorphism search from the first graph to the second.
    Iso { first: PathBuf, second: PathBuf },
    /// Isomorphism decided from the two cohomology rings.
    Rigidity { first: PathBuf, second: PathBuf },
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { graph } => gkm_cli::cmd_validate(&graph),
        Command::Transport { graph } => gkm_cli::cmd_transport(&graph),
        Command::Cohomology { graph, max_cohdeg } => gkm_cli::cmd_cohomology(&graph, max_cohdeg),
        Command::Thom { graph } => gkm_cli::cmd_thom(&graph),
        Command::Audit { graph } => gkm_cli::cmd_audit(&graph),
        Command::Iso { first, second } => gkm_cli::cmd_iso(&first, &second),
        Command::Rigidity { first, second } => gkm_cli::cmd_rigidity(&first, &second),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let outcome = run(cli.command);
    if !cli.quiet {
        for d in &outcome.diagnostics {
            eprintln!("gkm: {d}");
        }
    }
    let mut code = outcome.code;
    if let Some(text) = outcome.rendered() {
        match &cli.output {
            Some(path) => {
                if let Err(e) = fs::write(path, text) {
                    if !cli.quiet {
                        eprintln!("gkm: {}: {e}", path.display());
                    }
                    code = EXIT_INPUT;
                }
            }
            None => print!("{text}"),
        }
    }
    ExitCode::from(code as u8)
}
