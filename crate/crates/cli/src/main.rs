mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser)]
#[command(name = "folia", version, about = "Exact checks for foliation, orbit and root-system computations")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// p(n-4) against e^(2 sqrt(n-4))/14.
    ComponentsLb {
        n: i64,
        /// Check every value from n up to this one.
        #[arg(long)]
        to: Option<i64>,
    },
    /// Singular-locus dimensions along the pencil alpha*J + beta*H.
    PencilCheck {
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Eligibility table of Springer-fibre bounds.
    RootBounds {
        #[arg(long, default_value_t = 8)]
        rank_cap: usize,
    },
    /// The closed relative form x dy + y dx + t dz and its Fitting chains.
    Counterexample,
    /// Nilpotent orbit of the plane spanned by two matrices (JSON file).
    Orbit { file: PathBuf },
    /// Z1, B1, H1 of a plane in sl_n.
    Cohomology {
        /// Use span(e, h) of the sl2-triple of this partition.
        #[arg(long, conflicts_with = "matrices")]
        partition: Option<String>,
        /// JSON file with two matrices.
        #[arg(long)]
        matrices: Option<PathBuf>,
    },
    /// Decomposability, Kupka data and kernel involutivity of a JSON form.
    FormsCheck { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::ComponentsLb { n, to } => commands::components_lb(*n, *to),
        Command::PencilCheck { partition, samples } => commands::pencil_check(partition, *samples, cli.seed),
        Command::RootBounds { rank_cap } => commands::root_bounds(*rank_cap),
        Command::Counterexample => commands::counterexample_cmd(),
        Command::Orbit { file } => commands::orbit(file),
        Command::Cohomology { partition, matrices } => commands::cohomology(partition.as_deref(), matrices.as_deref()),
        Command::FormsCheck { file } => commands::forms_check(file),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Text => {
            print!("{}", report.to_text());
            eprintln!("took {:.2}s", start.elapsed().as_secs_f64());
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
