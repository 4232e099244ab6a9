use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torbiv::{commands, CliError, Output};

/// Degeneracy loci of equivariant bivector fields on smooth toric varieties.
///
/// Exit status: 0 on success, 1 when the input fails a mathematical
/// requirement (invalid fan, irregular field, failed certificate), 2 on
/// unreadable input or bad arguments.
#[derive(Parser)]
#[command(name = "torbiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check smoothness and pairwise intersections, report completeness.
    Validate {
        fan: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Rank on every orbit and the degeneracy loci X<=2k.
    ///
    /// Ranks are cross-checked by sampling; TORBIV_SEED picks the sample (default 0).
    Strata {
        fan: PathBuf,
        bivector: PathBuf,
        #[arg(long)]
        json: bool,
        /// Report a single orbit, given by comma-separated ray indices.
        #[arg(long, value_name = "RAYS", allow_hyphen_values = true)]
        orbit: Option<String>,
    },
    /// Check every clause of the degeneracy-locus theorem on this field.
    Certify {
        fan: PathBuf,
        bivector: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the field is a Poisson structure.
    Poisson { bivector: PathBuf },
    /// Print a built-in fan as a fan document.
    Gallery {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
    /// Print the field's matrix B and multidegree beta in one chart.
    Transition {
        fan: PathBuf,
        bivector: PathBuf,
        /// Maximal cone index.
        #[arg(long)]
        chart: usize,
    },
    /// Print a random nonzero regular field on the fan as a bivector document.
    Random {
        fan: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multidegrees are drawn from [-radius, radius]^n.
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Validate { fan, json } => commands::validate(&fan, json),
        Command::Strata { fan, bivector, json, orbit } => {
            let seed = commands::seed_from_env(std::env::var("TORBIV_SEED").ok().as_deref())?;
            let orbit = orbit.as_deref().map(commands::parse_orbit).transpose()?;
            commands::strata(&fan, &bivector, json, orbit, seed)
        }
        Command::Certify { fan, bivector, json } => commands::certify(&fan, &bivector, json),
        Command::Poisson { bivector } => commands::poisson(&bivector),
        Command::Gallery { name, params } => commands::gallery(&name, &params),
        Command::Transition { fan, bivector, chart } => commands::transition(&fan, &bivector, chart),
        Command::Random { fan, seed, radius } => commands::random(&fan, seed, radius),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
