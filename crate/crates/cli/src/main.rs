use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use powsum_cli::commands::{bounds, compute, search, sieve, tables};
use powsum_cli::{prove, CliError, Overrides, Settings};

#[derive(Parser)]
#[command(name = "powsum", version, about = "Perfect powers among sums of consecutive k-th powers")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// TOML file presetting any of these options; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Decimal digits for directed-rounding arithmetic.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Sieve checkpoint file (`sieve`) or directory (`prove`).
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Write a checkpoint after this many examined primes.
    #[arg(long, global = true)]
    checkpoint_every: Option<u64>,
    /// Candidate primes examined per sieve run.
    #[arg(long, global = true)]
    max_primes: Option<u64>,
    /// Largest lcm modulus the sieve may reach; accepts 1e9 notation.
    #[arg(long, global = true, value_parser = parse_count)]
    max_modulus: Option<u64>,
    /// Largest n sieved by `prove` at desk scale.
    #[arg(long, global = true)]
    n_ceiling: Option<u64>,
    /// Largest k in direct searches.
    #[arg(long, global = true)]
    k_max: Option<u32>,
    /// Largest k in the small-y segment of `prove` at desk scale.
    #[arg(long, global = true, value_parser = parse_count)]
    small_y_k_ceiling: Option<u64>,
    /// Refuse outputs with more digits than this.
    #[arg(long, global = true, value_parser = parse_count)]
    max_digits: Option<u64>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            json: self.json.then_some(true),
            precision: self.precision,
            checkpoint: self.checkpoint.clone(),
            checkpoint_every: self.checkpoint_every,
            max_primes: self.max_primes,
            max_modulus: self.max_modulus,
            n_ceiling: self.n_ceiling,
            k_max: self.k_max,
            small_y_k_ceiling: self.small_y_k_ceiling,
            max_digits: self.max_digits,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print T_k(x) and S_k(x) exactly with a factor digest.
    Compute {
        x: u64,
        k: u32,
        /// Skip the perfect-power scan over n in [2, 12].
        #[arg(long)]
        no_scan: bool,
    },
    /// Exponent bounds from valuations, or certified linear-forms bounds.
    Bounds { x: u64, k: Option<u32> },
    /// Run the congruence sieve for one (x, n).
    Sieve { x: u64, n: u64 },
    /// Scan T_k(x) for perfect powers.
    Search {
        #[arg(long, default_value_t = 2)]
        x_min: u64,
        #[arg(long, default_value_t = 13)]
        x_max: u64,
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
    /// Recompute the tables of constants and bounds and compare with the reference values.
    Tables {
        /// Also write tables.json and tables.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and run the proof plan for one x.
    Prove {
        x: u64,
        /// Use the full ranges the bounds require instead of the desk-scale ceilings.
        #[arg(long)]
        full_scale: bool,
        /// Run full-scale plans that are declared infeasible.
        #[arg(long)]
        force: bool,
    },
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a count"))?;
    if v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 {
        Ok(v as u64)
    } else {
        Err(format!("'{s}' is not a non-negative integer"))
    }
}

fn run(cli: Cli) -> Result<(powsum_cli::RunReport, bool), CliError> {
    let mut settings = Settings::default();
    if let Some(path) = &cli.common.config {
        settings.apply(&Overrides::from_file(path)?);
    }
    settings.apply(&cli.common.overrides());
    settings.validate()?;
    let s = &settings;
    let report = match cli.command {
        Command::Compute { x, k, no_scan } => compute::cmd_compute(x, k, !no_scan, s),
        Command::Bounds { x, k } => bounds::cmd_bounds(x, k, s),
        Command::Sieve { x, n } => sieve::cmd_sieve(x, n, s),
        Command::Search { x_min, x_max, n_min, n_max } => search::cmd_search(search::SearchRange {
            x_min,
            x_max,
            k_max: s.k_max,
            n_min,
            n_max,
        }),
        Command::Tables { out } => tables::cmd_tables(out.as_deref(), s),
        Command::Prove { x, full_scale, force } => prove::cmd_prove(x, full_scale, force, s),
    }?;
    Ok((report, s.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json)) => {
            let text = if json { report.to_json() + "\n" } else { report.render_text() };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("powsum: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
