mod commands;
mod output;
mod profiles;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "gausstele",
    version,
    about = "Twin-beam entanglement thresholds, teleportation fidelity, and direct-transmission trade-offs in squeezed-thermal channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Separability threshold times and the squeezing penalty over a bath grid
    Threshold(ThresholdArgs),
    /// Average teleportation fidelity along the channel
    Fidelity(FidelityArgs),
    /// Teleportation versus direct transmission of an amplitude ensemble
    Compare(CompareArgs),
    /// Cross-check every closed form against the numerical suite
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Csv,
    Json,
}

/// Input squeezing policy for fidelity columns.
#[derive(Copy, Clone, PartialEq)]
enum ZetaPolicy {
    Max,
    Coherent,
    Fixed(f64),
}

impl FromStr for ZetaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "max" => Ok(Self::Max),
            "coherent" => Ok(Self::Coherent),
            _ => s
                .parse::<f64>()
                .map(Self::Fixed)
                .map_err(|_| format!("zeta must be 'max', 'coherent', or a number, got '{s}'")),
        }
    }
}

impl fmt::Display for ZetaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Max => write!(f, "max"),
            Self::Coherent => write!(f, "coherent"),
            Self::Fixed(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Args)]
struct ThresholdArgs {
    /// Named profile to start from (default: fig1)
    #[arg(long)]
    preset: Option<String>,
    /// Twin-beam squeezing values, comma separated
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<f64>>,
    /// Bath thermal occupancies, comma separated
    #[arg(long, value_delimiter = ',')]
    nth: Option<Vec<f64>>,
    /// Bath squeezing sweep: MIN MAX STEPS
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEPS"])]
    ns_range: Option<Vec<f64>>,
    /// Decay rate; time columns are reported in units where this is 1
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct FidelityArgs {
    /// Named profile to start from (default: fig2)
    #[arg(long)]
    preset: Option<String>,
    /// Twin-beam squeezing
    #[arg(long)]
    lambda: Option<f64>,
    /// Bath thermal occupancy
    #[arg(long)]
    nth: Option<f64>,
    /// Bath squeezing values, comma separated
    #[arg(long, value_delimiter = ',')]
    ns: Option<Vec<f64>>,
    /// Elapsed-time sweep: MIN MAX STEPS
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEPS"])]
    gt_range: Option<Vec<f64>>,
    /// Input squeezing: max | coherent | <number>
    #[arg(long)]
    zeta: Option<ZetaPolicy>,
    /// Decay rate; time columns are reported in units where this is 1
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    /// Named profile to start from (default: fig4)
    #[arg(long)]
    preset: Option<String>,
    /// Twin-beam squeezing
    #[arg(long)]
    lambda: Option<f64>,
    /// Bath thermal occupancy (overrides the profile panels, with --ns)
    #[arg(long)]
    nth: Option<f64>,
    /// Bath squeezing (overrides the profile panels, with --nth)
    #[arg(long)]
    ns: Option<f64>,
    /// Ensemble widths, comma separated
    #[arg(long, value_delimiter = ',')]
    delta_sq: Option<Vec<f64>>,
    /// Select a single profile panel by index
    #[arg(long)]
    panel: Option<usize>,
    /// Elapsed-time sweep: MIN MAX STEPS
    #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEPS"])]
    gt_range: Option<Vec<f64>>,
    /// Input squeezing: max | coherent | <number>
    #[arg(long)]
    zeta: Option<ZetaPolicy>,
    /// Decay rate; time columns are reported in units where this is 1
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tuples per check = 40 x this factor
    #[arg(long, default_value_t = 5)]
    grid_size: usize,
    #[arg(long, hide = true, default_value_t = 0.0)]
    inject_perturb: f64,
}

/// A bad flag or profile value; reported on stderr with exit code 2.
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Threshold(args) => commands::run_threshold(args),
        Command::Fidelity(args) => commands::run_fidelity(args),
        Command::Compare(args) => commands::run_compare(args),
        Command::Verify(args) => commands::run_verify(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
