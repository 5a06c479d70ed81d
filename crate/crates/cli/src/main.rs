//! `pds`: construct, verify and sample eigenmodes of the Poincaré dodecahedral space.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "pds", version, about = "Exact Laplace eigenmodes of S^3/I*")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Group {
    /// The 60 rotations acting on REAL3 polynomials.
    I,
    /// The 120 unit quaternions acting on CPLX polynomials.
    Istar,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the invariant eigenspaces.
    Dim {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["l", "table"])]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "table")]
        l: Option<i64>,
        /// Print a CSV table `k,l,dimV,dimK` for l = 0..=MAX.
        #[arg(long, value_name = "MAX", allow_hyphen_values = true)]
        table: Option<i64>,
    },
    /// Build and verify the invariant modes of degree l on S^2 and k = 2l on S^3.
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i64>,
        /// Orbifold configuration JSON; replaces the enumerated basis.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Accept corner counts above their caps.
        #[arg(long)]
        keep_overfull: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pull a REAL3 polynomial back along the Hopf map.
    Lift {
        #[arg(long)]
        mode: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the twist operators n times (raise for n > 0, lower for n < 0).
    Twist {
        #[arg(long)]
        mode: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report degree, harmonicity, twist and group invariance of a polynomial.
    Verify {
        #[arg(long)]
        mode: PathBuf,
        #[arg(long, value_enum)]
        group: Option<Group>,
    },
    /// Evaluate a polynomial at seeded random points of S^3 (or S^2).
    Sample {
        #[arg(long)]
        mode: PathBuf,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sample the Hopf circle through `alpha0,beta0` instead, e.g. `0.6,0.8i`.
        #[arg(long, value_name = "ALPHA0,BETA0")]
        circle: Option<String>,
        /// Divide values by their root mean square over the sample.
        #[arg(long)]
        normalize: bool,
    },
    /// Rank of the group-averaged harmonic lattice, compared with the formula.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Use the floating SVD rank even where the exact rank is available.
        #[arg(long)]
        float: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dim { k, l, table } => commands::dim(k, l, table),
        Command::Construct {
            l,
            config,
            keep_overfull,
            out,
        } => commands::construct(l, config.as_deref(), keep_overfull, &out),
        Command::Lift { mode, out } => commands::lift(&mode, out.as_deref()),
        Command::Twist { mode, n, out } => commands::twist(&mode, n, out.as_deref()),
        Command::Verify { mode, group } => commands::verify(&mode, group),
        Command::Sample {
            mode,
            n,
            seed,
            out,
            circle,
            normalize,
        } => commands::sample(&mode, n, seed, out.as_deref(), circle.as_deref(), normalize),
        Command::Oracle { k, float } => commands::oracle(k, float),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
