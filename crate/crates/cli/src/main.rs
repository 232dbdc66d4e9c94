mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{Outcome, Report};

#[derive(Parser)]
#[command(
    name = "semistab",
    version,
    about = "Semi-stability of rank-2 extensions on hyperelliptic curves"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Group,
}

#[derive(Args, Clone, Copy)]
pub struct GlobalOpts {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Group {
    /// Curve files.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Riemann–Roch spaces.
    #[command(subcommand)]
    Rr(RrCmd),
    /// Extension classes.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Secant varieties.
    #[command(subcommand)]
    Secant(SecantCmd),
    /// Numerical bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Subcommand)]
pub enum CurveCmd {
    /// Parse and check a curve file.
    Validate { file: String },
}

#[derive(Subcommand)]
pub enum RrCmd {
    /// A basis of L(D).
    Basis {
        curve: String,
        /// Divisor as JSON text or a path to a JSON file.
        #[arg(long)]
        divisor: String,
    },
}

#[derive(Subcommand)]
pub enum ExtCmd {
    /// Determinant of the quadric of a class.
    Det { class_file: String },
    /// Rank certificate for E as an extension of M' by L'.
    Prop1 {
        class_file: String,
        #[arg(long = "L", requires = "m_prime")]
        l_prime: Option<String>,
        #[arg(long = "M", requires = "l_prime")]
        m_prime: Option<String>,
    },
    /// Integer combination with nonzero quadric determinant.
    Search { subspace_file: String },
    /// Exhaustive search for a destabilizing subbundle.
    Destab {
        class_file: String,
        #[arg(long, conflicts_with = "points")]
        max_degree: Option<usize>,
        /// JSON array of points spanning the candidate divisors.
        #[arg(long)]
        points: Option<String>,
        #[arg(long = "L", requires = "m_prime")]
        l_prime: Option<String>,
        #[arg(long = "M", requires = "l_prime")]
        m_prime: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum SecantCmd {
    /// Whether a class lies on the span of an effective divisor of degree at most d.
    Member {
        class_file: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        points: Option<String>,
    },
    /// Random subspaces of classes, searched for a class off the secant variety.
    Experiment {
        curve: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: u64,
    },
}

#[derive(Subcommand)]
pub enum BoundsCmd {
    /// The Clifford range of m = h0(M), and its exact value on a curve.
    M {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        g: Option<i64>,
        /// Compute m on the standard datum of this curve.
        #[arg(long)]
        curve: Option<String>,
    },
    /// delta0 = n - m + g - 1.
    Delta0 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        m: i64,
    },
    /// Lower bound for the k-th successive minimum.
    Theorem2 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        m: i64,
        #[arg(long = "degF")]
        deg_f: i64,
        /// Exact decimal or fraction.
        #[arg(long, allow_hyphen_values = true)]
        c1sq: String,
        #[arg(long)]
        k: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = std::time::Instant::now();
    let (name, outcome) = match cli.command {
        Group::Curve(c) => commands::curve(c),
        Group::Rr(c) => commands::rr(c),
        Group::Ext(c) => commands::ext(c),
        Group::Secant(c) => commands::secant(c, &cli.global),
        Group::Bounds(c) => commands::bounds(c),
    };
    let elapsed = cli.global.timings.then(|| start.elapsed());
    match outcome {
        Ok(Outcome {
            inputs,
            result,
            witnesses,
            not_applicable,
        }) => {
            let report = Report {
                command: name,
                inputs,
                result,
                witnesses,
                elapsed,
            };
            report.emit();
            ExitCode::from(if not_applicable { 2 } else { 0 })
        }
        Err(e) => {
            report::emit_error(&name, &e);
            ExitCode::from(1)
        }
    }
}
