#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Loaded;

/// Exit 0 success, 2 hypothesis failure, 3 numerical failure, 4 config error.
#[derive(Debug)]
pub enum Failure {
    Hypothesis(String),
    Numerical(String),
    Config(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Hypothesis(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Config(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Hypothesis(m) => write!(f, "hypothesis failure: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Config(m) => write!(f, "config error: {m}"),
        }
    }
}

impl From<lichnerowicz::Error> for Failure {
    fn from(e: lichnerowicz::Error) -> Self {
        use lichnerowicz::Error::*;
        match e {
            Hypothesis(_) => Failure::Hypothesis(e.to_string()),
            Numerical(_) => Failure::Numerical(e.to_string()),
            Domain(_) | Invalid(_) | Io(_) => Failure::Config(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "lichlab", version, about = "Numerical laboratory for Δu + au − bu^σ + cu^τ = 0 on radial model manifolds")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Artifact directory (overrides the config's "out").
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid intervals (overrides model.grid_n).
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Warping, volume growth and Green kernel of the model.
    Model,
    /// λ₁ of Δ + a on increasing balls.
    Spectrum,
    /// Dirichlet problem on the ball between constant barriers.
    Solve,
    /// Maximal solution along an exhaustion by balls.
    Maximal,
    /// A priori bounds checked against a solution.
    Bounds,
    /// Oscillation of β'' + (1/(4t²) + h)β = 0.
    Oscillate,
    /// Finite-index barrier built from the Green kernel.
    Barrier,
    /// Comparison of two ordered Dirichlet solutions.
    Compare,
    /// Theorem-by-theorem hypothesis predicates.
    Hypotheses,
    /// SVG line plot of r,u or t,beta CSVs.
    Plot {
        files: Vec<PathBuf>,
        #[arg(long)]
        logx: bool,
        #[arg(long)]
        logy: bool,
        /// Overlay the fitted C √(t log t) log log t envelope (t,beta data).
        #[arg(long)]
        envelope: bool,
    },
    /// Run the acceptance suite and print a pass/fail table.
    Demo,
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Command::Plot { files, logx, logy, envelope } = &cli.command {
        let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("plot.svg"));
        plot::plot(files, &out, &plot::PlotOptions { logx: *logx, logy: *logy, envelope: *envelope })?;
        if !cli.quiet {
            println!("wrote {}", out.display());
        }
        return Ok(());
    }
    let mut loaded = match &cli.config {
        Some(p) => Loaded::from_path(p)?,
        None => Loaded::empty(),
    };
    if let Some(n) = cli.grid_n {
        if n < 8 {
            return Err(Failure::Config(format!("--grid-n {n} is below the minimum of 8")));
        }
        if let Some(m) = loaded.config.model.as_mut() {
            m.grid_n = Some(n);
        }
    }
    if cli.seed.is_some() {
        loaded.config.seed = cli.seed;
    }
    let name = match &cli.command {
        Command::Model => "model",
        Command::Spectrum => "spectrum",
        Command::Solve => "solve",
        Command::Maximal => "maximal",
        Command::Bounds => "bounds",
        Command::Oscillate => "oscillate",
        Command::Barrier => "barrier",
        Command::Compare => "compare",
        Command::Hypotheses => "hypotheses",
        Command::Demo => "demo",
        Command::Plot { .. } => unreachable!(),
    };
    let dir = cli
        .out
        .clone()
        .or_else(|| loaded.config.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out").join(name));
    let ctx = commands::Context { loaded: &loaded, dir, name, quiet: cli.quiet, grid_n: cli.grid_n };
    match cli.command {
        Command::Model => commands::model(&ctx),
        Command::Spectrum => commands::spectrum(&ctx),
        Command::Solve => commands::solve(&ctx),
        Command::Maximal => commands::maximal(&ctx),
        Command::Bounds => commands::bounds(&ctx),
        Command::Oscillate => commands::oscillate(&ctx),
        Command::Barrier => commands::barrier(&ctx),
        Command::Compare => commands::compare(&ctx),
        Command::Hypotheses => commands::hypotheses(&ctx),
        Command::Demo => commands::demo(&ctx),
        Command::Plot { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lichlab: {e}");
            ExitCode::from(e.code())
        }
    }
}
