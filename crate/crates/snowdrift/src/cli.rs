//! Argument parsing and dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, Output};
use crate::config::{Overrides, Scenario, ScenarioFile};
use crate::error::{exit_code, EXIT_INVALID};
use crate::report::write_file;

#[derive(Debug, Parser)]
#[command(name = "snowdrift", version, about = "Replicator dynamics of the repeated snowdrift game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub shared: Shared,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// Scenario file (TOML); flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Base payoffs T,R,S,P as integers, decimals or p/q
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub payoffs: Option<String>,
    /// Rounds per encounter
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for the summary and CSV files
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub dt: Option<f64>,
    #[arg(long = "t-max", global = true)]
    pub t_max: Option<f64>,
    #[arg(long = "eps-conv", global = true)]
    pub eps_conv: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sign structure, equilibrium case and convergence regime
    Classify,
    /// Integrate one trajectory
    Simulate {
        /// Start x1,x2,x3,x4 (default: barycenter)
        #[arg(long)]
        x0: Option<String>,
        /// Record every n-th step
        #[arg(long = "sample-every")]
        sample_every: Option<u32>,
    },
    /// All equilibria with Nash and ESS verdicts
    Equilibria,
    /// Tally the limits of random interior starts
    Basins {
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Bisect for points between the basins of x14 and x23
    Separatrix {
        /// Number of random seed pairs
        #[arg(long)]
        samples: Option<usize>,
        /// Bisection steps
        #[arg(long)]
        iters: Option<u32>,
        /// Explicit start in one basin
        #[arg(long = "seed-a")]
        seed_a: Option<String>,
        /// Explicit start in the other basin
        #[arg(long = "seed-b")]
        seed_b: Option<String>,
    },
    /// Metrics at every equilibrium along a grid of R
    Sweep {
        #[arg(long = "r-min", allow_hyphen_values = true)]
        r_min: Option<String>,
        #[arg(long = "r-max", allow_hyphen_values = true)]
        r_max: Option<String>,
        #[arg(long = "r-step")]
        r_step: Option<String>,
        /// Random interior starts simulated per grid point
        #[arg(long)]
        validate: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Simulate { .. } => "simulate",
            Command::Equilibria => "equilibria",
            Command::Basins { .. } => "basins",
            Command::Separatrix { .. } => "separatrix",
            Command::Sweep { .. } => "sweep",
        }
    }
}

fn overrides(cli: &Cli) -> Overrides {
    let s = &cli.shared;
    let mut o = Overrides {
        payoffs: s.payoffs.clone(),
        m: s.m,
        seed: s.seed,
        out: s.out.clone(),
        dt: s.dt,
        t_max: s.t_max,
        eps_conv: s.eps_conv,
        ..Default::default()
    };
    match &cli.command {
        Command::Classify | Command::Equilibria => {}
        Command::Simulate { x0, sample_every } => {
            o.x0 = x0.clone();
            o.sample_every = *sample_every;
        }
        Command::Basins { samples } => o.samples = *samples,
        Command::Separatrix {
            samples,
            iters,
            seed_a,
            seed_b,
        } => {
            o.samples = *samples;
            o.iters = *iters;
            o.seed_a = seed_a.clone();
            o.seed_b = seed_b.clone();
        }
        Command::Sweep {
            r_min,
            r_max,
            r_step,
            validate,
        } => {
            o.r_min = r_min.clone();
            o.r_max = r_max.clone();
            o.r_step = r_step.clone();
            o.validate = *validate;
        }
    }
    o
}

/// Loads the scenario and runs the command.
pub fn execute(cli: &Cli) -> anyhow::Result<(Scenario, Output)> {
    let file = match &cli.shared.config {
        Some(path) => ScenarioFile::load(path)?,
        None => ScenarioFile::default(),
    };
    let mut flags = overrides(cli);
    // the basins and separatrix blocks share `samples`; keep the one for this command
    if flags.samples.is_none() {
        flags.samples = match &cli.command {
            Command::Basins { .. } => file.basins.samples,
            Command::Separatrix { .. } => file.separatrix.samples,
            _ => None,
        };
    }
    let sc = Scenario::resolve(file, flags)?;
    let output = match &cli.command {
        Command::Classify => commands::classify::run(&sc),
        Command::Simulate { .. } => commands::simulate::run(&sc),
        Command::Equilibria => commands::equilibria::run(&sc),
        Command::Basins { .. } => commands::basins::run(&sc),
        Command::Separatrix { .. } => commands::separatrix::run(&sc),
        Command::Sweep { .. } => commands::sweep::run(&sc),
    }?;
    Ok((sc, output))
}

/// Runs the parsed command, writes its outputs and returns the exit code.
pub fn main_with(cli: Cli) -> u8 {
    match execute(&cli).and_then(|(sc, out)| emit(&cli, &sc, out)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code(&err)
        }
    }
}

fn emit(cli: &Cli, sc: &Scenario, out: Output) -> anyhow::Result<u8> {
    if let Some(dir) = &sc.out {
        write_file(dir, &format!("{}.json", cli.command.name()), out.summary.as_bytes())?;
        for (name, bytes) in &out.files {
            write_file(dir, name, bytes)?;
        }
    }
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.summary.as_bytes())?;
    stdout.flush()?;
    let code = out.outcome.code();
    if code != 0 {
        eprintln!("unresolved: at least one run did not reach a catalog entry");
    }
    Ok(code)
}

/// Parses arguments, mapping usage errors to the validation exit code.
pub fn parse() -> Result<Cli, u8> {
    Cli::try_parse().map_err(|e| {
        let _ = e.print();
        if e.use_stderr() {
            EXIT_INVALID
        } else {
            0
        }
    })
}
