use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use machroe::cases::CASE_GROUPS;
use machroe::config::{parse_config, Overrides};
use machroe::grid::Order;
use machroe::roe::{IndicatorScaling, ViscosityMode};
use machroe::runner::{execute, sweep, sweep_table, RunRequest};
use machroe::verify::quick_checks;
use machroe::Error;

/// Roe-type finite-volume Euler solver with Mach-consistent viscosity models.
#[derive(Parser, Debug)]
#[command(name = "machroe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one case.
    Run(RunArgs),
    /// Run a case for several modes and orders and print a comparison table.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated viscosity modes.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        modes: Vec<String>,
        /// Comma-separated orders.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        orders: Vec<u8>,
    },
    /// List the available test cases.
    ListCases,
    /// Run fast self-checks of the flux.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    case: Option<String>,
    /// standard, low_diss, high_diss, blend_geo or blend_arith.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    order: Option<u8>,
    #[arg(long)]
    phi: Option<f64>,
    /// Constant blend weight; switches the shock indicator off.
    #[arg(long)]
    beta: Option<f64>,
    /// Harten width as a fraction of the sound speed; 0 disables the fix.
    #[arg(long)]
    delta: Option<f64>,
    /// dimensional_min_c (default), dimensional, min_side or roe_mean.
    #[arg(long)]
    indicator_scaling: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    tend: Option<f64>,
    /// Key-value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    outdir: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> Result<Overrides, Error> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_config(&text)?
            }
            None => Overrides::default(),
        };
        let cli = Overrides {
            case: self.case.clone(),
            mode: self.mode.as_deref().map(str::parse::<ViscosityMode>).transpose()?,
            order: self.order.map(Order::from_u8).transpose()?,
            phi: self.phi,
            delta_frac: self.delta,
            beta_fixed: self.beta,
            indicator: self.beta.map(|_| false),
            indicator_scaling: self
                .indicator_scaling
                .as_deref()
                .map(str::parse::<IndicatorScaling>)
                .transpose()?,
            cfl: self.cfl,
            t_end: self.tend,
            seed: self.seed,
            nx: self.nx,
            ny: self.ny,
            noise: self.noise,
            outdir: self.outdir.clone(),
            ..Overrides::default()
        };
        let mut merged = file.merge(cli);
        // a fixed β from the file must not be contradicted by a default
        if self.beta.is_none() && merged.beta_fixed.is_some() && merged.indicator.is_none() {
            merged.indicator = Some(false);
        }
        if merged.outdir.is_none() {
            merged.outdir = Some(PathBuf::from("."));
        }
        Ok(merged)
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_ABORT: u8 = 2;

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::ListCases => {
            for (title, names) in CASE_GROUPS {
                println!("{:<24} {}", title, names.join(" "));
            }
            Ok(0)
        }
        Command::Verify { seed } => {
            let checks = quick_checks(seed);
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Ok(if checks.iter().all(|c| c.passed) { 0 } else { EXIT_USAGE })
        }
        Command::Run(args) => {
            let report = execute(&RunRequest::resolve(&args.overrides()?)?)?;
            println!("{}", report.summary());
            Ok(if report.outcome.is_completed() { 0 } else { EXIT_ABORT })
        }
        Command::Sweep { run, modes, orders } => {
            let modes = modes
                .iter()
                .map(|m| m.parse::<ViscosityMode>())
                .collect::<Result<Vec<_>, _>>()?;
            let orders = orders.into_iter().map(Order::from_u8).collect::<Result<Vec<_>, _>>()?;
            let reports = sweep(&run.overrides()?, &modes, &orders)?;
            for r in &reports {
                println!("{}", r.summary());
            }
            print!("{}", sweep_table(&reports));
            Ok(if reports.iter().all(|r| r.outcome.is_completed()) { 0 } else { EXIT_ABORT })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
