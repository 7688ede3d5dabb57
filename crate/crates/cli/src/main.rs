use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phasecov::strategy::Strategy;
use phasecov_cli::config::{FileConfig, Overrides};
use phasecov_cli::sweeps::{self, params};
use phasecov_cli::{CliError, Format, Range, SweepConfig, Table};

#[derive(Parser)]
#[command(name = "phasecov", version, about = "Figure data for phase estimation through a random-axis rotation channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Channel scalars and their partial derivatives at one point
    Scalars {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Optimal single-qubit probes and R1 over a grid
    SingleMap(GridCommand),
    /// Optimal two-qubit probes and R2 over a grid
    TwoMap(GridCommand),
    /// Strategy errors against GHZ size at one point
    GhzCurves {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Optimal GHZ size, minimum error, winner and case label over a grid
    NoptMap(GridCommand),
    /// Hybrid-scheme error for every divisor M of the total qubit count
    Msat {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 120)]
        n_total: usize,
        /// individual or simultaneous (default: whichever wins at this point)
        #[arg(long, value_parser = parse_strategy)]
        strategy: Option<Strategy>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Point {
    #[arg(long, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long, allow_negative_numbers = true)]
    kappa: f64,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<Format>,
    /// worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
    /// JSON file with any of: phi_range, kappa_range, n_max, out, format, threads
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GridCommand {
    /// min:max:count
    #[arg(long, allow_hyphen_values = true)]
    phi_range: Option<Range>,
    /// min:max:count
    #[arg(long, allow_hyphen_values = true)]
    kappa_range: Option<Range>,
    #[command(flatten)]
    common: Common,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    match s {
        "individual" => Ok(Strategy::Individual),
        "simultaneous" => Ok(Strategy::Simultaneous),
        _ => Err(format!("unknown strategy {s:?}")),
    }
}

fn resolve(common: &Common, phi_range: Option<Range>, kappa_range: Option<Range>) -> Result<SweepConfig, CliError> {
    let file = common.config.as_deref().map(FileConfig::load).transpose()?;
    SweepConfig::resolve(
        file,
        Overrides {
            phi_range,
            kappa_range,
            n_max: common.n_max,
            out: common.out.clone(),
            format: common.format,
            threads: common.threads,
        },
    )
}

fn emit(table: &Table, cfg: &SweepConfig) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(cfg.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            table.write(cfg.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn in_pool<T: Send>(cfg: &SweepConfig, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Scalars { point, common } => {
            let cfg = resolve(&common, None, None)?;
            emit(&sweeps::scalars(params(point.phi, point.kappa)?), &cfg)
        }
        Command::SingleMap(g) => {
            let cfg = resolve(&g.common, g.phi_range, g.kappa_range)?;
            emit(&sweeps::single_map(&cfg)?, &cfg)
        }
        Command::TwoMap(g) => {
            let cfg = resolve(&g.common, g.phi_range, g.kappa_range)?;
            emit(&sweeps::two_map(&cfg)?, &cfg)
        }
        Command::NoptMap(g) => {
            let cfg = resolve(&g.common, g.phi_range, g.kappa_range)?;
            emit(&sweeps::nopt_map(&cfg)?, &cfg)
        }
        Command::GhzCurves { point, common } => {
            let cfg = resolve(&common, None, None)?;
            let p = params(point.phi, point.kappa)?;
            let n_max = cfg.n_max;
            emit(&in_pool(&cfg, || sweeps::ghz_curves(p, n_max))??, &cfg)
        }
        Command::Msat {
            point,
            n_total,
            strategy,
            common,
        } => {
            let cfg = resolve(&common, None, None)?;
            if n_total < 1 {
                return Err(CliError::Validation("n-total must be at least 1".into()));
            }
            emit(&sweeps::msat(params(point.phi, point.kappa)?, n_total, strategy)?, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("phasecov: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
