//! `pdcrank`: compute series and crank tables, and run the verification suite.

mod artifacts;
mod cache;
mod render;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pdcrank_core::verify::{CheckId, Workbench};

use crate::artifacts::{compute_table, parse_statistic, SeriesId};
use crate::cache::Cache;
use crate::render::Format;

#[derive(Parser)]
#[command(name = "pdcrank", version, about = "pd-crank verification workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Truncation order N: coefficients and rows 0..=N.
    #[arg(short = 'N', long, global = true, default_value_t = 100)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cache directory [default: $CRANK_CACHE_DIR, else the user data dir]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a series: PD, PD2, RESID2, RESID3, GFUN1 <k>, GFUN2 <k>, MAINF2, M201.
    Series { id: String, param: Option<u32> },
    /// Print a crank table: crank, kcrank <k>, pdcrank.
    Table { statistic: String, k: Option<u32> },
    /// Run verification checks.
    Verify {
        /// Check ids, e.g. T24 I3 OMEGA.
        #[arg(conflicts_with = "all")]
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Write one JSON record per check to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Concurrent checks [default: available parallelism]
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Io(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| Failure::Io(format!("writing output: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = cli.global;
    let cache = if g.no_cache {
        Cache::disabled()
    } else {
        Cache::resolve(g.cache_dir)
    };
    match cli.command {
        Command::Series { id, param } => {
            let id = SeriesId::parse(&id, param).map_err(Failure::Usage)?;
            let key = id.to_string();
            let s = cache.series(&key, g.order, || id.compute(g.order));
            emit(&render::series(&key, &s, g.format))
        }
        Command::Table { statistic, k } => {
            let statistic = parse_statistic(&statistic, k).map_err(Failure::Usage)?;
            let t = cache.table(statistic, g.order, || compute_table(statistic, g.order));
            emit(&render::table(&t, g.format))
        }
        Command::Verify {
            ids,
            all,
            report,
            jobs,
        } => {
            let ids: Vec<CheckId> = if all {
                CheckId::ALL.to_vec()
            } else if ids.is_empty() {
                return Err(Failure::Usage("give check ids or --all".into()));
            } else {
                ids.iter()
                    .map(|s| s.parse())
                    .collect::<Result<_, _>>()
                    .map_err(|e: pdcrank_core::Error| Failure::Usage(e.to_string()))?
            };
            let jobs = jobs
                .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
                .unwrap_or(1);
            let reports = Workbench::new(g.order).run_many(&ids, jobs);
            if let Some(path) = report {
                std::fs::write(&path, render::json_lines(&reports))
                    .map_err(|e| Failure::Io(format!("writing {}: {e}", path.display())))?;
            }
            emit(&render::reports(&reports, g.format))?;
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}
