//! `zetax`: weight tables, grid evaluation, zero scans, counts, figure data
//! and the modulus-ratio experiment, all written as CSV.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod cache;
mod commands;
mod error;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "zetax", version, about = "Finite Euler products and model zeta functions")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output CSV path (default: stdout)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a matplotlib script plotting the CSV (needs --out)
    #[arg(long, global = true)]
    pub plot_script: Option<PathBuf>,
    /// Zero cache directory (default: $ZETAX_CACHE_DIR or .zetax-cache)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Rebuild zero caches even if present
    #[arg(long, global = true)]
    pub rebuild_cache: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a Λ_X weight table and export it
    Table {
        #[arg(long)]
        x: f64,
    },
    /// Evaluate a function along a vertical line: t, re, im, abs
    Eval(EvalArgs),
    /// Critical-line zeros: ζ or L caches, or scans of ζ_X, ζ_X* or a combination
    Zeros(ZerosArgs),
    /// Zero counts and the formulas they are compared against
    Count(CountArgs),
    /// Figure datasets near t = 114 (1, 3, 4) and t = 2000 (2)
    Figures(FigureArgs),
    /// Zero-free margins and |ζ_X*|/(2|ζ|) between two consecutive ζ zeros
    Ratio(RatioArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalFunc {
    Zeta,
    Zetax,
    Zetaxstar,
    Px,
    Chi,
    Lx,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub func: EvalFunc,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    #[arg(long)]
    pub t0: f64,
    #[arg(long)]
    pub t1: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, default_value_t = 10.0)]
    pub x: f64,
    #[command(flatten)]
    pub character: CharArgs,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CharArgs {
    /// Modulus for L-functions
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    /// Character index in enumeration order mod q
    #[arg(long = "char", default_value_t = 0)]
    pub index: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZerosFunc {
    Zeta,
    L,
    Zetax,
    Zetaxstar,
    Combo,
}

#[derive(Args, Debug)]
pub struct ZerosArgs {
    #[arg(long, value_enum)]
    pub func: ZerosFunc,
    #[arg(long)]
    pub t0: f64,
    #[arg(long)]
    pub t1: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 10.0)]
    pub x: f64,
    /// Lower height limit for ζ_X scans
    #[arg(long, default_value_t = zetax_core::zetax::C0)]
    pub c0: f64,
    #[command(flatten)]
    pub character: CharArgs,
    /// Combination spec JSON: {"q": .., "terms": [{"b": .., "char_index": ..}]}
    #[arg(long)]
    pub combo: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountFunc {
    Zeta,
    Zetax,
    Combo,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub func: CountFunc,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 10.0)]
    pub x: f64,
    #[arg(long, default_value_t = zetax_core::zetax::C0)]
    pub c0: f64,
    #[arg(long)]
    pub combo: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub which: u8,
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 300.0])]
    pub x: Vec<f64>,
    /// Centre of the window (default 114, or 2000 for figure 2)
    #[arg(long)]
    pub center: Option<f64>,
    #[arg(long, default_value_t = 6.0)]
    pub halfwidth: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Args, Debug)]
pub struct RatioArgs {
    /// Use the gap between γ_i and γ_{i+1} (1-based)
    #[arg(long, default_value_t = 1)]
    pub pair: usize,
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [100.0, 1000.0, 10000.0])]
    pub x: Vec<f64>,
    /// Grid points for the modulus ratio on the interval
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}

pub(crate) fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
