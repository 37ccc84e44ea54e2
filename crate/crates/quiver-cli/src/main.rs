//! Batch verifier for the combinatorics of quiver coefficients.
//!
//! Subcommands: `coeffs` prints the tensor element of a path over a
//! diagram, `factor-seqs` enumerates factor sequences with their shape
//! census, `verify-conj1` compares the two, `fuzz-conj2` stress-tests the
//! pair involution against the factor-sequence criterion on seeded random
//! instances, and `involution` applies the involution to one pair.
//!
//! Exit codes: 0 success, 1 mismatch or counterexample, 2 invalid rank
//! conditions or unreadable input, 3 invalid path, 4 involution
//! precondition failure.

mod commands;
mod fuzz;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "quiver-verify", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DiagramArgs {
    /// Rank-condition file: `{"n": 3, "rows": [[1,4,3,3],[1,2,2],[1,1],[0]]}`
    #[arg(long, conflicts_with = "rect_file")]
    rank_file: Option<String>,
    /// Rectangle-diagram file: `{"n": 3, "rects": {"0,1": {"rows":3,"cols":0}, ...}}`
    #[arg(long)]
    rect_file: Option<String>,
}

#[derive(Args, Clone)]
struct FillingArgs {
    /// Filling of the rectangles: canonical | random | file:PATH
    #[arg(long, default_value = "canonical")]
    filling: String,
    /// Seed for random fillings and sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of P_gamma for a path over a diagram.
    Coeffs {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Path word over D, U, H (H = horizontal), e.g. HHH or DDDUUU
        #[arg(long)]
        path: String,
        /// Write output to a file instead of standard output
        #[arg(long)]
        out: Option<String>,
    },
    /// Enumerate the factor sequences of a filled diagram with their census.
    FactorSeqs {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        path: String,
        #[command(flatten)]
        filling: FillingArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check that coefficients equal factor-sequence counts per shape tuple.
    VerifyConj1 {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        path: String,
        #[command(flatten)]
        filling: FillingArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Fuzz the pair involution against the factor-sequence criterion.
    FuzzConj2 {
        /// Number of seeded trials
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Largest number of rectangle rows (n) per trial
        #[arg(long, default_value_t = 5)]
        max_rows: usize,
        /// Largest rectangle side length per trial
        #[arg(long, default_value_t = 2)]
        max_dim: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSONL trial stream to a file instead of standard output
        #[arg(long)]
        out: Option<String>,
    },
    /// Apply the pair involution to {"q": tableau, "p": tableau, "a": int}.
    Involution {
        /// Pair file
        #[arg(long)]
        pair_file: String,
        /// Print each intermediate diagram of the exchange loop
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Coeffs { diagram, path, out } => commands::cmd_coeffs(&diagram, &path, out.as_deref()),
        Command::FactorSeqs {
            diagram,
            path,
            filling,
            out,
        } => commands::cmd_factor_seqs(&diagram, &path, &filling, out.as_deref()),
        Command::VerifyConj1 {
            diagram,
            path,
            filling,
            out,
        } => commands::cmd_verify_conj1(&diagram, &path, &filling, out.as_deref()),
        Command::FuzzConj2 {
            trials,
            max_rows,
            max_dim,
            seed,
            out,
        } => fuzz::cmd_fuzz_conj2(trials, max_rows, max_dim, seed, out.as_deref()),
        Command::Involution { pair_file, trace, out } => commands::cmd_involution(&pair_file, trace, out.as_deref()),
    };
    ExitCode::from(code)
}
