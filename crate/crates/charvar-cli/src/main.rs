//! `charvar` — characteristic varieties of complex hyperplane arrangements.
//!
//! Exit codes: 0 success (or certified true / nonempty result), 1 certified
//! false or empty result, 2 usage or input error, 3 budget exceeded.

mod commands;
mod io;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use charvar_core::depth::DEFAULT_SCAN_BUDGET;
use charvar_core::error::Error;
use charvar_core::resonance::DEFAULT_PARTITION_BUDGET;
use charvar_core::subarr::DEFAULT_MATCH_BUDGET;

use commands::{Ctx, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "charvar",
    version,
    about = "Exact characteristic varieties of complex hyperplane arrangements",
    propagate_version = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,

    /// Worker threads (overrides CHARVAR_THREADS; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized prescreens.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Finite-field prescreen trials per rank check.
    #[arg(long, global = true, default_value_t = 3)]
    trials: u32,

    /// Prime for the finite-field prescreen (must be 1 mod the torsion order).
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Override every enumeration budget (partition, match and scan) at once.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the planes and codimension-2 flats of an arrangement.
    Poset { arrangement: PathBuf },

    /// Compute a wiring diagram (braided line picture) of the deconed arrangement.
    Wiring {
        arrangement: PathBuf,
        /// Plane to decone at (1-based index or label).
        #[arg(long)]
        decone: Option<String>,
        /// Integer chart "a,b,c;d,e,f;g,h,i" applied before deconing.
        #[arg(long)]
        chart: Option<String>,
        /// Sweep direction "sx,sy" for the line picture.
        #[arg(long)]
        direction: Option<String>,
        /// Group the lines into parallel fiber classes.
        #[arg(long)]
        fibered: bool,
    },

    /// Compute a finite presentation of the fundamental group of the complement.
    Present {
        arrangement: PathBuf,
        #[arg(long)]
        decone: Option<String>,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long)]
        direction: Option<String>,
        /// Use the semidirect-product (free-by-free) presentation.
        #[arg(long)]
        fibered: bool,
    },

    /// Compute the Alexander matrix of the deconed arrangement.
    Alexmat {
        arrangement: PathBuf,
        #[arg(long)]
        decone: Option<String>,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long)]
        direction: Option<String>,
        /// Use the block form coming from the fibered presentation.
        #[arg(long)]
        block: bool,
    },

    /// List the resonance components of depth >= d.
    Resonance {
        arrangement: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },

    /// Exact depth of a single character (rotation-number CSV).
    Depth {
        arrangement: PathBuf,
        /// Character as comma-separated rotation numbers, e.g. "0,1/2,1/2".
        #[arg(long = "char")]
        character: String,
    },

    /// Certify whether a torus coset lies in the depth-d jump locus.
    Certify {
        arrangement: PathBuf,
        coset: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },

    /// Intersect two torus cosets; prints the connected pieces.
    Intersect { a: PathBuf, b: PathBuf },

    /// Search for translated positive-dimensional components of the jump locus.
    SearchTranslated {
        arrangement: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Largest torsion order of the translation to try.
        #[arg(long, default_value_t = 2)]
        max_order: u32,
        /// Pattern arrangement file (defaults to the built-in deletion pattern).
        #[arg(long, requires = "pattern_coset")]
        pattern: Option<PathBuf>,
        /// Coset file giving the pattern's translated component.
        #[arg(long, requires = "pattern")]
        pattern_coset: Option<PathBuf>,
    },

    /// Evaluate depth over the finite subgroup generated by given characters
    /// and by the torsion points of given cosets.
    Scan {
        arrangement: PathBuf,
        /// Generating characters (rotation CSV; may repeat).
        #[arg(long = "char")]
        chars: Vec<String>,
        /// Coset files whose torsion points are added to the generators.
        #[arg(long)]
        on: Vec<PathBuf>,
        /// Torsion order bound for points taken from the cosets.
        #[arg(long, default_value_t = 2)]
        orders: u32,
        /// Report characters of depth >= d.
        #[arg(long, default_value_t = 1)]
        d: usize,
    },

    /// Certified components of the depth-d jump locus and their meeting points.
    Report {
        arrangement: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Torsion order bound for the translated-component search.
        #[arg(long, default_value_t = 2)]
        max_order: u32,
        /// Extra characters to verify and include (rotation CSV; may repeat).
        #[arg(long = "point")]
        points: Vec<String>,
    },

    /// Re-run a built-in example and diff every computed value against the
    /// recorded expectations; nonzero exit on any mismatch.
    Reproduce {
        /// One of: a3, nonfano, b3, deleted-b3, grunbaum, falk, ziegler.
        id: String,
    },
}

fn thread_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("CHARVAR_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(n) = thread_count(cli.threads) {
        let n = n.max(1);
        // Ignore the error if a pool is already installed (e.g. under tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let ctx = Ctx {
        format,
        seed: cli.seed,
        trials: cli.trials.max(1),
        prime: cli.prime,
        partition_budget: cli.budget.unwrap_or(DEFAULT_PARTITION_BUDGET),
        match_budget: cli.budget.unwrap_or(DEFAULT_MATCH_BUDGET),
        scan_budget: cli.budget.unwrap_or(DEFAULT_SCAN_BUDGET),
    };

    let result = match &cli.cmd {
        Cmd::Poset { arrangement } => commands::poset(&ctx, arrangement),
        Cmd::Wiring {
            arrangement,
            decone,
            chart,
            direction,
            fibered,
        } => commands::wiring(
            &ctx,
            arrangement,
            decone.as_deref(),
            chart.as_deref(),
            direction.as_deref(),
            *fibered,
        ),
        Cmd::Present {
            arrangement,
            decone,
            chart,
            direction,
            fibered,
        } => commands::present(
            &ctx,
            arrangement,
            decone.as_deref(),
            chart.as_deref(),
            direction.as_deref(),
            *fibered,
        ),
        Cmd::Alexmat {
            arrangement,
            decone,
            chart,
            direction,
            block,
        } => commands::alexmat(
            &ctx,
            arrangement,
            decone.as_deref(),
            chart.as_deref(),
            direction.as_deref(),
            *block,
        ),
        Cmd::Resonance { arrangement, d } => commands::resonance(&ctx, arrangement, *d),
        Cmd::Depth {
            arrangement,
            character,
        } => commands::depth(&ctx, arrangement, character),
        Cmd::Certify {
            arrangement,
            coset,
            d,
        } => commands::certify(&ctx, arrangement, coset, *d),
        Cmd::Intersect { a, b } => commands::intersect(&ctx, a, b),
        Cmd::SearchTranslated {
            arrangement,
            d,
            max_order,
            pattern,
            pattern_coset,
        } => commands::search(
            &ctx,
            arrangement,
            *d,
            *max_order,
            pattern.as_deref(),
            pattern_coset.as_deref(),
        ),
        Cmd::Scan {
            arrangement,
            chars,
            on,
            orders,
            d,
        } => commands::scan(&ctx, arrangement, chars, on, *orders, *d),
        Cmd::Report {
            arrangement,
            d,
            max_order,
            points,
        } => commands::report(&ctx, arrangement, *d, *max_order, points),
        Cmd::Reproduce { id } => reproduce::run(&ctx, id),
    };

    match result {
        Ok((out, code)) => {
            print!("{out}");
            if !out.ends_with('\n') && !out.is_empty() {
                println!();
            }
            ExitCode::from(u8::try_from(code).unwrap_or(2))
        }
        Err(e) => {
            let code: u8 = match &e {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            };
            if format == Format::Json {
                let payload = serde_json::json!({
                    "error": e.to_string(),
                    "kind": error_kind(&e),
                    "exit": code,
                });
                eprintln!(
                    "{}",
                    serde_json::to_string_pretty(&payload).expect("JSON rendering cannot fail")
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Invalid(_) => "invalid",
        Error::Mismatch(_) => "mismatch",
        Error::NonGenericDirection { .. } => "non-generic-direction",
        Error::NotFibered(_) => "not-fibered",
        Error::ProductCondition { .. } => "product-condition",
        Error::BudgetExceeded { .. } => "budget-exceeded",
    }
}
