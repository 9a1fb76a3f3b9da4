//! `nilzeta`: orbit tables, residue audits and identity checks for gl(n).
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check
//! fails, 2 for usage and precision errors.

mod render;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nilzeta::orbits::Partition;
use nilzeta::report::{self, ReportError};
use nilzeta::truncation::TruncationError;
use nilzeta::xi_numeric::{laurent_expand, PrecisionConfig, DIGITS_ENV};
use nilzeta::xi_symbolic::h_orbit;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "nilzeta",
    version,
    about = "Nilpotent orbit zeta functions and truncation identities for GL(n)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Young diagram, hooks, Z factors and Levi-orbit class count for every orbit of gl(n).
    Orbits {
        /// Rank, 1..=12.
        #[arg(long)]
        n: usize,
    },
    /// Pole order and residue at s = 0 of H for every orbit of gl(n), or for one orbit.
    #[command(group(ArgGroup::new("target").required(true).args(["n", "partition"])))]
    Residues {
        /// Rank, 1..=6.
        #[arg(long)]
        n: Option<usize>,
        /// A single orbit, e.g. "2,1".
        #[arg(long)]
        partition: Option<Partition>,
        #[command(flatten)]
        precision: PrecisionArgs,
    },
    /// Checks log(sum Z_o o) = sum H_o o coefficient by coefficient for |o| <= N.
    VerifyIdentity {
        /// Largest rank N, 1..=8.
        #[arg(long)]
        max_n: usize,
    },
    /// Runs the truncation identity suite on seeded random points (plus a chamber grid for n <= 4).
    VerifyCones {
        /// Rank, 1..=7.
        #[arg(long)]
        n: usize,
        /// Random sample points.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the chamber audit (one row per grid point, n <= 5) instead of the suite.
        #[arg(long)]
        chambers: bool,
    },
    /// Laurent expansion of H at s = 0 for one orbit.
    Expand {
        /// The orbit, e.g. "2,1".
        #[arg(long)]
        partition: Partition,
        #[command(flatten)]
        precision: PrecisionArgs,
    },
}

#[derive(Args, Debug)]
struct PrecisionArgs {
    /// Working decimal digits (default 30).
    #[arg(long, env = DIGITS_ENV)]
    digits: Option<u32>,
    /// Taylor order K kept at every point (default n + 3).
    #[arg(long)]
    order: Option<usize>,
}

impl PrecisionArgs {
    fn config(&self, n: usize) -> Result<PrecisionConfig, ReportError> {
        let mut cfg = PrecisionConfig::for_rank(n);
        if let Some(d) = self.digits {
            cfg.working_digits = d;
        }
        if let Some(k) = self.order {
            cfg.expansion_order = k;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Rendered output and overall verdict.
struct Output {
    text: String,
    pass: bool,
}

fn run(cli: &Cli) -> Result<Output, ReportError> {
    let format = cli.format;
    match &cli.command {
        Command::Orbits { n } => {
            let rows = report::orbit_table(*n)?;
            Ok(Output {
                text: render::orbits(*n, &rows, format),
                pass: true,
            })
        }
        Command::Residues {
            n,
            partition,
            precision,
        } => {
            let n = partition
                .as_ref()
                .map_or_else(|| n.unwrap_or(0), Partition::size);
            let cfg = precision.config(n)?;
            let mut table = report::residue_table(n, &cfg)?;
            if let Some(p) = partition {
                table.rows.retain(|r| &r.partition == p);
                table.pass = table.rows.iter().all(|r| r.pass);
            }
            Ok(Output {
                text: render::residues(&table, format),
                pass: table.pass,
            })
        }
        Command::VerifyIdentity { max_n } => {
            let r = report::verify_identity(*max_n)?;
            Ok(Output {
                text: render::identity(&r, format),
                pass: r.pass,
            })
        }
        Command::VerifyCones {
            n,
            samples,
            seed,
            chambers,
        } => {
            if *chambers {
                let rows = report::chamber_audit(*n)?;
                return Ok(Output {
                    text: render::chambers(*n, &rows, format),
                    pass: true,
                });
            }
            let suite = report::verify_cones(*n, *samples, *seed)?;
            Ok(Output {
                text: render::cones(&suite, format),
                pass: suite.pass,
            })
        }
        Command::Expand {
            partition,
            precision,
        } => {
            let n = partition.size();
            if n == 0 || n > report::MAX_RESIDUE_RANK {
                return Err(ReportError::OutOfRange {
                    what: "partition size",
                    min: 1,
                    max: report::MAX_RESIDUE_RANK,
                    got: n,
                });
            }
            let cfg = precision.config(n)?;
            let h = h_orbit(partition);
            let series = laurent_expand(&h, &cfg)?;
            let doc = json!({
                "version": report::VERSION,
                "partition": partition,
                "h": h.pretty(),
                "precision": cfg,
                "series": series.to_json(),
            });
            Ok(Output {
                text: render::expansion(&doc, format),
                pass: true,
            })
        }
    }
}

/// Exit status for an error: inconsistencies between independent
/// computations are mathematical failures, everything else is a usage or
/// precision problem.
fn error_status(e: &ReportError) -> u8 {
    match e {
        ReportError::Truncation(TruncationError::Inconsistency(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_status(&e))
        }
    }
}
