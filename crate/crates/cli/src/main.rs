//! Batch CLI over the expansion, ladder, verification and statistics
//! machinery. Exit codes: 0 success, 1 verification failure or empty sample,
//! 2 usage or input error. All big integers are emitted as decimal strings;
//! identical inputs produce byte-identical outputs.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use cfladder::{Error, Expansion, Ladder, Power, QuotientStream, Surd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "cfladder",
    version,
    about = "Continued-fraction expansions of cube roots and the connection ladder between them",
    long_about = "Exact continued-fraction expansions of \u{221b}m and \u{221b}m\u{b2} for noncube m,\n\
                  detection of the connections between their convergent sequences, full\n\
                  verification of the governing identities, and Gauss\u{2013}Kuzmin statistics.\n\
                  All computation is exact; output is deterministic."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the triplets of one expansion, one row per index 0..=length.
    #[command(after_help = "CSV columns: n, b, p_prev, q_prev \
                            (partial quotient b_n and convergent p_{n-1}/q_{n-1}; decimal strings).")]
    Expand {
        /// Noncube integer >= 2.
        #[arg(long)]
        m: u64,
        /// 1 for cbrt(m), 2 for cbrt(m^2).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        power: u8,
        /// Largest triplet index N; emits N+1 rows.
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect and certify all connections with n, k <= length.
    #[command(after_help = "CSV columns: n, k, r, s, t, b_n, B_k, r_bn_minus_s_Bk. \
                            The connection count goes to stderr as `connections: <count>`.")]
    Ladder {
        #[arg(long)]
        m: u64,
        /// Both expansions run to triplet index N.
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every identity and ladder check; exit 0 only if all pass.
    #[command(after_help = "CSV columns: status, check, cases, detail. \
                            The oracle cross-check is capped at min(length, 500) steps.")]
    Verify {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical quotient distribution against the Gauss-Kuzmin law over
    /// b_1..b_length.
    #[command(
        after_help = "CSV columns: k, count, frequency, expected, deviation; one extra \
                            row with k = tail. Summary goes to stderr."
    )]
    Stats {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        power: u8,
        /// Number of partial quotients sampled (b_0 is excluded).
        #[arg(long)]
        length: usize,
        /// Largest quotient tracked individually; the rest lands in the tail.
        #[arg(long, default_value_t = 100)]
        cutoff: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV data behind the ladder and distance plots.
    #[command(
        after_help = "Figures 1 and 2 (m = 2 and m = 6): columns record, side, index, \
                            quotient, n, k; `rung` rows list partial quotients per side, \
                            `connection` rows list matched index pairs. Figure 3 (m = 2): \
                            columns ordinal, n, k, n_minus_k, one row per connection."
    )]
    Figure {
        /// 1 = m=2 ladder, 2 = m=6 ladder, 3 = index distance n-k for m=2.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long, default_value_t = 1000)]
        length: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            if matches!(err.downcast_ref::<Error>(), Some(Error::EmptyHistogram)) {
                eprintln!("error: empty sample");
                return ExitCode::from(1);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Expand {
            m,
            power,
            length,
            format,
            out,
        } => {
            let surd = Surd::new(m, Power::try_from(power)?)?;
            let expansion = Expansion::compute(surd, length);
            let mut sink = output::writer(out.as_ref())?;
            match format {
                Format::Csv => output::expand_csv(&mut sink, &expansion)?,
                Format::Json => output::expand_json(&mut sink, &expansion)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ladder {
            m,
            length,
            format,
            out,
        } => {
            let ladder = build_ladder(m, length)?;
            let mut sink = output::writer(out.as_ref())?;
            match format {
                Format::Csv => output::ladder_csv(&mut sink, &ladder)?,
                Format::Json => output::ladder_json(&mut sink, &ladder)?,
            }
            eprintln!("connections: {}", ladder.connections().len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            m,
            length,
            format,
            out,
        } => {
            let report = cfladder::verify::run(m, length, length.min(500))?;
            let mut sink = output::writer(out.as_ref())?;
            match format {
                Format::Csv => output::verify_csv(&mut sink, &report)?,
                Format::Json => output::verify_json(&mut sink, &report)?,
            }
            let failures = report.failures().count();
            eprintln!(
                "verified m={} length={}: {} checks, {} failures",
                report.m,
                report.length,
                report.checks.len(),
                failures
            );
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Stats {
            m,
            power,
            length,
            cutoff,
            format,
            out,
        } => {
            let surd = Surd::new(m, Power::try_from(power)?)?;
            let quotients = QuotientStream::new(surd).skip(1).take(length);
            let histogram = cfladder::histogram(quotients, cutoff);
            let comparison = cfladder::kuzmin_distance(&histogram)?;
            let mut sink = output::writer(out.as_ref())?;
            match format {
                Format::Csv => output::stats_csv(&mut sink, &comparison)?,
                Format::Json => {
                    output::stats_json(&mut sink, surd, length, &histogram, &comparison)?
                }
            }
            eprintln!(
                "max_deviation: {:.6}, total_variation: {:.6}",
                comparison.max_deviation, comparison.total_variation
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure { which, length, out } => {
            let mut sink = output::writer(out.as_ref())?;
            match which {
                1 => output::figure_ladder_csv(&mut sink, &build_ladder(2, length)?)?,
                2 => output::figure_ladder_csv(&mut sink, &build_ladder(6, length)?)?,
                3 => output::figure_distance_csv(&mut sink, &build_ladder(2, length)?)?,
                _ => unreachable!("which validated by clap"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_ladder(m: u64, length: usize) -> anyhow::Result<Ladder> {
    let xi = Expansion::compute(Surd::new(m, Power::One)?, length);
    let eta = Expansion::compute(Surd::new(m, Power::Two)?, length);
    Ladder::find(xi, eta).context("ladder construction failed")
}
