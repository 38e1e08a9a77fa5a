use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nilcent::{
    cmd_counterexample, cmd_export_structure, cmd_sweep, cmd_verify, counterexample_exit,
    parse_format, parse_kind, parse_partition, parse_weights, render_counterexamples,
    render_reports, sweep_exit, CliError, Options, EXIT_FAIL, EXIT_PASS, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "nilcent",
    version,
    about = "Exact checks on centralisers of nilpotent elements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random covectors for the sampled-rank cross-check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Output format: json (one object per line) or tsv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Leave timings out of the reports.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on one partition.
    Verify {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        partition: String,
        /// Comma-separated rational weights, one per block.
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Verify every admissible partition up to a bound.
    Sweep {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The so_8 example with no generic stabiliser.
    Counterexample {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the experimental so_9 variant.
        #[arg(long)]
        extend_so9: bool,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Print the structure constants of z(e).
    ExportStructure {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        partition: String,
    },
}

fn options(c: &Common, weights: Option<&str>) -> Result<Options, CliError> {
    Ok(Options {
        seed: c.seed,
        samples: c.samples,
        weights: weights.map(parse_weights).transpose()?,
        timings: !c.no_timings,
    })
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    match cli.command {
        Command::Verify {
            kind,
            partition,
            weights,
            common,
        } => {
            let kind = parse_kind(&kind)?;
            let p = parse_partition(&partition)?;
            let format = parse_format(&common.format)?;
            let r = cmd_verify(kind, &p, &options(&common, weights.as_deref())?)?;
            let code = if r.passed() { EXIT_PASS } else { EXIT_FAIL };
            Ok((render_reports(&[r], format), code))
        }
        Command::Sweep {
            kind,
            max_n,
            jobs,
            common,
        } => {
            let kind = parse_kind(&kind)?;
            let format = parse_format(&common.format)?;
            let reports = cmd_sweep(kind, max_n, &options(&common, None)?, jobs)?;
            Ok((render_reports(&reports, format), sweep_exit(&reports)))
        }
        Command::Counterexample {
            samples,
            seed,
            extend_so9,
            format,
        } => {
            let format = parse_format(&format)?;
            let reports = cmd_counterexample(samples, seed, extend_so9)?;
            Ok((
                render_counterexamples(&reports, format),
                counterexample_exit(&reports),
            ))
        }
        Command::ExportStructure { kind, partition } => {
            let text = cmd_export_structure(parse_kind(&kind)?, &parse_partition(&partition)?)?;
            Ok((text, EXIT_PASS))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_FAIL as u8);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
