//! Thin command-line front end over [`reech_sim::experiment::run_experiment`].
//!
//! Exit codes: 0 on success, 1 on configuration errors, 2 on I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use reech_sim::config::{parse_seed_list, ExperimentConfig, ProtocolSelection};
use reech_sim::experiment::run_experiment;
use reech_sim::SimError;

/// Round-based comparison of the REECH-ME and LEACH routing protocols over
/// a first-order radio energy model, with seeded reproducible runs and
/// confidence-interval aggregation.
#[derive(Parser, Debug)]
#[command(name = "reech-sim", version)]
struct Cli {
    /// Flat key-value configuration file; flags below override its values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Which protocol(s) to run: reech, leach, or both.
    #[arg(long, value_name = "PROTOCOL")]
    protocol: Option<String>,

    /// Comma-separated run seeds, e.g. 1,2,3,4,5.
    #[arg(long, value_name = "LIST")]
    seeds: Option<String>,

    /// Output directory for CSVs and reports.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Round cap per run.
    #[arg(long, value_name = "N")]
    max_rounds: Option<u32>,

    /// Packet drop probability on links to the sink.
    #[arg(long, value_name = "F")]
    drop_prob: Option<f64>,

    /// Confidence level for the aggregated intervals.
    #[arg(long, value_name = "F")]
    confidence: Option<f64>,
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, SimError> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(protocol) = &cli.protocol {
        config.protocol = ProtocolSelection::parse(protocol)?;
    }
    if let Some(seeds) = &cli.seeds {
        config.seeds = parse_seed_list(seeds)?;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.clone();
    }
    if let Some(max_rounds) = cli.max_rounds {
        config.max_rounds = max_rounds;
    }
    if let Some(drop_prob) = cli.drop_prob {
        config.drop.drop_probability = drop_prob;
    }
    if let Some(confidence) = cli.confidence {
        config.confidence = confidence;
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };

    let config = match build_config(&cli) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("reech-sim: {err}");
            return ExitCode::from(if matches!(err, SimError::Io(_)) { 2 } else { 1 });
        }
    };

    match run_experiment(&config) {
        Ok(outcome) => {
            print!("{}", outcome.comparison_report);
            println!(
                "\nwrote {} files to {}",
                outcome.written_files.len(),
                outcome.out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(err @ SimError::Io(_)) => {
            eprintln!("reech-sim: {err}");
            ExitCode::from(2)
        }
        Err(err @ SimError::Config { .. }) => {
            eprintln!("reech-sim: {err}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("reech-sim: {err}");
            ExitCode::from(2)
        }
    }
}
