//! The whole pipeline in one call: both protocols over the default seed
//! batch, per-run and aggregate CSVs, milestone summaries, and the
//! comparison report.
//!
//! ```bash
//! cargo run --release -p reech-sim --example full_experiment
//! ```

use reech_sim::config::ExperimentConfig;
use reech_sim::experiment::run_experiment;

fn main() {
    let config = ExperimentConfig {
        out_dir: std::env::temp_dir().join("reech-sim-full-experiment"),
        ..ExperimentConfig::default()
    };

    println!(
        "running {:?} over seeds {:?} (up to {} rounds each)...\n",
        config.protocol.as_str(),
        config.seeds,
        config.max_rounds
    );
    let outcome = run_experiment(&config).unwrap();

    print!("{}", outcome.comparison_report);

    println!("\nfiles written to {}:", outcome.out_dir.display());
    for path in &outcome.written_files {
        println!("  {}", path.file_name().unwrap().to_str().unwrap());
    }
    println!(
        "\nre-running with the echoed config ({}/config.txt)",
        outcome.out_dir.display()
    );
    println!("reproduces every file byte for byte.");
}
