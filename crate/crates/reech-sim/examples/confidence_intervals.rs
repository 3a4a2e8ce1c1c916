//! Aggregate a batch of seeded runs into mean ± confidence-interval series
//! and milestone statistics.
//!
//! ```bash
//! cargo run --release -p reech-sim --example confidence_intervals
//! ```

use reech_sim::config::ExperimentConfig;
use reech_sim::engine::{run_simulation, ProtocolKind};
use reech_sim::stats::aggregate;

fn main() {
    let config = ExperimentConfig::default();
    println!(
        "running {} REECH-ME seeds: {:?}",
        config.seeds.len(),
        config.seeds
    );
    let runs: Vec<_> = config
        .seeds
        .iter()
        .map(|&seed| run_simulation(&config, ProtocolKind::ReechMe, seed).unwrap())
        .collect();

    for run in &runs {
        println!(
            "  seed {}: stability {}, lifetime {}",
            run.seed, run.stability_period, run.lifetime
        );
    }

    let agg = aggregate(&runs, config.confidence).unwrap();
    println!(
        "\nmilestones over {} runs at {:.0}% confidence:",
        agg.run_count,
        agg.confidence * 100.0
    );
    for (name, stat) in [
        ("stability period", agg.stability_period),
        ("network lifetime", agg.lifetime),
        ("instability period", agg.instability_period),
    ] {
        println!(
            "  {name:<18}: {:.1} \u{00b1} {:.1} rounds",
            stat.mean, stat.ci_half_width
        );
    }

    println!("\nalive-node series, mean \u{00b1} half-width:");
    println!("{:>6}  {:>8}  {:>8}", "round", "mean", "ci");
    for round in (0..agg.round_count).step_by((agg.round_count / 10).max(1)) {
        println!(
            "{:>6}  {:>8.2}  {:>8.2}",
            round + 1,
            agg.alive.mean[round],
            agg.alive.ci_half_width[round]
        );
    }

    let csv = agg.to_summary_csv();
    println!("\nmilestone summary CSV:\n{csv}");
}
