//! Run one seeded REECH-ME simulation to completion and inspect the
//! per-round metrics and lifetime milestones.
//!
//! ```bash
//! cargo run --release -p reech-sim --example single_run
//! ```

use reech_sim::config::ExperimentConfig;
use reech_sim::engine::{run_simulation, ProtocolKind};

fn main() {
    let config = ExperimentConfig::default();
    let run = run_simulation(&config, ProtocolKind::ReechMe, 1).unwrap();

    println!("{} run, seed {}", run.protocol.display_name(), run.seed);
    println!(
        "  stability period   : {} rounds (first node death)",
        run.stability_period
    );
    println!(
        "  network lifetime   : {} rounds (last node death)",
        run.lifetime
    );
    println!("  instability period : {} rounds", run.instability_period);
    println!("  censored           : {}", run.censored);
    println!(
        "  energy consumed    : {:.6} J of {:.1} J deployed",
        run.consumed_energy_j,
        run.node_count as f64 * config.radio.initial_energy_j
    );

    println!("\nselected rounds:");
    println!(
        "{:>6} {:>6} {:>5} {:>9} {:>9} {:>9} {:>15}",
        "round", "alive", "heads", "sent", "received", "dropped", "energy (J)"
    );
    let picks = [
        0usize,
        99,
        run.stability_period as usize - 1,
        run.stability_period as usize,
        (run.lifetime as usize).saturating_sub(200),
        run.lifetime as usize - 1,
    ];
    for &i in picks.iter().filter(|&&i| i < run.rounds.len()) {
        let m = &run.rounds[i];
        println!(
            "{:>6} {:>6} {:>5} {:>9} {:>9} {:>9} {:>15.6}",
            m.round_index,
            m.alive,
            m.ch_count,
            m.packets_sent,
            m.packets_received,
            m.packets_dropped,
            m.total_residual_energy_j
        );
    }

    let csv = run.to_csv();
    println!(
        "\nper-run CSV is {} rows; first two:",
        csv.lines().count() - 1
    );
    for line in csv.lines().take(3) {
        println!("  {line}");
    }
}
