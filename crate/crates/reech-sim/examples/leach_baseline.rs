//! Run the LEACH baseline and look at how its probabilistic elections
//! behave: fluctuating head counts, the forced end-of-epoch rotation, and
//! the resulting lifetime.
//!
//! ```bash
//! cargo run --release -p reech-sim --example leach_baseline
//! ```

use reech_sim::config::ExperimentConfig;
use reech_sim::engine::{run_simulation, ProtocolKind};

fn main() {
    let config = ExperimentConfig::default();
    let run = run_simulation(&config, ProtocolKind::Leach, 1).unwrap();

    println!("{} run, seed {}", run.protocol.display_name(), run.seed);
    println!("  stability period   : {} rounds", run.stability_period);
    println!("  network lifetime   : {} rounds", run.lifetime);
    println!("  instability period : {} rounds", run.instability_period);

    let stability = &run.rounds[..run.stability_period as usize];
    let mean_heads =
        stability.iter().map(|m| m.ch_count as f64).sum::<f64>() / stability.len() as f64;
    let min_heads = stability.iter().map(|m| m.ch_count).min().unwrap();
    let max_heads = stability.iter().map(|m| m.ch_count).max().unwrap();
    println!("\nhead counts during stability (prob 0.1, 100 nodes):");
    println!("  mean {mean_heads:.2}, min {min_heads}, max {max_heads}");

    let mut histogram = [0u32; 32];
    for m in stability {
        histogram[(m.ch_count as usize).min(31)] += 1;
    }
    println!("\n  heads  rounds");
    for (heads, &count) in histogram.iter().enumerate() {
        if count > 0 {
            let bar = "#".repeat((count as usize / 4).max(1));
            println!("  {heads:>5}  {count:>6}  {bar}");
        }
    }

    println!(
        "\npackets per stability round: sent {:.2}, received {:.2}, dropped {:.2}",
        stability.iter().map(|m| m.packets_sent as f64).sum::<f64>() / stability.len() as f64,
        stability
            .iter()
            .map(|m| m.packets_received as f64)
            .sum::<f64>()
            / stability.len() as f64,
        stability
            .iter()
            .map(|m| m.packets_dropped as f64)
            .sum::<f64>()
            / stability.len() as f64,
    );
}
