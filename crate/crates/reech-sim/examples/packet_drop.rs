//! Exercise the Bernoulli drop channel: per-packet fates and convergence of
//! the empirical loss rate to the configured probability.
//!
//! ```bash
//! cargo run -p reech-sim --example packet_drop
//! ```

use reech_sim::channel::{DropModel, PacketFate};
use reech_sim::rng::seeded;

fn main() {
    let model = DropModel {
        drop_probability: 0.3,
    };
    let mut rng = seeded(7);

    // one 28-packet round, the REECH-ME full-strength manifest size
    let manifest: Vec<usize> = (0..28).collect();
    let outcome = model.filter_packets(&manifest, &mut rng);
    println!("one 28-packet round at drop probability 0.3:");
    println!(
        "  received {}, dropped {}",
        outcome.received, outcome.dropped
    );
    let dropped: Vec<usize> = outcome
        .outcomes
        .iter()
        .filter(|(_, fate)| *fate == PacketFate::Dropped)
        .map(|(sender, _)| *sender)
        .collect();
    println!("  dropped senders: {dropped:?}");

    println!("\nempirical drop rate vs. packet count:");
    println!("{:>10}  {:>9}  {:>9}", "packets", "rate", "error");
    for exponent in 1..=6u32 {
        let n = 10usize.pow(exponent);
        let manifest: Vec<usize> = (0..n).collect();
        let outcome = model.filter_packets(&manifest, &mut seeded(42));
        let rate = outcome.dropped as f64 / n as f64;
        println!("{n:>10}  {rate:>9.5}  {:>9.5}", (rate - 0.3).abs());
    }

    println!("\nan ideal channel (probability 0) keeps every packet:");
    let ideal = DropModel {
        drop_probability: 0.0,
    };
    let outcome = ideal.filter_packets(&manifest_of(1000), &mut seeded(1));
    println!("  received {} of 1000", outcome.received);
}

fn manifest_of(n: usize) -> Vec<usize> {
    (0..n).collect()
}
