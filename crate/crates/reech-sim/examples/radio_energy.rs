//! Walk through the first-order radio energy model: the crossover distance
//! and the cost of transmitting, receiving, and aggregating packets.
//!
//! ```bash
//! cargo run -p reech-sim --example radio_energy
//! ```

use reech_sim::energy::RadioParams;

fn main() {
    let radio = RadioParams::default();

    println!("radio constants");
    println!("  electronics : {:.0e} J/bit", radio.electronics_j_per_bit);
    println!(
        "  free-space  : {:.0e} J/bit/m^2",
        radio.free_space_amp_j_per_bit_m2
    );
    println!(
        "  multipath   : {:.1e} J/bit/m^4",
        radio.multipath_amp_j_per_bit_m4
    );
    println!(
        "  aggregation : {:.0e} J/bit/signal",
        radio.aggregation_j_per_bit
    );
    println!("  packet size : {} bits", radio.packet_bits);

    let d0 = radio.crossover_distance_m();
    println!("\ncrossover distance d0 = {d0:.4} m");
    println!("(below d0 the amplifier term grows with d^2, at or above with d^4)\n");

    let bits = radio.packet_bits;
    println!("transmit cost of one {bits}-bit packet:");
    println!("{:>10}  {:>12}  regime", "d (m)", "E_tx (J)");
    for d in [0.0, 10.0, 25.0, 50.0, 75.0, d0, 100.0, 150.0] {
        let regime = if d < d0 { "free-space" } else { "multipath" };
        println!("{d:>10.3}  {:>12.6e}  {regime}", radio.tx_energy_j(bits, d));
    }

    println!("\nreceive cost  : {:.6e} J", radio.rx_energy_j(bits));
    println!(
        "aggregate 10 signals: {:.6e} J",
        radio.aggregation_energy_j(bits, 10)
    );

    // a cluster head's full round: receive 9 member packets, aggregate all
    // ten signals, forward one packet 40 m to the sink
    let head_round = 9.0 * radio.rx_energy_j(bits)
        + radio.aggregation_energy_j(bits, 10)
        + radio.tx_energy_j(bits, 40.0);
    println!("\na 10-node cluster head spends {head_round:.6e} J per round");
    println!(
        "on a {} J budget that is one cluster-head round per {:.0} rounds of battery",
        radio.initial_energy_j,
        radio.initial_energy_j / head_round
    );
}
