//! First-order radio energy model.
//!
//! Transmitting a `k`-bit packet over distance `d` costs the electronics
//! energy plus an amplifier term that switches regime at the crossover
//! distance `d0 = sqrt(fs / mp)`:
//!
//! ```text
//! E_tx(k, d) = elec * k + fs * k * d^2     if d <  d0
//! E_tx(k, d) = elec * k + mp * k * d^4     if d >= d0
//! E_rx(k)    = elec * k
//! ```
//!
//! Cluster heads additionally pay an aggregation cost per bit per combined
//! signal (member packets plus the head's own). At `d == d0` the two
//! amplifier branches evaluate to the same value; the implementation takes
//! the multipath branch there.

use crate::SimError;

/// Radio constants plus the per-node energy budget.
///
/// Defaults are the standard simulation parameter set: 50 nJ/bit
/// electronics, 10 pJ/bit/m² free-space and 0.0013 pJ/bit/m⁴ multipath
/// amplifiers, 5 nJ/bit/signal aggregation, 4000-bit packets, 0.5 J per
/// node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    /// Energy per bit to run the transmitter or receiver circuitry (J/bit).
    pub electronics_j_per_bit: f64,
    /// Free-space amplifier coefficient (J/bit/m²).
    pub free_space_amp_j_per_bit_m2: f64,
    /// Multipath amplifier coefficient (J/bit/m⁴).
    pub multipath_amp_j_per_bit_m4: f64,
    /// Data-aggregation energy (J/bit/signal).
    pub aggregation_j_per_bit: f64,
    /// Message size k (bits).
    pub packet_bits: u64,
    /// Per-node starting energy (J).
    pub initial_energy_j: f64,
}

impl Default for RadioParams {
    fn default() -> Self {
        RadioParams {
            electronics_j_per_bit: 50e-9,
            free_space_amp_j_per_bit_m2: 10e-12,
            multipath_amp_j_per_bit_m4: 0.0013e-12,
            aggregation_j_per_bit: 5e-9,
            packet_bits: 4000,
            initial_energy_j: 0.5,
        }
    }
}

impl RadioParams {
    /// Check that every constant is strictly positive.
    pub fn validate(&self) -> Result<(), SimError> {
        let positive = [
            ("electronics_j_per_bit", self.electronics_j_per_bit),
            (
                "free_space_amp_j_per_bit_m2",
                self.free_space_amp_j_per_bit_m2,
            ),
            (
                "multipath_amp_j_per_bit_m4",
                self.multipath_amp_j_per_bit_m4,
            ),
            ("aggregation_j_per_bit", self.aggregation_j_per_bit),
            ("initial_energy_j", self.initial_energy_j),
        ];
        for (field, value) in positive {
            let valid = value.is_finite() && value > 0.0;
            if !valid {
                return Err(SimError::config(field, "must be strictly positive"));
            }
        }
        if self.packet_bits == 0 {
            return Err(SimError::config("packet_bits", "must be strictly positive"));
        }
        Ok(())
    }

    /// Crossover distance between the free-space and multipath amplifier
    /// regimes, `sqrt(fs / mp)` in meters.
    pub fn crossover_distance_m(&self) -> f64 {
        (self.free_space_amp_j_per_bit_m2 / self.multipath_amp_j_per_bit_m4).sqrt()
    }

    /// Energy to transmit `bits` over `distance_m` meters.
    pub fn tx_energy_j(&self, bits: u64, distance_m: f64) -> f64 {
        let bits = bits as f64;
        let electronics = self.electronics_j_per_bit * bits;
        if distance_m < self.crossover_distance_m() {
            electronics + self.free_space_amp_j_per_bit_m2 * bits * distance_m.powi(2)
        } else {
            electronics + self.multipath_amp_j_per_bit_m4 * bits * distance_m.powi(4)
        }
    }

    /// Energy to receive `bits` (electronics only).
    pub fn rx_energy_j(&self, bits: u64) -> f64 {
        self.electronics_j_per_bit * bits as f64
    }

    /// Energy for a cluster head to aggregate `signals` packets of `bits`
    /// bits each. `signals` counts the member packets plus the head's own.
    pub fn aggregation_energy_j(&self, bits: u64, signals: u64) -> f64 {
        self.aggregation_j_per_bit * bits as f64 * signals as f64
    }
}
