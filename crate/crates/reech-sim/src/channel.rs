//! Bernoulli packet-drop channel on links to the sink.
//!
//! Each packet offered to the sink gets one independent uniform draw and is
//! dropped when the draw falls below the drop probability. Intra-cluster
//! traffic is never dropped, and a dropped packet still cost its sender the
//! full transmit energy. Draws are consumed in manifest order (sender id
//! ascending).

use rand::Rng;

use crate::topology::NodeId;
use crate::SimError;

/// Independent per-packet drop model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropModel {
    pub drop_probability: f64,
}

impl DropModel {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(0.0..=1.0).contains(&self.drop_probability) || !self.drop_probability.is_finite() {
            return Err(SimError::config(
                "drop_probability",
                "must be within [0, 1]",
            ));
        }
        Ok(())
    }

    /// Thin the manifest: one uniform draw per packet, dropped iff the draw
    /// is below the drop probability. The manifest must already be ordered
    /// by sender id so RNG consumption is deterministic.
    pub fn filter_packets(&self, manifest: &[NodeId], rng: &mut impl Rng) -> DropOutcome {
        let mut outcomes = Vec::with_capacity(manifest.len());
        let mut dropped = 0u32;
        for &sender in manifest {
            let u = rng.random::<f64>();
            let outcome = if u < self.drop_probability {
                dropped += 1;
                PacketFate::Dropped
            } else {
                PacketFate::Received
            };
            outcomes.push((sender, outcome));
        }
        DropOutcome {
            received: manifest.len() as u32 - dropped,
            dropped,
            outcomes,
        }
    }
}

/// What happened to one packet on its way to the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketFate {
    Received,
    Dropped,
}

/// Result of thinning one round's manifest.
#[derive(Debug, Clone)]
pub struct DropOutcome {
    pub received: u32,
    pub dropped: u32,
    pub outcomes: Vec<(NodeId, PacketFate)>,
}
