//! Per-round protocol machinery shared by REECH-ME and LEACH: the round
//! plan produced by an election and the energy-debiting executor.
//!
//! Debits apply in a fixed order — member transmissions, cluster-head
//! receptions, aggregation, transmissions to the sink — so death timing is
//! deterministic. A node whose cost exceeds its remaining energy still
//! transmits this round; its energy clamps to zero and it is dead for all
//! later rounds.

pub mod leach;
pub mod reech;

use std::collections::BTreeMap;

use crate::energy::RadioParams;
use crate::stats::KahanSum;
use crate::topology::{FieldSpec, NodeId, NodeState, RegionId};
use crate::SimError;

pub use leach::{LeachElector, LeachParams};
pub use reech::reech_elect_chs;

/// Where a node sends its packet this round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Destination {
    Sink,
    Node(NodeId),
}

/// One round's election result: cluster heads and a destination for every
/// alive node.
#[derive(Debug, Clone)]
pub struct RoundPlan {
    /// Zero-based round counter, as used by the LEACH threshold.
    pub round_index: usize,
    /// REECH-ME's per-region heads; empty for LEACH, and absent for regions
    /// with no alive node.
    pub region_heads: BTreeMap<RegionId, NodeId>,
    /// All cluster heads this round, ascending by id.
    pub cluster_heads: Vec<NodeId>,
    /// Destination per alive node; every alive node appears exactly once.
    pub memberships: BTreeMap<NodeId, Destination>,
}

/// Result of applying one round's energy debits.
#[derive(Debug, Clone)]
pub struct RoundExecution {
    /// Energy actually drained from each node this round (clamped drains
    /// included), indexed by node id.
    pub debits: Vec<f64>,
    /// Compensated total of all drains this round.
    pub consumed_j: f64,
    /// Senders that offered a packet to the sink, ascending by id: one per
    /// cluster head plus one per direct node.
    pub manifest: Vec<NodeId>,
}

/// Drain `cost` from a node, clamping at zero. Returns the energy actually
/// removed.
fn apply_debit(node: &mut NodeState, cost: f64) -> f64 {
    let before = node.residual_energy_j;
    let after = if cost >= before { 0.0 } else { before - cost };
    node.residual_energy_j = after;
    node.alive = after > 0.0;
    before - after
}

fn drain(
    nodes: &mut [NodeState],
    debits: &mut [f64],
    consumed: &mut KahanSum,
    id: NodeId,
    cost: f64,
) {
    let applied = apply_debit(&mut nodes[id], cost);
    debits[id] += applied;
    consumed.add(applied);
}

fn check_plan(nodes: &[NodeState], plan: &RoundPlan) -> Result<(), SimError> {
    let alive_count = nodes.iter().filter(|n| n.alive).count();
    if plan.memberships.len() != alive_count {
        return Err(SimError::PlanViolation(format!(
            "memberships cover {} nodes but {} are alive",
            plan.memberships.len(),
            alive_count
        )));
    }
    for (&id, &dest) in &plan.memberships {
        let node = nodes.get(id).ok_or_else(|| {
            SimError::PlanViolation(format!("membership references unknown node {id}"))
        })?;
        if !node.alive {
            return Err(SimError::PlanViolation(format!(
                "dead node {id} appears in memberships"
            )));
        }
        match dest {
            Destination::Sink => {}
            Destination::Node(ch) => {
                if !plan.cluster_heads.contains(&ch) {
                    return Err(SimError::PlanViolation(format!(
                        "node {id} sends to {ch}, which is not a cluster head"
                    )));
                }
                let ch_node = nodes.get(ch).ok_or_else(|| {
                    SimError::PlanViolation(format!("membership references unknown head {ch}"))
                })?;
                if !ch_node.alive {
                    return Err(SimError::PlanViolation(format!(
                        "cluster head {ch} is dead"
                    )));
                }
            }
        }
    }
    for &ch in &plan.cluster_heads {
        match plan.memberships.get(&ch) {
            Some(Destination::Sink) => {}
            Some(_) => {
                return Err(SimError::PlanViolation(format!(
                    "cluster head {ch} must send to the sink"
                )));
            }
            None => {
                return Err(SimError::PlanViolation(format!(
                    "cluster head {ch} is missing from memberships"
                )));
            }
        }
    }
    Ok(())
}

/// Apply one round's energy debits and collect the packets offered to the
/// sink.
///
/// The plan must be consistent with the current alive set (it normally
/// comes straight from an election on the same node list).
pub fn execute_round(
    nodes: &mut [NodeState],
    plan: &RoundPlan,
    radio: &RadioParams,
    field: &FieldSpec,
) -> Result<RoundExecution, SimError> {
    check_plan(nodes, plan)?;

    let bits = radio.packet_bits;
    let mut debits = vec![0.0; nodes.len()];
    let mut consumed = KahanSum::new();

    // members per head, heads ascending
    let mut members: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for (&id, &dest) in &plan.memberships {
        if let Destination::Node(ch) = dest {
            members.entry(ch).or_default().push(id);
        }
    }

    // 1. member transmissions to their heads
    for (&id, &dest) in &plan.memberships {
        if let Destination::Node(ch) = dest {
            let distance = nodes[id].position.distance_to(nodes[ch].position);
            let cost = radio.tx_energy_j(bits, distance);
            drain(nodes, &mut debits, &mut consumed, id, cost);
        }
    }

    // 2. head receptions, one per member packet
    for &ch in &plan.cluster_heads {
        let member_count = members.get(&ch).map_or(0, Vec::len);
        for _ in 0..member_count {
            drain(
                nodes,
                &mut debits,
                &mut consumed,
                ch,
                radio.rx_energy_j(bits),
            );
        }
    }

    // 3. aggregation of member packets plus the head's own
    for &ch in &plan.cluster_heads {
        let signals = members.get(&ch).map_or(0, Vec::len) as u64 + 1;
        let cost = radio.aggregation_energy_j(bits, signals);
        drain(nodes, &mut debits, &mut consumed, ch, cost);
    }

    // 4. transmissions to the sink (heads and direct nodes, id order)
    let mut manifest = Vec::new();
    for (&id, &dest) in &plan.memberships {
        if dest == Destination::Sink {
            let distance = nodes[id].position.distance_to(field.sink);
            let cost = radio.tx_energy_j(bits, distance);
            drain(nodes, &mut debits, &mut consumed, id, cost);
            manifest.push(id);
        }
    }

    Ok(RoundExecution {
        debits,
        consumed_j: consumed.total(),
        manifest,
    })
}
