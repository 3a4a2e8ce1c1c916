//! LEACH baseline: probabilistic cluster-head self-election with the
//! standard rotating threshold.
//!
//! An eligible node becomes head when its uniform draw falls below
//! `T = p / (1 - p * (r mod round(1/p)))`; nodes that already served in the
//! current epoch are ineligible (T = 0) until the epoch resets. Non-head
//! nodes join the nearest head by Euclidean distance. If no head at all is
//! elected, every alive node falls back to transmitting straight to the
//! sink.

use std::collections::BTreeMap;

use rand::Rng;

use crate::rng::SimRng;
use crate::topology::{NodeId, NodeState, Role};
use crate::SimError;

use super::{Destination, RoundPlan};

/// Cluster-head probability for the LEACH election.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeachParams {
    pub ch_probability: f64,
}

impl Default for LeachParams {
    fn default() -> Self {
        LeachParams {
            ch_probability: 0.1,
        }
    }
}

impl LeachParams {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.ch_probability > 0.0 && self.ch_probability < 1.0) {
            return Err(SimError::config(
                "leach_ch_probability",
                "must be strictly between 0 and 1",
            ));
        }
        Ok(())
    }
}

/// Election state carried across rounds: which nodes already served as head
/// in the current epoch.
#[derive(Debug, Clone)]
pub struct LeachElector {
    params: LeachParams,
    epoch_rounds: usize,
    served_this_epoch: Vec<bool>,
}

impl LeachElector {
    pub fn new(params: LeachParams, node_count: usize) -> Self {
        let epoch_rounds = (1.0 / params.ch_probability).round().max(1.0) as usize;
        LeachElector {
            params,
            epoch_rounds,
            served_this_epoch: vec![false; node_count],
        }
    }

    /// Rounds per rotation epoch, `round(1/p)`.
    pub fn epoch_rounds(&self) -> usize {
        self.epoch_rounds
    }

    /// Election threshold for an eligible node in the given round.
    pub fn threshold(&self, round: usize) -> f64 {
        let p = self.params.ch_probability;
        let position = (round % self.epoch_rounds) as f64;
        let denominator = 1.0 - p * position;
        if denominator <= p {
            1.0
        } else {
            p / denominator
        }
    }

    /// Run one round's election and build the round plan. Roles are written
    /// back onto the nodes. Draws happen in node-id order, one per alive
    /// eligible node.
    pub fn elect(&mut self, nodes: &mut [NodeState], round: usize, rng: &mut SimRng) -> RoundPlan {
        if round.is_multiple_of(self.epoch_rounds) {
            self.served_this_epoch.fill(false);
        }
        let threshold = self.threshold(round);

        let mut heads = Vec::new();
        for node in nodes.iter() {
            if node.alive && !self.served_this_epoch[node.id] && rng.random::<f64>() < threshold {
                heads.push(node.id);
            }
        }
        for &head in &heads {
            self.served_this_epoch[head] = true;
        }

        build_plan(nodes, heads, round)
    }
}

/// Assemble the plan for a given head set: heads to the sink, everyone else
/// to the nearest head, or everyone direct when no head was elected.
pub(crate) fn build_plan(nodes: &mut [NodeState], heads: Vec<NodeId>, round: usize) -> RoundPlan {
    let mut plan = RoundPlan {
        round_index: round,
        region_heads: BTreeMap::new(),
        cluster_heads: heads,
        memberships: BTreeMap::new(),
    };
    plan.cluster_heads.sort_unstable();

    for node in nodes.iter_mut() {
        node.role = Role::Normal;
    }

    if plan.cluster_heads.is_empty() {
        for node in nodes.iter_mut().filter(|n| n.alive) {
            node.role = Role::Direct;
            plan.memberships.insert(node.id, Destination::Sink);
        }
        return plan;
    }

    for &head in &plan.cluster_heads {
        nodes[head].role = Role::ClusterHead;
        plan.memberships.insert(head, Destination::Sink);
    }
    for id in 0..nodes.len() {
        let node = &nodes[id];
        if !node.alive || node.role == Role::ClusterHead {
            continue;
        }
        // ascending scan with strict < keeps the lowest head id on ties
        let mut nearest = plan.cluster_heads[0];
        let mut best = node.position.distance_to(nodes[nearest].position);
        for &head in &plan.cluster_heads[1..] {
            let d = node.position.distance_to(nodes[head].position);
            if d < best {
                best = d;
                nearest = head;
            }
        }
        plan.memberships.insert(id, Destination::Node(nearest));
    }
    plan
}
