//! REECH-ME cluster-head election: in each clustered region the alive node
//! with the highest residual energy serves as head for the round.
//!
//! When every alive node in a region holds exactly the same energy — the
//! first round, before any differentiation — the head is drawn uniformly at
//! random. Ties between equal maxima otherwise break to the lowest node id.
//! R1 never clusters; its nodes transmit straight to the sink.

use std::collections::BTreeMap;

use rand::Rng;

use crate::rng::SimRng;
use crate::topology::{NodeState, RegionMap, Role, RoutingMode};

use super::{Destination, RoundPlan};

/// Build the round plan: one maximum-energy head per clustered region with
/// alive nodes, direct membership for R1. Roles are written back onto the
/// nodes.
pub fn reech_elect_chs(
    nodes: &mut [NodeState],
    regions: &RegionMap,
    round: usize,
    rng: &mut SimRng,
) -> RoundPlan {
    let mut plan = RoundPlan {
        round_index: round,
        region_heads: BTreeMap::new(),
        cluster_heads: Vec::new(),
        memberships: BTreeMap::new(),
    };

    for node in nodes.iter_mut() {
        node.role = Role::Normal;
    }

    for region in &regions.regions {
        // node lists are region-major and id-ordered, so this scan yields
        // ascending ids
        let alive: Vec<usize> = nodes
            .iter()
            .filter(|n| n.alive && n.region == region.id)
            .map(|n| n.id)
            .collect();
        if alive.is_empty() {
            continue;
        }

        if region.mode == RoutingMode::Direct {
            for &id in &alive {
                nodes[id].role = Role::Direct;
                plan.memberships.insert(id, Destination::Sink);
            }
            continue;
        }

        let first_energy = nodes[alive[0]].residual_energy_j;
        let all_equal = alive
            .iter()
            .all(|&id| nodes[id].residual_energy_j == first_energy);
        let head = if all_equal {
            alive[rng.random_range(0..alive.len())]
        } else {
            // strict comparison keeps the lowest id among equal maxima
            let mut best = alive[0];
            for &id in &alive[1..] {
                if nodes[id].residual_energy_j > nodes[best].residual_energy_j {
                    best = id;
                }
            }
            best
        };

        nodes[head].role = Role::ClusterHead;
        plan.region_heads.insert(region.id, head);
        plan.cluster_heads.push(head);
        plan.memberships.insert(head, Destination::Sink);
        for &id in &alive {
            if id != head {
                plan.memberships.insert(id, Destination::Node(head));
            }
        }
    }

    plan.cluster_heads.sort_unstable();
    plan
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::topology::{deploy_nodes, FieldSpec, RegionId};

    fn setup(seed: u64) -> (RegionMap, Vec<NodeState>) {
        let map = RegionMap::build(FieldSpec::default()).unwrap();
        let nodes = deploy_nodes(&map, 0.5, &mut seeded(seed));
        (map, nodes)
    }

    #[test]
    fn maximum_energy_node_becomes_head() {
        let (map, mut nodes) = setup(1);
        // R2 is nodes 20..30; give three of them distinct energies
        nodes[21].residual_energy_j = 0.3;
        nodes[22].residual_energy_j = 0.5;
        nodes[23].residual_energy_j = 0.4;
        for id in [20, 24, 25, 26, 27, 28, 29] {
            nodes[id].residual_energy_j = 0.1;
        }
        let plan = reech_elect_chs(&mut nodes, &map, 5, &mut seeded(9));
        assert_eq!(plan.region_heads[&RegionId::R2], 22);
        assert_eq!(nodes[22].role, Role::ClusterHead);
        assert_eq!(plan.memberships[&21], Destination::Node(22));
        assert_eq!(plan.memberships[&22], Destination::Sink);
    }

    #[test]
    fn equal_maxima_break_to_lowest_id() {
        let (map, mut nodes) = setup(1);
        nodes[21].residual_energy_j = 0.4;
        nodes[22].residual_energy_j = 0.4;
        for id in [20, 23, 24, 25, 26, 27, 28, 29] {
            nodes[id].residual_energy_j = 0.1;
        }
        let plan = reech_elect_chs(&mut nodes, &map, 3, &mut seeded(9));
        assert_eq!(plan.region_heads[&RegionId::R2], 21);
    }

    #[test]
    fn all_equal_energies_pick_uniformly() {
        // fresh deployment: every region all-equal, so the head is random
        let mut counts = [0u32; 10];
        for seed in 0..2000u64 {
            let (map, mut nodes) = setup(1);
            let plan = reech_elect_chs(&mut nodes, &map, 0, &mut seeded(seed));
            let head = plan.region_heads[&RegionId::R2];
            assert!((20..30).contains(&head));
            counts[head - 20] += 1;
        }
        // each of the 10 nodes should be picked roughly 200 times
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                c > 120 && c < 290,
                "node {} picked {} times of 2000",
                i + 20,
                c
            );
        }
    }

    #[test]
    fn r1_nodes_go_direct() {
        let (map, mut nodes) = setup(2);
        let plan = reech_elect_chs(&mut nodes, &map, 0, &mut seeded(4));
        for node in nodes.iter().filter(|n| n.region == RegionId::R1) {
            assert_eq!(node.role, Role::Direct);
            assert_eq!(plan.memberships[&node.id], Destination::Sink);
        }
        assert!(!plan.region_heads.contains_key(&RegionId::R1));
    }

    #[test]
    fn one_head_per_live_clustered_region() {
        let (map, mut nodes) = setup(3);
        let plan = reech_elect_chs(&mut nodes, &map, 0, &mut seeded(5));
        assert_eq!(plan.cluster_heads.len(), 8);
        assert_eq!(plan.region_heads.len(), 8);
        // every alive node appears exactly once
        assert_eq!(plan.memberships.len(), 100);
    }

    #[test]
    fn dead_region_has_no_head() {
        let (map, mut nodes) = setup(4);
        for node in nodes.iter_mut().filter(|n| n.region == RegionId::R5) {
            node.residual_energy_j = 0.0;
            node.alive = false;
        }
        let plan = reech_elect_chs(&mut nodes, &map, 7, &mut seeded(6));
        assert!(!plan.region_heads.contains_key(&RegionId::R5));
        assert_eq!(plan.cluster_heads.len(), 7);
        assert_eq!(plan.memberships.len(), 90);
    }

    #[test]
    fn head_energy_is_maximal_in_region() {
        let (map, mut nodes) = setup(5);
        // perturb energies deterministically so no region is all-equal
        for (i, node) in nodes.iter_mut().enumerate() {
            node.residual_energy_j = 0.1 + 0.001 * ((i * 7919) % 101) as f64;
        }
        let plan = reech_elect_chs(&mut nodes, &map, 2, &mut seeded(7));
        for (&region, &head) in &plan.region_heads {
            let max = nodes
                .iter()
                .filter(|n| n.alive && n.region == region)
                .map(|n| n.residual_energy_j)
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(nodes[head].residual_energy_j, max);
        }
    }

    #[test]
    fn argmax_is_invariant_under_positive_scaling() {
        for seed in 0..50u64 {
            let (map, mut nodes) = setup(seed);
            for (i, node) in nodes.iter_mut().enumerate() {
                node.residual_energy_j = 0.05 + 0.002 * ((i * 31 + seed as usize) % 97) as f64;
            }
            let mut scaled = nodes.clone();
            for node in scaled.iter_mut() {
                node.residual_energy_j *= 3.5;
            }
            let plan_a = reech_elect_chs(&mut nodes, &map, 1, &mut seeded(100 + seed));
            let plan_b = reech_elect_chs(&mut scaled, &map, 1, &mut seeded(100 + seed));
            assert_eq!(plan_a.region_heads, plan_b.region_heads);
        }
    }
}
