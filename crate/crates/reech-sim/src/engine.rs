//! Single-run driver: the round loop, per-round metrics, and lifetime
//! milestones.
//!
//! One seeded RNG stream drives the whole run, consumed in a fixed order:
//! deployment, then per round the election draws followed by the drop
//! draws. Metric rows are numbered by completed rounds starting at 1; the
//! milestone series prepends the initial alive count at index 0, so the
//! stability period (round of the first death) is always positive.

use crate::config::ExperimentConfig;
use crate::protocols::{execute_round, reech_elect_chs, LeachElector};
use crate::rng::seeded;
use crate::stats::KahanSum;
use crate::topology::{deploy_nodes, RegionMap};
use crate::SimError;

/// Which protocol a run executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProtocolKind {
    ReechMe,
    Leach,
}

impl ProtocolKind {
    /// Short name used in file names and CLI values.
    pub fn short_name(&self) -> &'static str {
        match self {
            ProtocolKind::ReechMe => "reech",
            ProtocolKind::Leach => "leach",
        }
    }

    /// Human-readable protocol name.
    pub fn display_name(&self) -> &'static str {
        match self {
            ProtocolKind::ReechMe => "REECH-ME",
            ProtocolKind::Leach => "LEACH",
        }
    }
}

/// Counters recorded after each completed round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundMetrics {
    /// Completed-round number, starting at 1.
    pub round_index: u32,
    pub alive: u32,
    pub dead: u32,
    pub ch_count: u32,
    pub packets_sent: u32,
    pub packets_received: u32,
    pub packets_dropped: u32,
    pub total_residual_energy_j: f64,
}

/// Lifetime milestones extracted from an alive series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Milestones {
    /// Rounds completed until the first node death.
    pub stability_period: u32,
    /// Rounds completed until the last node death.
    pub lifetime: u32,
    /// `lifetime - stability_period`.
    pub instability_period: u32,
    /// True when the run hit the round cap with survivors, so the lifetime
    /// (and possibly the stability period) is right-censored at the cap.
    pub censored: bool,
}

/// Extract milestones from an alive series where index 0 holds the initial
/// count and index `r` the count after `r` completed rounds.
///
/// The series must be non-increasing. A series that never reaches zero is
/// censored at its final index.
pub fn extract_milestones(alive_series: &[u32]) -> Result<Milestones, SimError> {
    for (i, pair) in alive_series.windows(2).enumerate() {
        if pair[1] > pair[0] {
            return Err(SimError::NonMonotoneAliveSeries(i + 1));
        }
    }
    let total = alive_series[0];
    let last = alive_series.len() as u32 - 1;
    let first_death = alive_series
        .iter()
        .position(|&a| a < total)
        .map(|i| i as u32);
    let all_dead = alive_series.iter().position(|&a| a == 0).map(|i| i as u32);
    let stability_period = first_death.unwrap_or(last);
    let lifetime = all_dead.unwrap_or(last);
    Ok(Milestones {
        stability_period,
        lifetime,
        instability_period: lifetime - stability_period,
        censored: all_dead.is_none(),
    })
}

/// One run's milestones, energy bookkeeping, and per-round metric series.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub protocol: ProtocolKind,
    pub seed: u64,
    pub node_count: u32,
    pub stability_period: u32,
    pub lifetime: u32,
    pub instability_period: u32,
    pub censored: bool,
    /// Total energy drained over the run (compensated sum of all debits).
    pub consumed_energy_j: f64,
    /// Total residual energy at the end of the run.
    pub final_residual_energy_j: f64,
    pub rounds: Vec<RoundMetrics>,
}

impl RunSummary {
    /// Per-run CSV, one row per completed round.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "round,alive,dead,ch_count,packets_sent,packets_received,packets_dropped,total_energy_j\n",
        );
        for m in &self.rounds {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{:.9}\n",
                m.round_index,
                m.alive,
                m.dead,
                m.ch_count,
                m.packets_sent,
                m.packets_received,
                m.packets_dropped,
                m.total_residual_energy_j,
            ));
        }
        out
    }
}

/// Run one seeded simulation to completion (all nodes dead) or to the round
/// cap.
pub fn run_simulation(
    config: &ExperimentConfig,
    protocol: ProtocolKind,
    seed: u64,
) -> Result<RunSummary, SimError> {
    config.validate()?;
    let mut rng = seeded(seed);
    let map = RegionMap::build_with_quotas(config.field, config.region_quotas)?;
    let mut nodes = deploy_nodes(&map, config.radio.initial_energy_j, &mut rng);
    let node_count = nodes.len() as u32;

    let mut leach_elector = match protocol {
        ProtocolKind::Leach => Some(LeachElector::new(config.leach, nodes.len())),
        ProtocolKind::ReechMe => None,
    };

    let mut rounds = Vec::new();
    let mut alive_series = vec![node_count];
    let mut consumed = KahanSum::new();

    for round in 0..config.max_rounds as usize {
        if !nodes.iter().any(|n| n.alive) {
            break;
        }

        let plan = match &mut leach_elector {
            None => reech_elect_chs(&mut nodes, &map, round, &mut rng),
            Some(elector) => elector.elect(&mut nodes, round, &mut rng),
        };
        let execution = execute_round(&mut nodes, &plan, &config.radio, &map.field)?;
        let drops = config.drop.filter_packets(&execution.manifest, &mut rng);
        consumed.add(execution.consumed_j);

        let alive = nodes.iter().filter(|n| n.alive).count() as u32;
        let mut energy = KahanSum::new();
        for node in &nodes {
            energy.add(node.residual_energy_j);
        }
        alive_series.push(alive);
        rounds.push(RoundMetrics {
            round_index: round as u32 + 1,
            alive,
            dead: node_count - alive,
            ch_count: plan.cluster_heads.len() as u32,
            packets_sent: execution.manifest.len() as u32,
            packets_received: drops.received,
            packets_dropped: drops.dropped,
            total_residual_energy_j: energy.total(),
        });
    }

    let milestones = extract_milestones(&alive_series)?;
    let mut final_energy = KahanSum::new();
    for node in &nodes {
        final_energy.add(node.residual_energy_j);
    }

    Ok(RunSummary {
        protocol,
        seed,
        node_count,
        stability_period: milestones.stability_period,
        lifetime: milestones.lifetime,
        instability_period: milestones.instability_period,
        censored: milestones.censored,
        consumed_energy_j: consumed.total(),
        final_residual_energy_j: final_energy.total(),
        rounds,
    })
}
