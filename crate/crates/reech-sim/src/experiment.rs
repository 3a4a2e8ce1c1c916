//! Experiment driver: runs the selected protocols over the seed batch,
//! writes per-run and aggregate CSVs, the milestone summaries, the
//! comparison report, and the effective-config echo.
//!
//! Everything is computed in memory first; files are then written in a
//! fixed order, so re-running an identical experiment overwrites the output
//! directory with byte-identical content.

use std::path::PathBuf;

use crate::config::{ExperimentConfig, ProtocolSelection};
use crate::engine::{run_simulation, ProtocolKind, RunSummary};
use crate::stats::{aggregate, AggregateStats};
use crate::SimError;

/// Per-round packet means over the stability period, averaged across runs.
#[derive(Debug, Clone, Copy)]
pub struct StabilityThroughput {
    pub sent: f64,
    pub received: f64,
    pub dropped: f64,
}

/// One protocol's batch of runs plus its cross-run statistics.
#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    pub protocol: ProtocolKind,
    pub runs: Vec<RunSummary>,
    pub aggregate: AggregateStats,
    pub stability_throughput: StabilityThroughput,
}

/// Everything an experiment produced, plus the files it wrote.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub out_dir: PathBuf,
    pub written_files: Vec<PathBuf>,
    pub protocols: Vec<ProtocolOutcome>,
    pub comparison_report: String,
}

impl ExperimentOutcome {
    pub fn protocol(&self, kind: ProtocolKind) -> Option<&ProtocolOutcome> {
        self.protocols.iter().find(|p| p.protocol == kind)
    }
}

fn selected_kinds(selection: ProtocolSelection) -> Vec<ProtocolKind> {
    match selection {
        ProtocolSelection::Reech => vec![ProtocolKind::ReechMe],
        ProtocolSelection::Leach => vec![ProtocolKind::Leach],
        ProtocolSelection::Both => vec![ProtocolKind::ReechMe, ProtocolKind::Leach],
    }
}

/// Mean packets per round within each run's own stability period, then
/// averaged over runs.
pub fn stability_throughput(runs: &[RunSummary]) -> StabilityThroughput {
    let mut sent_total = 0.0;
    let mut received_total = 0.0;
    let mut dropped_total = 0.0;
    for run in runs {
        let window = run.stability_period.max(1) as usize;
        let rounds = &run.rounds[..window.min(run.rounds.len())];
        let n = rounds.len().max(1) as f64;
        sent_total += rounds.iter().map(|m| m.packets_sent as f64).sum::<f64>() / n;
        received_total += rounds
            .iter()
            .map(|m| m.packets_received as f64)
            .sum::<f64>()
            / n;
        dropped_total += rounds.iter().map(|m| m.packets_dropped as f64).sum::<f64>() / n;
    }
    let n = runs.len().max(1) as f64;
    StabilityThroughput {
        sent: sent_total / n,
        received: received_total / n,
        dropped: dropped_total / n,
    }
}

/// Run the configured experiment end to end and write all outputs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, SimError> {
    config.validate()?;
    if config.seeds.len() < 2 {
        return Err(SimError::config(
            "seeds",
            "at least 2 seeds are required to aggregate confidence intervals",
        ));
    }

    let mut protocols = Vec::new();
    for kind in selected_kinds(config.protocol) {
        let mut runs = Vec::with_capacity(config.seeds.len());
        for &seed in &config.seeds {
            runs.push(run_simulation(config, kind, seed)?);
        }
        let aggregate = aggregate(&runs, config.confidence)?;
        let stability_throughput = stability_throughput(&runs);
        protocols.push(ProtocolOutcome {
            protocol: kind,
            runs,
            aggregate,
            stability_throughput,
        });
    }

    let comparison_report = comparison_report(config, &protocols);

    std::fs::create_dir_all(&config.out_dir)?;
    let mut written_files = Vec::new();
    let mut write = |name: String, contents: &str| -> Result<(), SimError> {
        let path = config.out_dir.join(name);
        std::fs::write(&path, contents)?;
        written_files.push(path);
        Ok(())
    };

    for outcome in &protocols {
        let short = outcome.protocol.short_name();
        for run in &outcome.runs {
            write(format!("{short}_seed{}.csv", run.seed), &run.to_csv())?;
        }
        write(
            format!("{short}_aggregate.csv"),
            &outcome.aggregate.to_aggregate_csv(),
        )?;
        write(
            format!("{short}_summary.csv"),
            &outcome.aggregate.to_summary_csv(),
        )?;
    }
    write("comparison.txt".to_string(), &comparison_report)?;
    write("config.txt".to_string(), &config.echo())?;

    Ok(ExperimentOutcome {
        out_dir: config.out_dir.clone(),
        written_files,
        protocols,
        comparison_report,
    })
}

/// Percentage delta of `a` over `b`.
fn percent_delta(a: f64, b: f64) -> f64 {
    (a - b) / b * 100.0
}

fn comparison_report(config: &ExperimentConfig, protocols: &[ProtocolOutcome]) -> String {
    let seeds: Vec<String> = config.seeds.iter().map(u64::to_string).collect();
    let mut out = String::from("Protocol comparison\n===================\n");
    out.push_str(&format!(
        "runs per protocol  : {} (seeds: {})\n",
        config.seeds.len(),
        seeds.join(", ")
    ));
    out.push_str(&format!(
        "confidence level   : {:.0}%\n",
        config.confidence * 100.0
    ));
    out.push_str(&format!("max rounds         : {}\n", config.max_rounds));

    for outcome in protocols {
        let agg = &outcome.aggregate;
        let tp = &outcome.stability_throughput;
        out.push_str(&format!("\n{}\n", outcome.protocol.display_name()));
        out.push_str(&format!(
            "  stability period   : {:.2} \u{00b1} {:.2} rounds\n",
            agg.stability_period.mean, agg.stability_period.ci_half_width
        ));
        out.push_str(&format!(
            "  network lifetime   : {:.2} \u{00b1} {:.2} rounds\n",
            agg.lifetime.mean, agg.lifetime.ci_half_width
        ));
        out.push_str(&format!(
            "  instability period : {:.2} \u{00b1} {:.2} rounds\n",
            agg.instability_period.mean, agg.instability_period.ci_half_width
        ));
        out.push_str(&format!(
            "  packets per round during stability: sent {:.2}, received {:.2}, dropped {:.2}\n",
            tp.sent, tp.received, tp.dropped
        ));
        if outcome.runs.iter().any(|r| r.censored) {
            out.push_str(
                "  note: at least one run hit the round cap with survivors (lifetime censored)\n",
            );
        }
    }

    let reech = protocols
        .iter()
        .find(|p| p.protocol == ProtocolKind::ReechMe);
    let leach = protocols.iter().find(|p| p.protocol == ProtocolKind::Leach);
    if let (Some(reech), Some(leach)) = (reech, leach) {
        out.push_str("\nREECH-ME vs LEACH (positive = REECH-ME higher)\n");
        for (label, a, b) in [
            (
                "stability period  ",
                &reech.aggregate.stability_period,
                &leach.aggregate.stability_period,
            ),
            (
                "network lifetime  ",
                &reech.aggregate.lifetime,
                &leach.aggregate.lifetime,
            ),
            (
                "instability period",
                &reech.aggregate.instability_period,
                &leach.aggregate.instability_period,
            ),
        ] {
            out.push_str(&format!(
                "  {label} : {:+.1}%\n",
                percent_delta(a.mean, b.mean)
            ));
        }
    }
    out
}
