//! Deterministic round-based simulator for energy-aware clustered routing in
//! wireless sensor networks.
//!
//! The crate models a field of battery-powered sensor nodes reporting to a
//! central sink and compares two routing protocols over a first-order radio
//! energy model:
//!
//! - **REECH-ME** — the field is split into nine static regions; the inner
//!   region talks straight to the sink while each outer region elects the
//!   node with the most residual energy as its cluster head every round.
//! - **LEACH** — the classic probabilistic baseline: nodes self-elect as
//!   cluster heads with a rotating threshold and everyone else joins the
//!   nearest head.
//!
//! Every run is driven by a single seeded RNG stream, so identical
//! configurations reproduce byte-identical metric series. Packets on the
//! links to the sink pass through a Bernoulli drop channel, and batches of
//! seeded runs aggregate into mean ± confidence-interval series.
//!
//! ## Examples
//!
//! The `examples/` directory is the guided tour, one runnable program per
//! capability:
//!
//! - **`radio_energy`** — transmit/receive/aggregation energy costs and the
//!   free-space/multipath crossover distance
//! - **`field_regions`** — the nine-region field partition and a seeded node
//!   deployment, dumped as a placement CSV
//! - **`single_run`** — one full REECH-ME run with per-round metrics and
//!   lifetime milestones
//! - **`leach_baseline`** — the LEACH baseline run under the same
//!   configuration
//! - **`packet_drop`** — the Bernoulli drop channel and its empirical loss
//!   rate
//! - **`confidence_intervals`** — aggregating a seed batch into mean ± CI
//!   series
//! - **`full_experiment`** — the whole pipeline: both protocols, all seeds,
//!   CSV outputs and the comparison report
//!
//! ```bash
//! cargo run -p reech-sim --example single_run
//! ```
//!
//! The thin `reech-sim` binary drives the same pipeline from the command
//! line; see the crate README.

pub mod channel;
pub mod config;
pub mod energy;
pub mod engine;
pub mod experiment;
pub mod protocols;
pub mod rng;
pub mod stats;
pub mod topology;

use thiserror::Error;

/// Errors produced by configuration parsing, protocol execution, and the
/// experiment driver.
#[derive(Debug, Error)]
pub enum SimError {
    /// A configuration field failed validation; names the offending field.
    #[error("config error: {field}: {message}")]
    Config { field: String, message: String },

    /// A point fell outside the simulated field.
    #[error("point ({x:.3}, {y:.3}) lies outside the {width}x{height} m field")]
    OutOfField {
        x: f64,
        y: f64,
        width: f64,
        height: f64,
    },

    /// A round plan violated a protocol invariant (e.g. a membership points
    /// at a dead or non-cluster-head node).
    #[error("protocol invariant violated: {0}")]
    PlanViolation(String),

    /// The alive-node series handed to milestone extraction was not
    /// non-increasing.
    #[error("alive series is not non-increasing at index {0}")]
    NonMonotoneAliveSeries(usize),

    /// Confidence intervals need at least two runs.
    #[error("aggregation requires at least 2 runs, got {0}")]
    NotEnoughRuns(usize),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl SimError {
    pub(crate) fn config(field: &str, message: impl Into<String>) -> Self {
        SimError::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }
}
