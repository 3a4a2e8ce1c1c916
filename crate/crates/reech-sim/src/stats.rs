//! Cross-run aggregation: per-round means and Student-t confidence
//! intervals over a batch of seeded runs.
//!
//! Runs of different lengths are aligned by padding shorter runs with their
//! terminal values (alive = 0, all nodes dead, no packets, final residual
//! energy). Sample values are sorted before summing so aggregation is
//! bitwise permutation-invariant in run order.

use crate::engine::RunSummary;
use crate::SimError;

/// Compensated (Kahan) summation, used wherever long energy sums must stay
/// well below the 1e-12 J bookkeeping tolerance.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum
    }
}

// ---------------------------------------------------------------------------
// Student-t quantile
// ---------------------------------------------------------------------------

// Lanczos coefficients (g = 7, n = 9).
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection formula
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
fn reg_inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// CDF of the Student-t distribution with `df` degrees of freedom.
fn t_cdf(t: f64, df: usize) -> f64 {
    let df = df as f64;
    let x = df / (df + t * t);
    let tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, x);
    if t >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Quantile of the Student-t distribution with `df` degrees of freedom.
///
/// Solved by bisection on the CDF; the CDF is monotone, so this converges
/// unconditionally.
pub fn student_t_quantile(prob: f64, df: usize) -> f64 {
    assert!(prob > 0.0 && prob < 1.0, "probability must be in (0, 1)");
    assert!(df >= 1, "degrees of freedom must be at least 1");
    if prob == 0.5 {
        return 0.0;
    }
    if prob < 0.5 {
        return -student_t_quantile(1.0 - prob, df);
    }
    let mut hi = 1.0;
    while t_cdf(hi, df) < prob && hi < 1e12 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_cdf(mid, df) < prob {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

/// Mean and confidence half-width of one scalar across runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarStat {
    pub mean: f64,
    pub ci_half_width: f64,
}

/// Per-round mean and confidence half-width series for one metric.
#[derive(Debug, Clone, Default)]
pub struct SeriesStat {
    pub mean: Vec<f64>,
    pub ci_half_width: Vec<f64>,
}

/// Cross-run statistics for a batch of runs of one protocol.
#[derive(Debug, Clone)]
pub struct AggregateStats {
    pub run_count: usize,
    pub confidence: f64,
    pub round_count: usize,
    pub alive: SeriesStat,
    pub dead: SeriesStat,
    pub ch_count: SeriesStat,
    pub packets_sent: SeriesStat,
    pub packets_received: SeriesStat,
    pub packets_dropped: SeriesStat,
    pub total_energy_j: SeriesStat,
    pub stability_period: ScalarStat,
    pub lifetime: ScalarStat,
    pub instability_period: ScalarStat,
}

/// Sample mean and t-interval half-width. Values are sorted first so the
/// result does not depend on run order.
fn mean_and_half_width(values: &mut [f64], confidence: f64) -> ScalarStat {
    let n = values.len();
    values.sort_by(f64::total_cmp);
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return ScalarStat {
            mean,
            ci_half_width: 0.0,
        };
    }
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    let std_dev = variance.sqrt();
    if std_dev == 0.0 {
        return ScalarStat {
            mean,
            ci_half_width: 0.0,
        };
    }
    let t = student_t_quantile(0.5 * (1.0 + confidence), n - 1);
    ScalarStat {
        mean,
        ci_half_width: t * std_dev / (n as f64).sqrt(),
    }
}

/// Value of one metric in round `round` (0-based), padding past the end of
/// a finished run with its terminal values.
fn metric_at(run: &RunSummary, round: usize, metric: Metric) -> f64 {
    if let Some(m) = run.rounds.get(round) {
        return match metric {
            Metric::Alive => m.alive as f64,
            Metric::Dead => m.dead as f64,
            Metric::ChCount => m.ch_count as f64,
            Metric::PacketsSent => m.packets_sent as f64,
            Metric::PacketsReceived => m.packets_received as f64,
            Metric::PacketsDropped => m.packets_dropped as f64,
            Metric::TotalEnergy => m.total_residual_energy_j,
        };
    }
    match metric {
        Metric::Alive => 0.0,
        Metric::Dead => run.node_count as f64,
        Metric::TotalEnergy => run.rounds.last().map_or(0.0, |m| m.total_residual_energy_j),
        _ => 0.0,
    }
}

#[derive(Clone, Copy)]
enum Metric {
    Alive,
    Dead,
    ChCount,
    PacketsSent,
    PacketsReceived,
    PacketsDropped,
    TotalEnergy,
}

fn series_stat(runs: &[RunSummary], rounds: usize, metric: Metric, confidence: f64) -> SeriesStat {
    let mut stat = SeriesStat {
        mean: Vec::with_capacity(rounds),
        ci_half_width: Vec::with_capacity(rounds),
    };
    let mut samples = vec![0.0; runs.len()];
    for round in 0..rounds {
        for (slot, run) in samples.iter_mut().zip(runs) {
            *slot = metric_at(run, round, metric);
        }
        let s = mean_and_half_width(&mut samples, confidence);
        stat.mean.push(s.mean);
        stat.ci_half_width.push(s.ci_half_width);
    }
    stat
}

/// Aggregate a batch of runs into per-round and per-milestone mean ±
/// confidence-interval statistics.
pub fn aggregate(runs: &[RunSummary], confidence: f64) -> Result<AggregateStats, SimError> {
    if runs.len() < 2 {
        return Err(SimError::NotEnoughRuns(runs.len()));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(SimError::config(
            "confidence",
            "must be strictly between 0 and 1",
        ));
    }
    let rounds = runs.iter().map(|r| r.rounds.len()).max().unwrap_or(0);

    let milestone = |f: fn(&RunSummary) -> f64| -> ScalarStat {
        let mut values: Vec<f64> = runs.iter().map(f).collect();
        mean_and_half_width(&mut values, confidence)
    };

    Ok(AggregateStats {
        run_count: runs.len(),
        confidence,
        round_count: rounds,
        alive: series_stat(runs, rounds, Metric::Alive, confidence),
        dead: series_stat(runs, rounds, Metric::Dead, confidence),
        ch_count: series_stat(runs, rounds, Metric::ChCount, confidence),
        packets_sent: series_stat(runs, rounds, Metric::PacketsSent, confidence),
        packets_received: series_stat(runs, rounds, Metric::PacketsReceived, confidence),
        packets_dropped: series_stat(runs, rounds, Metric::PacketsDropped, confidence),
        total_energy_j: series_stat(runs, rounds, Metric::TotalEnergy, confidence),
        stability_period: milestone(|r| r.stability_period as f64),
        lifetime: milestone(|r| r.lifetime as f64),
        instability_period: milestone(|r| r.instability_period as f64),
    })
}

impl AggregateStats {
    /// Per-round CSV: `round,<metric>_mean,<metric>_ci` for every metric.
    pub fn to_aggregate_csv(&self) -> String {
        let mut out = String::from(
            "round,alive_mean,alive_ci,dead_mean,dead_ci,ch_count_mean,ch_count_ci,\
             packets_sent_mean,packets_sent_ci,packets_received_mean,packets_received_ci,\
             packets_dropped_mean,packets_dropped_ci,total_energy_j_mean,total_energy_j_ci\n",
        );
        for round in 0..self.round_count {
            out.push_str(&format!(
                "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.9},{:.9}\n",
                round + 1,
                self.alive.mean[round],
                self.alive.ci_half_width[round],
                self.dead.mean[round],
                self.dead.ci_half_width[round],
                self.ch_count.mean[round],
                self.ch_count.ci_half_width[round],
                self.packets_sent.mean[round],
                self.packets_sent.ci_half_width[round],
                self.packets_received.mean[round],
                self.packets_received.ci_half_width[round],
                self.packets_dropped.mean[round],
                self.packets_dropped.ci_half_width[round],
                self.total_energy_j.mean[round],
                self.total_energy_j.ci_half_width[round],
            ));
        }
        out
    }

    /// Milestone CSV: one row per lifetime milestone with mean and
    /// half-width.
    pub fn to_summary_csv(&self) -> String {
        let mut out = String::from("milestone,mean,ci\n");
        for (name, stat) in [
            ("stability_period", self.stability_period),
            ("lifetime", self.lifetime),
            ("instability_period", self.instability_period),
        ] {
            out.push_str(&format!(
                "{},{:.6},{:.6}\n",
                name, stat.mean, stat.ci_half_width
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{ProtocolKind, RoundMetrics, RunSummary};

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "actual {actual}, expected {expected}, tol {tol}"
        );
    }

    #[test]
    fn t_quantiles_match_reference_table() {
        // standard two-sided table values
        assert_close(student_t_quantile(0.975, 1), 12.706205, 1e-5);
        assert_close(student_t_quantile(0.975, 4), 2.776445, 1e-5);
        assert_close(student_t_quantile(0.95, 4), 2.131847, 1e-5);
        assert_close(student_t_quantile(0.95, 9), 1.833113, 1e-5);
        assert_close(student_t_quantile(0.995, 2), 9.924843, 1e-5);
        assert_close(student_t_quantile(0.975, 29), 2.045230, 1e-5);
        assert_close(student_t_quantile(0.995, 4), 4.604095, 1e-5);
    }

    #[test]
    fn t_quantile_df1_matches_closed_form() {
        // with one degree of freedom the quantile is tan(pi * (p - 1/2))
        for p in [0.6, 0.75, 0.9, 0.975, 0.99] {
            let exact = (std::f64::consts::PI * (p - 0.5)).tan();
            assert_close(student_t_quantile(p, 1), exact, 1e-8 * exact.abs());
        }
    }

    #[test]
    fn t_quantile_symmetry_and_median() {
        assert_eq!(student_t_quantile(0.5, 7), 0.0);
        let up = student_t_quantile(0.9, 7);
        let down = student_t_quantile(0.1, 7);
        assert_close(up, -down, 1e-12);
    }

    #[test]
    fn t_cdf_basics() {
        assert_close(t_cdf(0.0, 5), 0.5, 1e-12);
        assert!(t_cdf(100.0, 5) > 0.999999);
        assert_close(t_cdf(-2.0, 8), 1.0 - t_cdf(2.0, 8), 1e-12);
    }

    #[test]
    fn kahan_beats_naive_summation() {
        let mut kahan = KahanSum::new();
        let mut naive = 0.0f64;
        for _ in 0..1_000_000 {
            kahan.add(0.1);
            naive += 0.1;
        }
        let exact = 100_000.0;
        assert!((kahan.total() - exact).abs() <= 1e-9);
        assert!((kahan.total() - exact).abs() <= (naive - exact).abs());
    }

    #[test]
    fn half_width_matches_hand_computation() {
        // samples 1..5 at 95%: mean 3, s = 1.5811, t = 2.776 -> hw = 1.963
        let mut values = [1.0, 2.0, 3.0, 4.0, 5.0];
        let stat = mean_and_half_width(&mut values, 0.95);
        assert_close(stat.mean, 3.0, 1e-12);
        assert_close(stat.ci_half_width, 1.963, 1e-3);
    }

    #[test]
    fn zero_variance_gives_zero_half_width() {
        let mut values = [10.0; 5];
        let stat = mean_and_half_width(&mut values, 0.95);
        assert_eq!(stat.mean, 10.0);
        assert_eq!(stat.ci_half_width, 0.0);
    }

    fn run_fixture(seed: u64, alive_series: &[u32], node_count: u32) -> RunSummary {
        let rounds: Vec<RoundMetrics> = alive_series
            .iter()
            .enumerate()
            .map(|(i, &alive)| RoundMetrics {
                round_index: i as u32 + 1,
                alive,
                dead: node_count - alive,
                ch_count: 8,
                packets_sent: 28,
                packets_received: 20,
                packets_dropped: 8,
                total_residual_energy_j: 50.0 - i as f64,
            })
            .collect();
        let stability = alive_series
            .iter()
            .position(|&a| a < node_count)
            .map_or(0, |i| i + 1) as u32;
        let lifetime = alive_series
            .iter()
            .position(|&a| a == 0)
            .map_or(alive_series.len(), |i| i + 1) as u32;
        RunSummary {
            protocol: ProtocolKind::ReechMe,
            seed,
            node_count,
            stability_period: stability,
            lifetime,
            instability_period: lifetime - stability,
            censored: false,
            consumed_energy_j: 0.0,
            final_residual_energy_j: 0.0,
            rounds,
        }
    }

    #[test]
    fn aggregate_rejects_single_run() {
        let run = run_fixture(1, &[100, 50, 0], 100);
        assert!(matches!(
            aggregate(&[run], 0.95),
            Err(SimError::NotEnoughRuns(1))
        ));
    }

    #[test]
    fn aggregate_of_identical_runs_equals_the_run() {
        let runs: Vec<RunSummary> = (0..5)
            .map(|s| run_fixture(s, &[100, 80, 40, 0], 100))
            .collect();
        let agg = aggregate(&runs, 0.95).unwrap();
        assert_eq!(agg.round_count, 4);
        assert_eq!(agg.alive.mean, vec![100.0, 80.0, 40.0, 0.0]);
        assert!(agg.alive.ci_half_width.iter().all(|&w| w == 0.0));
        assert_eq!(agg.stability_period.mean, 2.0);
        assert_eq!(agg.stability_period.ci_half_width, 0.0);
    }

    #[test]
    fn aggregate_pads_shorter_runs_with_terminal_values() {
        let short = run_fixture(1, &[100, 0], 100);
        let long = run_fixture(2, &[100, 100, 60, 0], 100);
        let agg = aggregate(&[short, long], 0.95).unwrap();
        assert_eq!(agg.round_count, 4);
        // round 3 (index 2): short run padded to alive 0, dead 100, packets 0
        assert_eq!(agg.alive.mean[2], 30.0);
        assert_eq!(agg.dead.mean[2], (100.0 + 40.0) / 2.0);
        assert_eq!(agg.packets_sent.mean[2], 14.0);
        // energy pads with the short run's final value (49.0 at its round 2)
        assert_close(agg.total_energy_j.mean[2], (49.0 + 48.0) / 2.0, 1e-12);
    }

    #[test]
    fn aggregate_is_permutation_invariant() {
        let a = run_fixture(1, &[100, 90, 40, 0], 100);
        let b = run_fixture(2, &[100, 70, 10, 0], 100);
        let c = run_fixture(3, &[100, 100, 80, 0], 100);
        let fwd = aggregate(&[a.clone(), b.clone(), c.clone()], 0.95).unwrap();
        let rev = aggregate(&[c, b, a], 0.95).unwrap();
        assert_eq!(fwd.alive.mean, rev.alive.mean);
        assert_eq!(fwd.alive.ci_half_width, rev.alive.ci_half_width);
        assert_eq!(fwd.stability_period.mean, rev.stability_period.mean);
        assert_eq!(
            fwd.stability_period.ci_half_width,
            rev.stability_period.ci_half_width
        );
    }

    #[test]
    fn wider_confidence_never_shrinks_half_widths() {
        let runs: Vec<RunSummary> = [
            &[100u32, 90, 40, 0][..],
            &[100, 70, 10, 0],
            &[100, 100, 80, 0],
            &[100, 85, 30, 0],
        ]
        .iter()
        .enumerate()
        .map(|(s, series)| run_fixture(s as u64, series, 100))
        .collect();
        let narrow = aggregate(&runs, 0.90).unwrap();
        let wide = aggregate(&runs, 0.99).unwrap();
        for (w, n) in wide
            .alive
            .ci_half_width
            .iter()
            .zip(&narrow.alive.ci_half_width)
        {
            assert!(w >= n);
        }
        assert!(wide.stability_period.ci_half_width >= narrow.stability_period.ci_half_width);
    }

    #[test]
    fn csv_headers_and_shape() {
        let runs: Vec<RunSummary> = (0..3).map(|s| run_fixture(s, &[100, 50, 0], 100)).collect();
        let agg = aggregate(&runs, 0.95).unwrap();
        let csv = agg.to_aggregate_csv();
        let header = csv.lines().next().unwrap();
        assert!(header.starts_with("round,alive_mean,alive_ci,"));
        assert_eq!(header.split(',').count(), 15);
        assert_eq!(csv.lines().count(), 1 + 3);

        let summary = agg.to_summary_csv();
        assert_eq!(summary.lines().count(), 4);
        assert!(summary.contains("stability_period,"));
        assert!(summary.contains("lifetime,"));
        assert!(summary.contains("instability_period,"));
    }
}
