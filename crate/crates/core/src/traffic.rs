//! Synthetic workload generation.
//!
//! Flows arrive as a Poisson process, sizes are Exponential or Pareto with a
//! common mean, and each flow is independently tagged regular or deadline.
//! Deadline flows get a deadline proportional to their ideal transfer time
//! and are split into soft (large) and hard (small) deadlines.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type FlowId = u64;

/// Generator used for every workload; replication `r` is seeded with
/// `base_seed + r`.
pub type WorkloadRng = ChaCha8Rng;

pub fn workload_rng(seed: u64) -> WorkloadRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Softness {
    Soft,
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FlowClass {
    Regular,
    Deadline { deadline: f64, softness: Softness },
}

impl FlowClass {
    pub fn is_deadline(&self) -> bool {
        matches!(self, FlowClass::Deadline { .. })
    }

    pub fn deadline(&self) -> Option<f64> {
        match *self {
            FlowClass::Regular => None,
            FlowClass::Deadline { deadline, .. } => Some(deadline),
        }
    }

    pub fn is_soft(&self) -> bool {
        matches!(
            self,
            FlowClass::Deadline {
                softness: Softness::Soft,
                ..
            }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    pub id: FlowId,
    pub arrival: f64,
    pub volume: f64,
    pub class: FlowClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SizeDistribution {
    Exponential { mean: f64 },
    Pareto { mean: f64, minimum: f64 },
}

impl SizeDistribution {
    pub fn mean(&self) -> f64 {
        match *self {
            SizeDistribution::Exponential { mean } | SizeDistribution::Pareto { mean, .. } => mean,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SizeDistribution::Exponential { mean } => {
                if !(mean > 0.0 && mean.is_finite()) {
                    return Err(Error::config("mean_size", format!("must be positive, got {mean}")));
                }
                Ok(())
            }
            SizeDistribution::Pareto { mean, minimum } => pareto_shape(mean, minimum).map(|_| ()),
        }
    }
}

/// Uniform multiplier range applied to a deadline flow's ideal transfer time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slack {
    pub low: f64,
    pub high: f64,
}

impl Default for Slack {
    fn default() -> Self {
        Slack { low: 1.0, high: 4.0 }
    }
}

impl Slack {
    pub fn validate(&self) -> Result<()> {
        if !(self.low >= 1.0) {
            return Err(Error::config(
                "slack.low",
                format!("must be at least 1 for deadlines to be feasible, got {}", self.low),
            ));
        }
        if !(self.high >= self.low && self.high.is_finite()) {
            return Err(Error::config(
                "slack.high",
                format!("must be finite and at least slack.low, got {}", self.high),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkloadConfig {
    pub arrival_rate: f64,
    pub flow_count: usize,
    pub size_distribution: SizeDistribution,
    /// Target fraction of traffic volume that is regular.
    pub regular_fraction: f64,
    pub slack: Slack,
    pub soft_threshold_multiplier: f64,
    /// Link capacity, used to turn volumes into ideal transfer times.
    pub capacity: f64,
    pub seed: u64,
}

impl Default for WorkloadConfig {
    fn default() -> Self {
        WorkloadConfig {
            arrival_rate: 0.1,
            flow_count: 10_000,
            size_distribution: SizeDistribution::Exponential { mean: 1.0 },
            regular_fraction: 0.5,
            slack: Slack::default(),
            soft_threshold_multiplier: 2.0,
            capacity: 1.0,
            seed: 0,
        }
    }
}

impl WorkloadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.arrival_rate > 0.0 && self.arrival_rate.is_finite()) {
            return Err(Error::config(
                "arrival_rate",
                format!("must be positive, got {}", self.arrival_rate),
            ));
        }
        if self.flow_count == 0 {
            return Err(Error::config("flow_count", "must be positive"));
        }
        if !(0.0..=1.0).contains(&self.regular_fraction) {
            return Err(Error::config(
                "regular_fraction",
                format!("must lie in [0, 1], got {}", self.regular_fraction),
            ));
        }
        if !(self.capacity > 0.0 && self.capacity.is_finite()) {
            return Err(Error::config("capacity", format!("must be positive, got {}", self.capacity)));
        }
        if !(self.soft_threshold_multiplier >= 0.0) {
            return Err(Error::config(
                "soft_threshold_multiplier",
                format!("must be non-negative, got {}", self.soft_threshold_multiplier),
            ));
        }
        self.size_distribution.validate()?;
        self.slack.validate()
    }
}

/// Poisson arrival times: `count` strictly increasing instants whose gaps are
/// i.i.d. exponential with mean `1 / rate`.
pub fn gen_arrivals<R: Rng + ?Sized>(rate: f64, count: usize, rng: &mut R) -> Result<Vec<f64>> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::config("arrival_rate", format!("must be positive, got {rate}")));
    }
    let mut times = Vec::with_capacity(count);
    let mut now = 0.0_f64;
    while times.len() < count {
        let u: f64 = rng.gen();
        let next = now - (1.0 - u).ln() / rate;
        // a zero-length gap would break strict ordering; redraw
        if next > now {
            now = next;
            times.push(now);
        }
    }
    Ok(times)
}

/// Pareto shape that gives the requested mean for the given minimum (scale).
pub fn pareto_shape(mean: f64, minimum: f64) -> Result<f64> {
    if !(minimum > 0.0 && minimum.is_finite()) {
        return Err(Error::config("pareto_min", format!("must be positive, got {minimum}")));
    }
    if !(mean > minimum && mean.is_finite()) {
        return Err(Error::config(
            "mean_size",
            format!("Pareto mean {mean} must exceed the minimum {minimum}"),
        ));
    }
    Ok(mean / (mean - minimum))
}

/// Inverse CDF of the size distribution at `u` in `[0, 1)`.
pub fn size_from_uniform(dist: &SizeDistribution, u: f64) -> Result<f64> {
    match *dist {
        SizeDistribution::Exponential { mean } => Ok(-mean * (1.0 - u).ln()),
        SizeDistribution::Pareto { mean, minimum } => {
            let shape = pareto_shape(mean, minimum)?;
            Ok(minimum * (1.0 - u).powf(-1.0 / shape))
        }
    }
}

pub fn sample_size<R: Rng + ?Sized>(dist: &SizeDistribution, rng: &mut R) -> Result<f64> {
    dist.validate()?;
    loop {
        let volume = size_from_uniform(dist, rng.gen())?;
        // Exponential at u = 0 yields exactly zero
        if volume > 0.0 {
            return Ok(volume);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassDraw {
    Regular,
    DeadlinePending,
}

pub fn assign_class<R: Rng + ?Sized>(rng: &mut R, regular_fraction: f64) -> ClassDraw {
    let u: f64 = rng.gen();
    if u < regular_fraction {
        ClassDraw::Regular
    } else {
        ClassDraw::DeadlinePending
    }
}

/// Deadline at `arrival + s * volume / capacity` with `s` uniform in the slack
/// range.
pub fn assign_deadline<R: Rng + ?Sized>(
    arrival: f64,
    volume: f64,
    capacity: f64,
    slack: Slack,
    rng: &mut R,
) -> Result<f64> {
    slack.validate()?;
    let u: f64 = rng.gen();
    Ok(deadline_from_uniform(arrival, volume, capacity, slack, u))
}

fn deadline_from_uniform(arrival: f64, volume: f64, capacity: f64, slack: Slack, u: f64) -> f64 {
    let s = if slack.high > slack.low {
        slack.low + (slack.high - slack.low) * u
    } else {
        slack.low
    };
    arrival + s * (volume / capacity)
}

/// Soft iff the volume is strictly greater than `multiplier * mean_size`.
pub fn classify_softness(volume: f64, mean_size: f64, multiplier: f64) -> Softness {
    if volume > multiplier * mean_size {
        Softness::Soft
    } else {
        Softness::Hard
    }
}

/// Builds the full workload for one replication. Every flow consumes the same
/// three draws (size, class, slack) so the size and arrival sequences are
/// shared across regular fractions for a given seed.
pub fn generate_workload(cfg: &WorkloadConfig) -> Result<Vec<FlowSpec>> {
    cfg.validate()?;
    let mut rng = workload_rng(cfg.seed);
    let arrivals = gen_arrivals(cfg.arrival_rate, cfg.flow_count, &mut rng)?;
    let mean = cfg.size_distribution.mean();
    let mut flows = Vec::with_capacity(cfg.flow_count);
    for (id, arrival) in arrivals.into_iter().enumerate() {
        let volume = sample_size(&cfg.size_distribution, &mut rng)?;
        let draw = assign_class(&mut rng, cfg.regular_fraction);
        let slack_u: f64 = rng.gen();
        let class = match draw {
            ClassDraw::Regular => FlowClass::Regular,
            ClassDraw::DeadlinePending => FlowClass::Deadline {
                deadline: deadline_from_uniform(arrival, volume, cfg.capacity, cfg.slack, slack_u),
                softness: classify_softness(volume, mean, cfg.soft_threshold_multiplier),
            },
        };
        flows.push(FlowSpec {
            id: id as FlowId,
            arrival,
            volume,
            class,
        });
    }
    Ok(flows)
}

/// Checks the workload invariants the engine relies on.
pub fn validate_workload(flows: &[FlowSpec]) -> Result<()> {
    let mut prev: Option<&FlowSpec> = None;
    for f in flows {
        if !(f.volume > 0.0 && f.volume.is_finite()) {
            return Err(Error::config("volume", format!("flow {} has volume {}", f.id, f.volume)));
        }
        if !(f.arrival >= 0.0 && f.arrival.is_finite()) {
            return Err(Error::config("arrival", format!("flow {} has arrival {}", f.id, f.arrival)));
        }
        if let Some(d) = f.class.deadline() {
            if !(d > f.arrival) {
                return Err(Error::config(
                    "deadline",
                    format!("flow {} deadline {} is not after its arrival {}", f.id, d, f.arrival),
                ));
            }
        }
        if let Some(p) = prev {
            if f.arrival < p.arrival || f.id <= p.id {
                return Err(Error::config(
                    "workload",
                    format!("flows must be sorted by arrival with increasing ids (flow {})", f.id),
                ));
            }
        }
        prev = Some(f);
    }
    Ok(())
}

impl fmt::Display for Softness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Softness::Soft => "soft",
            Softness::Hard => "hard",
        })
    }
}

impl FromStr for Softness {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "soft" => Ok(Softness::Soft),
            "hard" => Ok(Softness::Hard),
            other => Err(format!("unknown softness {other:?}")),
        }
    }
}

/// Text form of a flow: `id arrival volume class [deadline softness]`.
pub(crate) fn format_flow_fields(id: FlowId, arrival: f64, volume: f64, class: &FlowClass) -> String {
    match class {
        FlowClass::Regular => format!("{id} {arrival} {volume} regular"),
        FlowClass::Deadline { deadline, softness } => {
            format!("{id} {arrival} {volume} deadline {deadline} {softness}")
        }
    }
}

/// Parses the fields written by [`format_flow_fields`], returning the flow and
/// any trailing tokens.
pub(crate) fn parse_flow_fields<'a>(
    line_no: usize,
    tokens: &mut impl Iterator<Item = &'a str>,
) -> Result<FlowSpec> {
    let bad = |reason: String| Error::Parse {
        line: line_no,
        reason,
    };
    let mut next = |what: &str| tokens.next().ok_or_else(|| bad(format!("missing {what}")));
    let id: FlowId = next("id")?.parse().map_err(|e| bad(format!("id: {e}")))?;
    let arrival: f64 = next("arrival")?.parse().map_err(|e| bad(format!("arrival: {e}")))?;
    let volume: f64 = next("volume")?.parse().map_err(|e| bad(format!("volume: {e}")))?;
    let class = match next("class")? {
        "regular" => FlowClass::Regular,
        "deadline" => {
            let deadline: f64 = next("deadline")?.parse().map_err(|e| bad(format!("deadline: {e}")))?;
            let softness: Softness = next("softness")?.parse().map_err(bad)?;
            FlowClass::Deadline { deadline, softness }
        }
        other => return Err(bad(format!("unknown class {other:?}"))),
    };
    Ok(FlowSpec {
        id,
        arrival,
        volume,
        class,
    })
}

pub fn write_workload<W: Write>(flows: &[FlowSpec], mut out: W) -> Result<()> {
    for f in flows {
        writeln!(out, "{}", format_flow_fields(f.id, f.arrival, f.volume, &f.class))?;
    }
    Ok(())
}

/// Reads a workload dump. Blank lines and `#` comments are skipped.
pub fn read_workload<R: BufRead>(input: R) -> Result<Vec<FlowSpec>> {
    let mut flows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let flow = parse_flow_fields(i + 1, &mut tokens)?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: i + 1,
                reason: format!("unexpected trailing field {extra:?}"),
            });
        }
        flows.push(flow);
    }
    validate_workload(&flows)?;
    Ok(flows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> WorkloadRng {
        workload_rng(7)
    }

    #[test]
    fn zero_arrivals() {
        assert!(gen_arrivals(0.1, 0, &mut rng()).unwrap().is_empty());
    }

    #[test]
    fn arrivals_reject_bad_rate() {
        assert!(matches!(gen_arrivals(0.0, 3, &mut rng()), Err(Error::Config { .. })));
        assert!(matches!(gen_arrivals(-1.0, 3, &mut rng()), Err(Error::Config { .. })));
    }

    #[test]
    fn arrival_gap_means() {
        for rate in [0.1, 1.0] {
            let times = gen_arrivals(rate, 10_000, &mut rng()).unwrap();
            assert_eq!(times.len(), 10_000);
            assert!(times.windows(2).all(|w| w[1] > w[0]));
            assert!(times[0] > 0.0);
            let mean_gap = times[times.len() - 1] / times.len() as f64;
            let expected = 1.0 / rate;
            assert!(
                (mean_gap - expected).abs() <= 0.03 * expected,
                "rate {rate}: mean gap {mean_gap}"
            );
        }
    }

    #[test]
    fn pareto_shape_values() {
        assert!((pareto_shape(1.0, 0.1).unwrap() - 10.0 / 9.0).abs() < 1e-12);
        assert_eq!(pareto_shape(1.0, 0.5).unwrap(), 2.0);
        assert!(pareto_shape(1.0, 1.0).is_err());
        assert!(pareto_shape(1.0, 2.0).is_err());
        assert!(pareto_shape(1.0, 0.0).is_err());
    }

    #[test]
    fn pareto_shape_reproduces_mean() {
        for (mean, min) in [(1.0, 0.1), (1.0, 0.5), (3.0, 0.2)] {
            let a = pareto_shape(mean, min).unwrap();
            assert!((a * min / (a - 1.0) - mean).abs() < 1e-12);
            assert!(a > 1.0);
        }
    }

    #[test]
    fn pareto_inverse_cdf_at_zero_is_minimum() {
        let d = SizeDistribution::Pareto {
            mean: 1.0,
            minimum: 0.1,
        };
        assert_eq!(size_from_uniform(&d, 0.0).unwrap(), 0.1);
    }

    #[test]
    fn exponential_sample_mean() {
        let d = SizeDistribution::Exponential { mean: 1.0 };
        let mut r = rng();
        let n = 100_000;
        let sum: f64 = (0..n).map(|_| sample_size(&d, &mut r).unwrap()).sum();
        let mean = sum / n as f64;
        assert!((mean - 1.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn pareto_finite_variance_sample_mean() {
        // shape 2: the sample mean concentrates like an ordinary average
        let d = SizeDistribution::Pareto {
            mean: 1.0,
            minimum: 0.5,
        };
        let mut r = rng();
        let n = 1_000_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let v = sample_size(&d, &mut r).unwrap();
            assert!(v >= 0.5);
            sum += v;
        }
        let mean = sum / n as f64;
        assert!((mean - 1.0).abs() < 0.03, "mean {mean}");
    }

    #[test]
    fn pareto_heavy_tail_matches_closed_forms() {
        // With shape 10/9 a plain sample mean falls short by roughly n^-0.1, so
        // check the median and a truncated mean, both of which have closed forms.
        let (mean, minimum) = (1.0, 0.1);
        let d = SizeDistribution::Pareto { mean, minimum };
        let a = pareto_shape(mean, minimum).unwrap();
        let cap = 100.0;
        let mut r = rng();
        let n = 1_000_000;
        let mut samples = Vec::with_capacity(n);
        let mut truncated = 0.0;
        for _ in 0..n {
            let v = sample_size(&d, &mut r).unwrap();
            assert!(v >= minimum);
            truncated += v.min(cap);
            samples.push(v);
        }
        samples.sort_by(f64::total_cmp);
        let median = samples[n / 2];
        let want_median = minimum * 2f64.powf(1.0 / a);
        assert!((median - want_median).abs() < 0.01 * want_median, "median {median}");
        // E[min(X, c)] = m * (a - (m/c)^(a-1)) / (a - 1)
        let want = minimum * (a - (minimum / cap).powf(a - 1.0)) / (a - 1.0);
        let got = truncated / n as f64;
        assert!((got - want).abs() < 0.02 * want, "truncated mean {got} vs {want}");
    }

    #[test]
    fn class_boundaries() {
        let mut r = rng();
        assert!((0..1000).all(|_| assign_class(&mut r, 0.0) == ClassDraw::DeadlinePending));
        assert!((0..1000).all(|_| assign_class(&mut r, 1.0) == ClassDraw::Regular));
    }

    #[test]
    fn class_volume_fraction() {
        let cfg = WorkloadConfig {
            regular_fraction: 0.3,
            ..WorkloadConfig::default()
        };
        let flows = generate_workload(&cfg).unwrap();
        let total: f64 = flows.iter().map(|f| f.volume).sum();
        let regular: f64 = flows
            .iter()
            .filter(|f| f.class == FlowClass::Regular)
            .map(|f| f.volume)
            .sum();
        let frac = regular / total;
        assert!((frac - 0.3).abs() <= 0.03, "fraction {frac}");
    }

    #[test]
    fn deadline_examples() {
        let mut r = rng();
        let d = assign_deadline(0.0, 2.0, 1.0, Slack { low: 1.0, high: 1.0 }, &mut r).unwrap();
        assert_eq!(d, 2.0);
        let d = assign_deadline(5.0, 1.0, 1.0, Slack { low: 2.0, high: 2.0 }, &mut r).unwrap();
        assert_eq!(d, 7.0);
        assert!(assign_deadline(0.0, 1.0, 1.0, Slack { low: 0.5, high: 2.0 }, &mut r).is_err());
    }

    #[test]
    fn deadline_uniform_mean() {
        let mut r = rng();
        let slack = Slack { low: 1.0, high: 4.0 };
        let n = 10_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let d = assign_deadline(0.0, 1.0, 1.0, slack, &mut r).unwrap();
            assert!((1.0..=4.0).contains(&d));
            sum += d;
        }
        // s ~ U[1, 4] times an ideal transfer time of 1
        let mean = sum / n as f64;
        assert!((mean - 2.5).abs() < 0.03 * 2.5, "mean {mean}");
    }

    #[test]
    fn softness_boundary() {
        assert_eq!(classify_softness(2.5, 1.0, 2.0), Softness::Soft);
        assert_eq!(classify_softness(1.5, 1.0, 2.0), Softness::Hard);
        assert_eq!(classify_softness(2.0, 1.0, 2.0), Softness::Hard);
    }

    #[test]
    fn workload_is_deterministic_and_valid() {
        let cfg = WorkloadConfig {
            flow_count: 2000,
            size_distribution: SizeDistribution::Pareto {
                mean: 1.0,
                minimum: 0.1,
            },
            seed: 42,
            ..WorkloadConfig::default()
        };
        let a = generate_workload(&cfg).unwrap();
        let b = generate_workload(&cfg).unwrap();
        assert_eq!(a, b);
        validate_workload(&a).unwrap();
        for f in &a {
            assert!(f.volume >= 0.1);
            if let FlowClass::Deadline { deadline, softness } = f.class {
                assert!(deadline >= f.arrival + f.volume);
                assert_eq!(softness == Softness::Soft, f.volume > 2.0);
            }
        }
    }

    #[test]
    fn workload_text_round_trip() {
        let cfg = WorkloadConfig {
            flow_count: 50,
            seed: 3,
            ..WorkloadConfig::default()
        };
        let flows = generate_workload(&cfg).unwrap();
        let mut buf = Vec::new();
        write_workload(&flows, &mut buf).unwrap();
        let back = read_workload(buf.as_slice()).unwrap();
        assert_eq!(flows, back);
    }

    #[test]
    fn workload_text_rejects_garbage() {
        let err = read_workload("0 1.0 2.0 bulk\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_workload("0 1.0 2.0 deadline 0.5 soft\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Config { field: "deadline", .. }));
        let err = read_workload("0 1.0 2.0 regular extra\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn config_validation_names_fields() {
        let cfg = WorkloadConfig {
            regular_fraction: 1.5,
            ..WorkloadConfig::default()
        };
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config {
                field: "regular_fraction",
                ..
            })
        ));
        let cfg = WorkloadConfig {
            slack: Slack { low: 0.9, high: 2.0 },
            ..WorkloadConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Config { field: "slack.low", .. })));
    }
}
