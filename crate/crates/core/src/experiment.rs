//! Grid sweeps over policy, traffic mix, size distribution and load.
//!
//! Replication `r` of every cell draws its workload from seed
//! `base_seed + r`, so all policies within a (distribution, rate, fraction)
//! group are compared on identical traffic. Units run in parallel; results are
//! put back in grid order, so output does not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{self, SimConfig};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricsReport};
use crate::policy::PolicyKind;
use crate::traffic::{self, FlowClass, FlowSpec, SizeDistribution, Slack, WorkloadConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistributionKind {
    #[serde(alias = "exp")]
    Exponential,
    Pareto,
}

impl DistributionKind {
    /// Short name used on the command line and in output file names.
    pub fn short_name(self) -> &'static str {
        match self {
            DistributionKind::Exponential => "exp",
            DistributionKind::Pareto => "pareto",
        }
    }

    pub fn with_mean(self, mean: f64, pareto_min: f64) -> SizeDistribution {
        match self {
            DistributionKind::Exponential => SizeDistribution::Exponential { mean },
            DistributionKind::Pareto => SizeDistribution::Pareto {
                mean,
                minimum: pareto_min,
            },
        }
    }
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" | "exponential" => Ok(DistributionKind::Exponential),
            "pareto" => Ok(DistributionKind::Pareto),
            other => Err(Error::config("dist", format!("unknown distribution {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub policies: Vec<PolicyKind>,
    pub regular_fractions: Vec<f64>,
    pub distributions: Vec<DistributionKind>,
    pub arrival_rates: Vec<f64>,
    pub flow_count: usize,
    pub repetitions: usize,
    pub base_seed: u64,
    pub delta: f64,
    pub capacity: f64,
    pub mean_size: f64,
    pub pareto_min: f64,
    pub slack: Slack,
    pub soft_multiplier: f64,
    pub tail_percentile: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            policies: PolicyKind::ALL.to_vec(),
            regular_fractions: (1..=9).map(|k| f64::from(k) / 10.0).collect(),
            distributions: vec![DistributionKind::Exponential, DistributionKind::Pareto],
            arrival_rates: vec![0.1, 1.0],
            flow_count: 10_000,
            repetitions: 20,
            base_seed: 1,
            delta: 0.1,
            capacity: 1.0,
            mean_size: 1.0,
            pareto_min: 0.1,
            slack: Slack::default(),
            soft_multiplier: 2.0,
            tail_percentile: metrics::DEFAULT_TAIL_PERCENTILE,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        fn non_empty<T>(field: &'static str, v: &[T]) -> Result<()> {
            if v.is_empty() {
                return Err(Error::config(field, "must not be empty"));
            }
            Ok(())
        }
        non_empty("policies", &self.policies)?;
        non_empty("regular_fractions", &self.regular_fractions)?;
        non_empty("distributions", &self.distributions)?;
        non_empty("arrival_rates", &self.arrival_rates)?;
        if self.repetitions == 0 {
            return Err(Error::config("repetitions", "must be at least 1"));
        }
        if !(self.tail_percentile > 0.0 && self.tail_percentile <= 1.0) {
            return Err(Error::config(
                "tail_percentile",
                format!("must lie in (0, 1], got {}", self.tail_percentile),
            ));
        }
        self.sim_config(PolicyKind::Fcfs).validate()?;
        for &dist in &self.distributions {
            for &rate in &self.arrival_rates {
                for &fraction in &self.regular_fractions {
                    self.workload_config(dist, rate, fraction, 0).validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.policies.len() * self.regular_fractions.len() * self.distributions.len() * self.arrival_rates.len()
    }

    pub fn workload_config(
        &self,
        dist: DistributionKind,
        arrival_rate: f64,
        regular_fraction: f64,
        replication: usize,
    ) -> WorkloadConfig {
        WorkloadConfig {
            arrival_rate,
            flow_count: self.flow_count,
            size_distribution: dist.with_mean(self.mean_size, self.pareto_min),
            regular_fraction,
            slack: self.slack,
            soft_threshold_multiplier: self.soft_multiplier,
            capacity: self.capacity,
            seed: self.base_seed.wrapping_add(replication as u64),
        }
    }

    pub fn sim_config(&self, policy: PolicyKind) -> SimConfig {
        SimConfig {
            capacity: self.capacity,
            slot_length: self.delta,
            policy,
        }
    }
}

/// Order-sensitive FNV-1a hash of a workload's exact bit patterns.
pub fn workload_hash(flows: &[FlowSpec]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |word: u64| {
        for b in word.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    };
    for f in flows {
        feed(f.id);
        feed(f.arrival.to_bits());
        feed(f.volume.to_bits());
        match f.class {
            FlowClass::Regular => feed(0),
            FlowClass::Deadline { deadline, softness } => {
                feed(1 + softness as u64);
                feed(deadline.to_bits());
            }
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationResult {
    pub replication: usize,
    pub seed: u64,
    pub workload_hash: u64,
    pub metrics: MetricsReport,
}

/// Across-replication means; `None` when no replication produced the figure.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AggregateMetrics {
    pub afct: Option<f64>,
    pub mfct: Option<f64>,
    pub tfct: Option<f64>,
    pub dmr: Option<f64>,
    pub avg_lateness: Option<f64>,
}

impl AggregateMetrics {
    pub fn mean_of<'a>(reports: impl IntoIterator<Item = &'a MetricsReport>) -> Self {
        let mut sums = [0.0; 5];
        let mut counts = [0usize; 5];
        for r in reports {
            for (k, v) in r.values().into_iter().enumerate() {
                if let Some(v) = v {
                    sums[k] += v;
                    counts[k] += 1;
                }
            }
        }
        let mean = |k: usize| (counts[k] > 0).then(|| sums[k] / counts[k] as f64);
        AggregateMetrics {
            afct: mean(0),
            mfct: mean(1),
            tfct: mean(2),
            dmr: mean(3),
            avg_lateness: mean(4),
        }
    }

    pub fn values(&self) -> [Option<f64>; 5] {
        [self.afct, self.mfct, self.tfct, self.dmr, self.avg_lateness]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCellResult {
    pub policy: PolicyKind,
    pub distribution: DistributionKind,
    pub arrival_rate: f64,
    pub regular_fraction: f64,
    pub replications: Vec<ReplicationResult>,
    pub mean: AggregateMetrics,
}

impl GridCellResult {
    fn sort_key(&self) -> (DistributionKind, u64, u64, PolicyKind) {
        (
            self.distribution,
            self.arrival_rate.to_bits(),
            self.regular_fraction.to_bits(),
            self.policy,
        )
    }
}

/// Runs every (policy, fraction, distribution, rate) cell of the grid.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<GridCellResult>> {
    config.validate()?;
    let mut units = Vec::new();
    for &dist in &config.distributions {
        for &rate in &config.arrival_rates {
            for &fraction in &config.regular_fractions {
                for rep in 0..config.repetitions {
                    units.push((dist, rate, fraction, rep));
                }
            }
        }
    }

    let outcomes: Vec<Vec<(PolicyKind, ReplicationResult)>> = units
        .par_iter()
        .map(|&(dist, rate, fraction, rep)| {
            let wcfg = config.workload_config(dist, rate, fraction, rep);
            let flows = traffic::generate_workload(&wcfg)?;
            let hash = workload_hash(&flows);
            config
                .policies
                .iter()
                .map(|&policy| {
                    let records = engine::run(&flows, &config.sim_config(policy))?;
                    Ok((
                        policy,
                        ReplicationResult {
                            replication: rep,
                            seed: wcfg.seed,
                            workload_hash: hash,
                            metrics: MetricsReport::from_records(&records, config.tail_percentile),
                        },
                    ))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut cells: BTreeMap<(usize, usize, usize, usize), GridCellResult> = BTreeMap::new();
    for (&(dist, rate, fraction, _), per_policy) in units.iter().zip(outcomes) {
        let d = config.distributions.iter().position(|&x| x == dist).unwrap_or(0);
        let r = config.arrival_rates.iter().position(|&x| x == rate).unwrap_or(0);
        let f = config.regular_fractions.iter().position(|&x| x == fraction).unwrap_or(0);
        for (p, (policy, rep)) in per_policy.into_iter().enumerate() {
            cells
                .entry((d, r, f, p))
                .or_insert_with(|| GridCellResult {
                    policy,
                    distribution: dist,
                    arrival_rate: rate,
                    regular_fraction: fraction,
                    replications: Vec::with_capacity(config.repetitions),
                    mean: AggregateMetrics::default(),
                })
                .replications
                .push(rep);
        }
    }
    let mut results: Vec<GridCellResult> = cells
        .into_values()
        .map(|mut cell| {
            cell.mean = AggregateMetrics::mean_of(cell.replications.iter().map(|r| &r.metrics));
            cell
        })
        .collect();
    results.sort_by(|a, b| {
        a.sort_key()
            .partial_cmp(&b.sort_key())
            .expect("keys are totally ordered")
    });
    Ok(results)
}

/// `%g`-style formatting with six significant digits.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(format_sig6).unwrap_or_default()
}

pub const CSV_HEADER: &str =
    "policy,distribution,arrival_rate,regular_fraction,afct,mfct,tfct,dmr,avg_lateness,afct_norm,mfct_norm,tfct_norm";

/// Per-cell normalized AFCT/MFCT/TFCT, each divided by the smallest value among
/// the policies sharing its (distribution, rate, fraction) group.
fn normalized(results: &[GridCellResult]) -> Vec<[Option<f64>; 3]> {
    let mut out = vec![[None; 3]; results.len()];
    let mut groups: BTreeMap<(DistributionKind, u64, u64), Vec<usize>> = BTreeMap::new();
    for (i, c) in results.iter().enumerate() {
        groups
            .entry((c.distribution, c.arrival_rate.to_bits(), c.regular_fraction.to_bits()))
            .or_default()
            .push(i);
    }
    for members in groups.values() {
        for k in 0..3 {
            let present: Vec<(usize, f64)> = members
                .iter()
                .filter_map(|&i| results[i].mean.values()[k].map(|v| (i, v)))
                .collect();
            let values: Vec<f64> = present.iter().map(|&(_, v)| v).collect();
            if let Ok(norm) = metrics::normalize_by_minimum(&values) {
                for (&(i, _), n) in present.iter().zip(norm) {
                    out[i][k] = Some(n);
                }
            }
        }
    }
    out
}

/// CSV of across-replication means, sorted by (distribution, rate, fraction,
/// policy). Missing figures are empty fields.
pub fn emit_csv(results: &[GridCellResult]) -> String {
    let mut sorted: Vec<&GridCellResult> = results.iter().collect();
    sorted.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).expect("total order"));
    let owned: Vec<GridCellResult> = sorted.into_iter().cloned().collect();
    let norms = normalized(&owned);
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (c, norm) in owned.iter().zip(norms) {
        let mut fields = vec![
            c.policy.name().to_string(),
            c.distribution.short_name().to_string(),
            c.arrival_rate.to_string(),
            c.regular_fraction.to_string(),
        ];
        fields.extend(c.mean.values().into_iter().map(fmt_opt));
        fields.extend(norm.into_iter().map(fmt_opt));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// One row per (cell, replication), for verbose output.
pub fn emit_replication_csv(results: &[GridCellResult]) -> String {
    let mut out = String::from(
        "policy,distribution,arrival_rate,regular_fraction,replication,seed,workload_hash,afct,mfct,tfct,dmr,avg_lateness\n",
    );
    for c in results {
        for r in &c.replications {
            let mut fields = vec![
                c.policy.name().to_string(),
                c.distribution.short_name().to_string(),
                c.arrival_rate.to_string(),
                c.regular_fraction.to_string(),
                r.replication.to_string(),
                r.seed.to_string(),
                format!("{:016x}", r.workload_hash),
            ];
            fields.extend(r.metrics.values().into_iter().map(fmt_opt));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
    }
    out
}

/// A parsed row of [`emit_csv`] output.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub policy: PolicyKind,
    pub distribution: DistributionKind,
    pub arrival_rate: f64,
    pub regular_fraction: f64,
    /// afct, mfct, tfct, dmr, avg_lateness
    pub values: [Option<f64>; 5],
    /// afct_norm, mfct_norm, tfct_norm
    pub normalized: [Option<f64>; 3],
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                reason: "missing or unexpected header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| Error::Parse { line: i + 1, reason };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(bad(format!("expected 12 fields, found {}", fields.len())));
        }
        let num = |s: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|e| bad(format!("{s:?}: {e}")))
            }
        };
        let required = |s: &str| num(s)?.ok_or_else(|| bad("empty coordinate".into()));
        rows.push(CsvRow {
            policy: fields[0].parse()?,
            distribution: fields[1].parse()?,
            arrival_rate: required(fields[2])?,
            regular_fraction: required(fields[3])?,
            values: [num(fields[4])?, num(fields[5])?, num(fields[6])?, num(fields[7])?, num(fields[8])?],
            normalized: [num(fields[9])?, num(fields[10])?, num(fields[11])?],
        });
    }
    Ok(rows)
}

/// Writes one `<dist>_<rate>.csv` per (distribution, arrival rate) pair.
pub fn write_outputs(results: &[GridCellResult], dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut groups: BTreeMap<(DistributionKind, u64), Vec<GridCellResult>> = BTreeMap::new();
    for c in results {
        groups
            .entry((c.distribution, c.arrival_rate.to_bits()))
            .or_default()
            .push(c.clone());
    }
    let mut paths = Vec::new();
    for ((dist, rate_bits), cells) in groups {
        let path = dir.join(format!("{}_{}.csv", dist.short_name(), f64::from_bits(rate_bits)));
        fs::write(&path, emit_csv(&cells))?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::ClassCounts;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            policies: vec![PolicyKind::Fcfs, PolicyKind::Srpt],
            regular_fractions: vec![0.3, 0.7],
            distributions: vec![DistributionKind::Exponential],
            arrival_rates: vec![0.5],
            flow_count: 200,
            repetitions: 3,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn sig6_formatting() {
        assert_eq!(format_sig6(1.0), "1");
        assert_eq!(format_sig6(1.0 / 0.9), "1.11111");
        assert_eq!(format_sig6(123456.7), "123457");
        assert_eq!(format_sig6(1234567.0), "1.23457e+06");
        assert_eq!(format_sig6(0.000123456789), "0.000123457");
        assert_eq!(format_sig6(0.0000123456789), "1.23457e-05");
        assert_eq!(format_sig6(0.5), "0.5");
        assert_eq!(format_sig6(0.0), "0");
    }

    #[test]
    fn grid_arithmetic() {
        let cfg = ExperimentConfig {
            policies: vec![PolicyKind::Fcfs, PolicyKind::Srpt],
            distributions: vec![DistributionKind::Exponential],
            arrival_rates: vec![0.1],
            ..ExperimentConfig::default()
        };
        assert_eq!(cfg.cell_count(), 18);
        assert_eq!(cfg.cell_count() * cfg.repetitions, 360);
        assert_eq!(ExperimentConfig::default().cell_count(), 252);
    }

    #[test]
    fn small_grid_runs_and_pairs_workloads() {
        let cfg = small_config();
        let results = run_experiment(&cfg).unwrap();
        assert_eq!(results.len(), cfg.cell_count());
        for c in &results {
            assert_eq!(c.replications.len(), cfg.repetitions);
            let mean_afct = c.replications.iter().map(|r| r.metrics.afct.unwrap()).sum::<f64>()
                / cfg.repetitions as f64;
            assert!((c.mean.afct.unwrap() - mean_afct).abs() < 1e-9);
        }
        // every policy sees the same workload per replication
        for pair in results.chunks(2) {
            for (a, b) in pair[0].replications.iter().zip(&pair[1].replications) {
                assert_eq!(a.workload_hash, b.workload_hash);
                assert_eq!(a.seed, b.seed);
            }
        }
    }

    #[test]
    fn csv_is_deterministic_and_round_trips() {
        let cfg = ExperimentConfig {
            repetitions: 1,
            ..small_config()
        };
        let a = emit_csv(&run_experiment(&cfg).unwrap());
        let results = run_experiment(&cfg).unwrap();
        let b = emit_csv(&results);
        assert_eq!(a, b);
        let rows = parse_csv(&b).unwrap();
        assert_eq!(rows.len(), results.len());
        for (row, cell) in rows.iter().zip(&results) {
            assert_eq!(row.policy, cell.policy);
            for (parsed, mean) in row.values.iter().zip(cell.mean.values()) {
                let printed = mean.map(|m| format_sig6(m).parse::<f64>().unwrap());
                assert_eq!(*parsed, printed);
            }
        }
    }

    fn cell(policy: PolicyKind, afct: Option<f64>) -> GridCellResult {
        GridCellResult {
            policy,
            distribution: DistributionKind::Exponential,
            arrival_rate: 0.1,
            regular_fraction: 0.5,
            replications: Vec::new(),
            mean: AggregateMetrics {
                afct,
                mfct: afct,
                tfct: afct,
                dmr: Some(0.0),
                avg_lateness: None,
            },
        }
    }

    #[test]
    fn csv_normalization_and_missing_values() {
        let one = emit_csv(&[cell(PolicyKind::Fcfs, Some(3.0))]);
        let rows = parse_csv(&one).unwrap();
        assert_eq!(rows[0].normalized, [Some(1.0); 3]);
        assert_eq!(rows[0].values[4], None);
        assert!(one.lines().nth(1).unwrap().ends_with(",0,,1,1,1"));

        let two = emit_csv(&[cell(PolicyKind::Srpt, Some(4.0)), cell(PolicyKind::Fcfs, Some(2.0))]);
        let rows = parse_csv(&two).unwrap();
        assert_eq!(rows[0].policy, PolicyKind::Fcfs);
        assert_eq!(rows[0].normalized[0], Some(1.0));
        assert_eq!(rows[1].normalized[0], Some(2.0));

        let missing = emit_csv(&[cell(PolicyKind::Fcfs, None)]);
        let rows = parse_csv(&missing).unwrap();
        assert_eq!(rows[0].values[0], None);
        assert_eq!(rows[0].normalized[0], None);
    }

    #[test]
    fn aggregates_skip_missing_replications() {
        let report = |afct| MetricsReport {
            afct,
            mfct: None,
            tfct: None,
            dmr: None,
            avg_lateness: None,
            counts: ClassCounts::default(),
        };
        let agg = AggregateMetrics::mean_of(&[report(Some(1.0)), report(None), report(Some(3.0))]);
        assert_eq!(agg.afct, Some(2.0));
        assert_eq!(agg.dmr, None);
    }

    #[test]
    fn config_json_and_validation() {
        let cfg = ExperimentConfig::from_json(r#"{"policies": ["srpt", "fair"], "distributions": ["exp"], "repetitions": 2}"#)
            .unwrap();
        assert_eq!(cfg.policies, [PolicyKind::Srpt, PolicyKind::FairSharing]);
        assert_eq!(cfg.distributions, [DistributionKind::Exponential]);
        assert_eq!(cfg.flow_count, 10_000);

        let err = ExperimentConfig::from_json(r#"{"policies": []}"#).unwrap_err();
        assert!(matches!(err, Error::Config { field: "policies", .. }));
        let err = ExperimentConfig::from_json(r#"{"repetitions": 0}"#).unwrap_err();
        assert!(matches!(err, Error::Config { field: "repetitions", .. }));
        let err = ExperimentConfig::from_json(r#"{"delta": 0}"#).unwrap_err();
        assert!(matches!(err, Error::Config { field: "delta", .. }));
        assert!(ExperimentConfig::from_json(r#"{"policies": ["lifo"]}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn output_files_per_distribution_and_rate() {
        let cfg = ExperimentConfig {
            distributions: vec![DistributionKind::Exponential, DistributionKind::Pareto],
            arrival_rates: vec![0.1, 1.0],
            regular_fractions: vec![0.5],
            repetitions: 1,
            flow_count: 50,
            ..small_config()
        };
        let results = run_experiment(&cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let paths = write_outputs(&results, dir.path()).unwrap();
        let names: Vec<String> = paths
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(names, ["exp_0.1.csv", "exp_1.csv", "pareto_0.1.csv", "pareto_1.csv"]);
        for p in paths {
            let rows = parse_csv(&fs::read_to_string(p).unwrap()).unwrap();
            assert_eq!(rows.len(), 2);
        }
    }
}
