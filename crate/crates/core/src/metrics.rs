//! Flow completion time, deadline miss rate and lateness.
//!
//! FCT statistics cover regular flows only; miss rate covers every deadline
//! flow and lateness covers soft-deadline flows. Each figure is `None` when
//! the class it is computed over is empty.

use serde::{Deserialize, Serialize};

use crate::engine::CompletionRecord;
use crate::error::{Error, Result};
use crate::traffic::FlowClass;

pub const DEFAULT_TAIL_PERCENTILE: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FctStats {
    pub afct: f64,
    pub mfct: f64,
    pub tfct: f64,
}

/// Completion of a deadline flow against its deadline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeadlineOutcome {
    pub completion: f64,
    pub deadline: f64,
}

impl DeadlineOutcome {
    /// Finishing exactly at the deadline counts as met.
    pub fn missed(&self) -> bool {
        self.completion > self.deadline
    }

    pub fn lateness(&self) -> f64 {
        (self.completion - self.deadline).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub regular: usize,
    pub deadline: usize,
    pub soft_deadline: usize,
    pub missed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub afct: Option<f64>,
    pub mfct: Option<f64>,
    pub tfct: Option<f64>,
    pub dmr: Option<f64>,
    pub avg_lateness: Option<f64>,
    pub counts: ClassCounts,
}

/// 1-based nearest rank `ceil(p * n)`, clamped to `[1, n]`.
fn nearest_rank(p: f64, n: usize) -> usize {
    let x = p * n as f64;
    // 0.99 * 100 must land on 99, not 100
    let rank = if (x - x.round()).abs() < 1e-9 { x.round() } else { x.ceil() };
    (rank as usize).clamp(1, n)
}

/// Mean, median and nearest-rank tail percentile of a set of FCTs.
pub fn fct_stats(fcts: &[f64], tail_percentile: f64) -> Option<FctStats> {
    if fcts.is_empty() {
        return None;
    }
    let mut sorted = fcts.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let afct = sorted.iter().sum::<f64>() / n as f64;
    let mfct = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let tfct = sorted[nearest_rank(tail_percentile, n) - 1];
    Some(FctStats { afct, mfct, tfct })
}

pub fn deadline_miss_rate(outcomes: &[DeadlineOutcome]) -> Option<f64> {
    if outcomes.is_empty() {
        return None;
    }
    let missed = outcomes.iter().filter(|o| o.missed()).count();
    Some(missed as f64 / outcomes.len() as f64)
}

/// Mean of `max(0, C - D)` over all given flows; met deadlines count as zero.
pub fn average_lateness(outcomes: &[DeadlineOutcome]) -> Option<f64> {
    if outcomes.is_empty() {
        return None;
    }
    Some(outcomes.iter().map(DeadlineOutcome::lateness).sum::<f64>() / outcomes.len() as f64)
}

/// Divides every value by the smallest one.
pub fn normalize_by_minimum(values: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::config(
            "normalize",
            format!("values must be positive and finite, got {bad}"),
        ));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(values.iter().map(|v| v / min).collect())
}

impl MetricsReport {
    pub fn from_records(records: &[CompletionRecord], tail_percentile: f64) -> Self {
        let mut fcts = Vec::new();
        let mut deadline = Vec::new();
        let mut soft = Vec::new();
        for r in records {
            match r.class {
                FlowClass::Regular => fcts.push(r.fct()),
                FlowClass::Deadline { deadline: d, .. } => {
                    let o = DeadlineOutcome {
                        completion: r.completion,
                        deadline: d,
                    };
                    if r.class.is_soft() {
                        soft.push(o);
                    }
                    deadline.push(o);
                }
            }
        }
        let stats = fct_stats(&fcts, tail_percentile);
        MetricsReport {
            afct: stats.map(|s| s.afct),
            mfct: stats.map(|s| s.mfct),
            tfct: stats.map(|s| s.tfct),
            dmr: deadline_miss_rate(&deadline),
            avg_lateness: average_lateness(&soft),
            counts: ClassCounts {
                regular: fcts.len(),
                deadline: deadline.len(),
                soft_deadline: soft.len(),
                missed: deadline.iter().filter(|o| o.missed()).count(),
            },
        }
    }

    /// The five headline figures in CSV column order.
    pub fn values(&self) -> [Option<f64>; 5] {
        [self.afct, self.mfct, self.tfct, self.dmr, self.avg_lateness]
    }
}
