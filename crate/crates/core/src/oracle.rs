//! Exact event-driven reference scheduler.
//!
//! Rates are piecewise constant between events (an arrival or a completion).
//! Serial policies give the whole link to the head of their priority order;
//! fair sharing splits it equally. The next event time is computed in closed
//! form, so completions are exact up to floating-point rounding. Used to check
//! the slotted engine; it is far slower on large workloads.

use crate::engine::CompletionRecord;
use crate::error::{Error, Result};
use crate::policy::{self, ActiveFlow, PolicyKind};
use crate::traffic::{self, FlowSpec};

pub fn simulate_exact(workload: &[FlowSpec], policy: PolicyKind, capacity: f64) -> Result<Vec<CompletionRecord>> {
    traffic::validate_workload(workload)?;
    if !(capacity > 0.0 && capacity.is_finite()) {
        return Err(Error::config("capacity", format!("must be positive, got {capacity}")));
    }
    let mut now = 0.0_f64;
    let mut next = 0;
    let mut active: Vec<ActiveFlow> = Vec::new();
    let mut volumes: Vec<f64> = Vec::new();
    let mut records = Vec::with_capacity(workload.len());

    while next < workload.len() || !active.is_empty() {
        if active.is_empty() {
            now = now.max(workload[next].arrival);
        }
        while next < workload.len() && workload[next].arrival <= now {
            let f = &workload[next];
            active.push(ActiveFlow {
                id: f.id,
                arrival: f.arrival,
                remaining: f.volume,
                class: f.class,
            });
            volumes.push(f.volume);
            next += 1;
        }

        let rates = rates(policy, &active, capacity);
        let next_arrival = workload.get(next).map_or(f64::INFINITY, |f| f.arrival - now);
        let (first_done, until_done) = active
            .iter()
            .zip(&rates)
            .enumerate()
            .filter(|(_, (_, &r))| r > 0.0)
            .map(|(i, (f, &r))| (i, f.remaining / r))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("a non-empty active set always has a served flow");

        if next_arrival < until_done {
            for (f, &r) in active.iter_mut().zip(&rates) {
                f.remaining -= r * next_arrival;
            }
            now += next_arrival;
            continue;
        }

        let end = now + until_done;
        let mut finished = vec![false; active.len()];
        for (i, (f, &r)) in active.iter_mut().zip(&rates).enumerate() {
            if r == 0.0 {
                continue;
            }
            // flows sharing the link at equal rates may finish together
            let done = i == first_done || f.remaining / r <= until_done * (1.0 + 1e-12);
            if done {
                finished[i] = true;
                f.remaining = 0.0;
            } else {
                f.remaining -= r * until_done;
            }
        }
        for i in (0..active.len()).rev() {
            if finished[i] {
                let f = active.remove(i);
                let volume = volumes.remove(i);
                records.push(CompletionRecord {
                    id: f.id,
                    arrival: f.arrival,
                    volume,
                    class: f.class,
                    completion: end,
                });
            }
        }
        now = end;
    }
    records.sort_by_key(|r| r.id);
    Ok(records)
}

/// Rates with unbounded per-flow demand.
fn rates(policy: PolicyKind, active: &[ActiveFlow], capacity: f64) -> Vec<f64> {
    let mut rates = vec![0.0; active.len()];
    match policy::priority_order(policy, active) {
        Some(order) => {
            if let Some(&head) = order.first() {
                rates[head] = capacity;
            }
        }
        None => {
            let share = capacity / active.len() as f64;
            rates.iter_mut().for_each(|r| *r = share);
        }
    }
    rates
}
