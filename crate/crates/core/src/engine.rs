//! Slotted simulation of a single bottleneck link.
//!
//! Time advances in slots of length `slot_length`. At each slot boundary the
//! flows that have arrived become visible, the policy computes one allocation
//! and every active flow is served at its rate for the whole slot. A flow that
//! finishes inside a slot is timestamped at the instant its last unit leaves
//! the link under the policy's intra-slot service order.

use std::collections::VecDeque;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::{self, ActiveFlow, Allocation, PolicyKind};
use crate::traffic::{self, FlowClass, FlowId, FlowSpec};

/// Remaining volume below this is treated as delivered.
pub const ZERO_GUARD: f64 = 1e-12;

/// Largest negative remaining tolerated before flagging an accounting bug.
const NEGATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub capacity: f64,
    pub slot_length: f64,
    pub policy: PolicyKind,
}

impl SimConfig {
    pub fn new(policy: PolicyKind) -> Self {
        SimConfig {
            capacity: 1.0,
            slot_length: 0.1,
            policy,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.capacity > 0.0 && self.capacity.is_finite()) {
            return Err(Error::config("capacity", format!("must be positive, got {}", self.capacity)));
        }
        if !(self.slot_length > 0.0 && self.slot_length.is_finite()) {
            return Err(Error::config(
                "delta",
                format!("slot length must be positive, got {}", self.slot_length),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompletionRecord {
    pub id: FlowId,
    pub arrival: f64,
    pub volume: f64,
    pub class: FlowClass,
    pub completion: f64,
}

impl CompletionRecord {
    pub fn fct(&self) -> f64 {
        self.completion - self.arrival
    }
}

/// Index of the first slot whose start is not before `arrival`.
pub fn visible_slot(arrival: f64, slot_length: f64) -> u64 {
    let mut k = (arrival / slot_length).ceil().max(0.0) as u64;
    while k > 0 && (k - 1) as f64 * slot_length >= arrival {
        k -= 1;
    }
    while (k as f64) * slot_length < arrival {
        k += 1;
    }
    k
}

#[derive(Debug, Clone)]
pub struct SimState {
    slot: u64,
    pending: VecDeque<FlowSpec>,
    active: Vec<ActiveFlow>,
    /// Original volume of each active flow, parallel to `active`.
    volumes: Vec<f64>,
    completed: Vec<CompletionRecord>,
    delivered: f64,
    visible_volume: f64,
}

/// What one call to [`step`] did.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub slot_start: f64,
    /// Number of consecutive slots covered by this allocation.
    pub slots: u64,
    /// Active set the allocation was computed over.
    pub active: Vec<ActiveFlow>,
    pub allocation: Allocation,
    pub completions: Vec<CompletionRecord>,
}

impl SimState {
    pub fn new(workload: &[FlowSpec]) -> Result<Self> {
        traffic::validate_workload(workload)?;
        Ok(SimState {
            slot: 0,
            pending: workload.iter().copied().collect(),
            active: Vec::new(),
            volumes: Vec::new(),
            completed: Vec::new(),
            delivered: 0.0,
            visible_volume: 0.0,
        })
    }

    pub fn slot_index(&self) -> u64 {
        self.slot
    }

    pub fn slot_start(&self, slot_length: f64) -> f64 {
        self.slot as f64 * slot_length
    }

    pub fn pending(&self) -> impl Iterator<Item = &FlowSpec> {
        self.pending.iter()
    }

    pub fn active(&self) -> &[ActiveFlow] {
        &self.active
    }

    pub fn completed(&self) -> &[CompletionRecord] {
        &self.completed
    }

    pub fn is_done(&self) -> bool {
        self.pending.is_empty() && self.active.is_empty()
    }

    /// Volume delivered so far across all flows.
    pub fn delivered(&self) -> f64 {
        self.delivered
    }

    /// Total volume of every flow that has become visible.
    pub fn visible_volume(&self) -> f64 {
        self.visible_volume
    }

    /// `delivered + remaining - visible volume`; zero up to rounding.
    pub fn volume_imbalance(&self) -> f64 {
        let remaining: f64 = self.active.iter().map(|f| f.remaining).sum();
        self.delivered + remaining - self.visible_volume
    }

    fn admit(&mut self, slot_start: f64) {
        while let Some(f) = self.pending.front() {
            if f.arrival > slot_start {
                break;
            }
            let f = self.pending.pop_front().expect("front exists");
            self.active.push(ActiveFlow {
                id: f.id,
                arrival: f.arrival,
                remaining: f.volume,
                class: f.class,
            });
            self.volumes.push(f.volume);
            self.visible_volume += f.volume;
        }
    }

    /// Moves an idle link forward to the slot where the next flow shows up.
    fn skip_idle(&mut self, slot_length: f64) {
        if self.active.is_empty() {
            if let Some(f) = self.pending.front() {
                self.slot = self.slot.max(visible_slot(f.arrival, slot_length));
            }
        }
    }

    /// Number of slots, starting at the current one, for which the policy
    /// would recompute exactly `alloc`.
    ///
    /// Holds when every served flow still has at least two slots' worth of
    /// volume at its rate: nobody finishes, no demand cap starts binding, and
    /// the only keys that change (SRPT remainders of served flows) shrink,
    /// which keeps them ahead. Any visible arrival ends the run.
    fn stable_slots(&self, alloc: &Allocation, slot_length: f64) -> u64 {
        let mut min_ratio = f64::INFINITY;
        for (i, f) in self.active.iter().enumerate() {
            let rate = alloc.rate_at(i);
            if rate > 0.0 {
                let ratio = f.remaining / (rate * slot_length);
                if ratio < 2.0 {
                    return 1;
                }
                min_ratio = min_ratio.min(ratio);
            }
        }
        if !min_ratio.is_finite() {
            return 1;
        }
        let mut slots = (min_ratio.floor() as u64).saturating_sub(1).max(1);
        if let Some(next) = self.pending.front() {
            let until = visible_slot(next.arrival, slot_length).saturating_sub(self.slot);
            slots = slots.min(until.max(1));
        }
        slots
    }

    fn advance(&mut self, config: &SimConfig, max_slots: u64) -> Result<StepOutcome> {
        let delta = config.slot_length;
        let slot_start = self.slot_start(delta);
        self.admit(slot_start);
        let alloc = policy::allocate(config.policy, &self.active, config.capacity, delta);
        let snapshot = self.active.clone();

        let hold = if max_slots > 1 {
            self.stable_slots(&alloc, delta).min(max_slots)
        } else {
            1
        };
        if hold > 1 {
            let span = hold as f64 * delta;
            for (i, f) in self.active.iter_mut().enumerate() {
                let sent = alloc.rate_at(i) * span;
                f.remaining -= sent;
                self.delivered += sent;
            }
            self.slot += hold;
            return Ok(StepOutcome {
                slot_start,
                slots: hold,
                active: snapshot,
                allocation: alloc,
                completions: Vec::new(),
            });
        }

        let mut finishing = Vec::new();
        for (i, f) in self.active.iter_mut().enumerate() {
            let rate = alloc.rate_at(i);
            if rate == 0.0 {
                continue;
            }
            let after = f.remaining - rate * delta;
            if after < -NEGATIVE_SLACK {
                return Err(Error::Internal(format!(
                    "flow {} overdrawn to {after} at t={slot_start}",
                    f.id
                )));
            }
            if after < ZERO_GUARD {
                finishing.push(i);
            } else {
                self.delivered += rate * delta;
                f.remaining = after;
            }
        }

        let mut completions = Vec::with_capacity(finishing.len());
        if !finishing.is_empty() {
            let work = policy::finish_work(config.policy, &self.active, &alloc, delta, &finishing);
            for (&i, w) in finishing.iter().zip(work) {
                let f = &self.active[i];
                self.delivered += f.remaining;
                completions.push(CompletionRecord {
                    id: f.id,
                    arrival: f.arrival,
                    volume: self.volumes[i],
                    class: f.class,
                    completion: slot_start + (w / config.capacity).min(delta),
                });
            }
            for &i in finishing.iter().rev() {
                self.active.remove(i);
                self.volumes.remove(i);
            }
            completions.sort_by(|a, b| a.completion.total_cmp(&b.completion).then(a.id.cmp(&b.id)));
            self.completed.extend_from_slice(&completions);
        }
        self.slot += 1;
        Ok(StepOutcome {
            slot_start,
            slots: 1,
            active: snapshot,
            allocation: alloc,
            completions,
        })
    }
}

/// Simulates exactly one slot.
pub fn step(state: &mut SimState, config: &SimConfig) -> Result<StepOutcome> {
    config.validate()?;
    state.advance(config, 1)
}

/// Runs the workload to completion and returns one record per flow, sorted by
/// id.
///
/// Idle stretches are skipped and runs of slots with an unchanged allocation
/// are applied in one go; the result matches slot-by-slot stepping up to
/// floating-point rounding.
pub fn run(workload: &[FlowSpec], config: &SimConfig) -> Result<Vec<CompletionRecord>> {
    config.validate()?;
    let mut state = SimState::new(workload)?;
    while !state.is_done() {
        state.skip_idle(config.slot_length);
        state.advance(config, u64::MAX)?;
    }
    finish(state, workload.len())
}

/// Same as [`run`] but visits every slot, including idle ones. Slow; meant as
/// a reference for the accelerated path.
pub fn run_slot_by_slot(workload: &[FlowSpec], config: &SimConfig) -> Result<Vec<CompletionRecord>> {
    config.validate()?;
    let mut state = SimState::new(workload)?;
    while !state.is_done() {
        state.advance(config, 1)?;
    }
    finish(state, workload.len())
}

fn finish(state: SimState, expected: usize) -> Result<Vec<CompletionRecord>> {
    let mut records = state.completed;
    if records.len() != expected {
        return Err(Error::Internal(format!(
            "{} of {expected} flows completed",
            records.len()
        )));
    }
    records.sort_by_key(|r| r.id);
    Ok(records)
}

/// Writes one line per record: `id arrival volume class [deadline softness] completion`.
pub fn write_completions<W: Write>(records: &[CompletionRecord], mut out: W) -> Result<()> {
    for r in records {
        writeln!(
            out,
            "{} {}",
            traffic::format_flow_fields(r.id, r.arrival, r.volume, &r.class),
            r.completion
        )?;
    }
    Ok(())
}
