//! Per-slot rate allocation for the seven scheduling policies.
//!
//! Every policy except fair sharing is a strict priority order over the
//! active flows: walking the order, each flow takes as much of the residual
//! capacity as it can use this slot (its remaining volume divided by the slot
//! length). Fair sharing is max-min water-filling over the same demands.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::traffic::{FlowClass, FlowId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveFlow {
    pub id: FlowId,
    pub arrival: f64,
    pub remaining: f64,
    pub class: FlowClass,
}

impl ActiveFlow {
    fn demand(&self, slot_length: f64) -> f64 {
        self.remaining / slot_length
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PolicyKind {
    #[serde(rename = "fcfs")]
    Fcfs,
    #[serde(rename = "srpt")]
    Srpt,
    #[serde(rename = "fair")]
    FairSharing,
    #[serde(rename = "edf-fcfs-df")]
    EdfFcfsDf,
    #[serde(rename = "edf-srpt-df")]
    EdfSrptDf,
    #[serde(rename = "edf-fcfs-dl")]
    EdfFcfsDl,
    #[serde(rename = "edf-srpt-dl")]
    EdfSrptDl,
}

/// Order applied to the regular partition by the EDF combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularOrder {
    Fcfs,
    Srpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeadlinePriority {
    DeadlineFirst,
    DeadlineLast,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 7] = [
        PolicyKind::Fcfs,
        PolicyKind::Srpt,
        PolicyKind::FairSharing,
        PolicyKind::EdfFcfsDf,
        PolicyKind::EdfSrptDf,
        PolicyKind::EdfFcfsDl,
        PolicyKind::EdfSrptDl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Fcfs => "fcfs",
            PolicyKind::Srpt => "srpt",
            PolicyKind::FairSharing => "fair",
            PolicyKind::EdfFcfsDf => "edf-fcfs-df",
            PolicyKind::EdfSrptDf => "edf-srpt-df",
            PolicyKind::EdfFcfsDl => "edf-fcfs-dl",
            PolicyKind::EdfSrptDl => "edf-srpt-dl",
        }
    }

    pub fn edf_combo(self) -> Option<(RegularOrder, DeadlinePriority)> {
        use DeadlinePriority::*;
        match self {
            PolicyKind::EdfFcfsDf => Some((RegularOrder::Fcfs, DeadlineFirst)),
            PolicyKind::EdfSrptDf => Some((RegularOrder::Srpt, DeadlineFirst)),
            PolicyKind::EdfFcfsDl => Some((RegularOrder::Fcfs, DeadlineLast)),
            PolicyKind::EdfSrptDl => Some((RegularOrder::Srpt, DeadlineLast)),
            _ => None,
        }
    }

    /// True for the strict-priority policies (everything but fair sharing).
    pub fn is_serial(self) -> bool {
        self != PolicyKind::FairSharing
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolicyKind::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::config("policy", format!("unknown policy {s:?}")))
    }
}

/// Rates for one slot, aligned index-for-index with the active set the
/// allocation was computed from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Allocation {
    entries: Vec<(FlowId, f64)>,
}

impl Allocation {
    fn zeroed(active: &[ActiveFlow]) -> Self {
        Allocation {
            entries: active.iter().map(|f| (f.id, 0.0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rate of the flow at position `index` of the active set.
    pub fn rate_at(&self, index: usize) -> f64 {
        self.entries[index].1
    }

    pub fn rate(&self, id: FlowId) -> Option<f64> {
        self.entries.iter().find(|(fid, _)| *fid == id).map(|&(_, r)| r)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|&(_, r)| r).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FlowId, f64)> + '_ {
        self.entries.iter().copied()
    }

    fn set(&mut self, index: usize, rate: f64) {
        self.entries[index].1 = rate;
    }
}

fn by_arrival(a: &ActiveFlow, b: &ActiveFlow) -> Ordering {
    a.arrival.total_cmp(&b.arrival).then(a.id.cmp(&b.id))
}

fn by_remaining(a: &ActiveFlow, b: &ActiveFlow) -> Ordering {
    a.remaining.total_cmp(&b.remaining).then_with(|| by_arrival(a, b))
}

fn by_deadline(a: &ActiveFlow, b: &ActiveFlow) -> Ordering {
    let da = a.class.deadline().unwrap_or(f64::INFINITY);
    let db = b.class.deadline().unwrap_or(f64::INFINITY);
    da.total_cmp(&db).then_with(|| by_arrival(a, b))
}

fn combo_cmp(regular: RegularOrder, priority: DeadlinePriority, a: &ActiveFlow, b: &ActiveFlow) -> Ordering {
    let rank = |f: &ActiveFlow| match (f.class.is_deadline(), priority) {
        (true, DeadlinePriority::DeadlineFirst) | (false, DeadlinePriority::DeadlineLast) => 0u8,
        _ => 1u8,
    };
    rank(a).cmp(&rank(b)).then_with(|| match (a.class.is_deadline(), regular) {
        (true, _) => by_deadline(a, b),
        (false, RegularOrder::Fcfs) => by_arrival(a, b),
        (false, RegularOrder::Srpt) => by_remaining(a, b),
    })
}

/// Total priority order of a serial policy; `None` for fair sharing.
pub fn priority_cmp(policy: PolicyKind) -> Option<fn(&ActiveFlow, &ActiveFlow) -> Ordering> {
    Some(match policy {
        PolicyKind::Fcfs => by_arrival,
        PolicyKind::Srpt => by_remaining,
        PolicyKind::FairSharing => return None,
        PolicyKind::EdfFcfsDf => |a, b| combo_cmp(RegularOrder::Fcfs, DeadlinePriority::DeadlineFirst, a, b),
        PolicyKind::EdfSrptDf => |a, b| combo_cmp(RegularOrder::Srpt, DeadlinePriority::DeadlineFirst, a, b),
        PolicyKind::EdfFcfsDl => |a, b| combo_cmp(RegularOrder::Fcfs, DeadlinePriority::DeadlineLast, a, b),
        PolicyKind::EdfSrptDl => |a, b| combo_cmp(RegularOrder::Srpt, DeadlinePriority::DeadlineLast, a, b),
    })
}

fn sorted_indices(active: &[ActiveFlow], cmp: impl Fn(&ActiveFlow, &ActiveFlow) -> Ordering) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..active.len()).collect();
    idx.sort_by(|&a, &b| cmp(&active[a], &active[b]));
    idx
}

/// Indices of `active` by arrival time, ties by id.
pub fn order_fcfs(active: &[ActiveFlow]) -> Vec<usize> {
    sorted_indices(active, by_arrival)
}

/// Indices of `active` by remaining volume, ties by arrival then id.
pub fn order_srpt(active: &[ActiveFlow]) -> Vec<usize> {
    sorted_indices(active, by_remaining)
}

/// Indices of `active` by deadline, ties by arrival then id. Every input must
/// be a deadline flow.
pub fn order_edf(active: &[ActiveFlow]) -> Result<Vec<usize>> {
    if let Some(f) = active.iter().find(|f| !f.class.is_deadline()) {
        return Err(Error::Internal(format!("regular flow {} passed to EDF ordering", f.id)));
    }
    Ok(sorted_indices(active, by_deadline))
}

/// Full priority list of a serial policy, highest priority first.
pub fn priority_order(policy: PolicyKind, active: &[ActiveFlow]) -> Option<Vec<usize>> {
    priority_cmp(policy).map(|cmp| sorted_indices(active, cmp))
}

/// Serial allocation down a priority list: each flow takes
/// `min(residual, remaining / slot_length)`.
pub fn allocate_by_priority(active: &[ActiveFlow], order: &[usize], capacity: f64, slot_length: f64) -> Allocation {
    let mut alloc = Allocation::zeroed(active);
    let mut residual = capacity;
    for &i in order {
        if residual <= 0.0 {
            break;
        }
        let rate = residual.min(active[i].demand(slot_length));
        alloc.set(i, rate);
        residual -= rate;
    }
    alloc
}

/// Max-min fair water-filling of `capacity` over the flows' demands.
pub fn allocate_fair(active: &[ActiveFlow], capacity: f64, slot_length: f64) -> Allocation {
    let mut alloc = Allocation::zeroed(active);
    let n = active.len();
    if n == 0 {
        return alloc;
    }
    let demands: Vec<f64> = active.iter().map(|f| f.demand(slot_length)).collect();
    let total: f64 = demands.iter().sum();
    if total <= capacity {
        for (i, &d) in demands.iter().enumerate() {
            alloc.set(i, d);
        }
        return alloc;
    }
    let share = capacity / n as f64;
    if demands.iter().all(|&d| d >= share) {
        for i in 0..n {
            alloc.set(i, share);
        }
        return alloc;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| demands[a].total_cmp(&demands[b]).then(a.cmp(&b)));
    let mut residual = capacity;
    let mut unsatisfied = n;
    for (pos, &i) in idx.iter().enumerate() {
        let level = residual / unsatisfied as f64;
        if demands[i] <= level {
            alloc.set(i, demands[i]);
            residual -= demands[i];
            unsatisfied -= 1;
        } else {
            for &j in &idx[pos..] {
                alloc.set(j, level);
            }
            break;
        }
    }
    alloc
}

/// EDF on the deadline partition combined with FCFS or SRPT on the regular
/// partition, one partition strictly ahead of the other.
pub fn allocate_edf_combo(
    active: &[ActiveFlow],
    capacity: f64,
    slot_length: f64,
    regular: RegularOrder,
    priority: DeadlinePriority,
) -> Allocation {
    let (deadline, regular_flows): (Vec<usize>, Vec<usize>) =
        (0..active.len()).partition(|&i| active[i].class.is_deadline());
    let sub = |idx: Vec<usize>, cmp: fn(&ActiveFlow, &ActiveFlow) -> Ordering| {
        let mut idx = idx;
        idx.sort_by(|&a, &b| cmp(&active[a], &active[b]));
        idx
    };
    let deadline = sub(deadline, by_deadline);
    let regular_flows = sub(
        regular_flows,
        match regular {
            RegularOrder::Fcfs => by_arrival,
            RegularOrder::Srpt => by_remaining,
        },
    );
    let order: Vec<usize> = match priority {
        DeadlinePriority::DeadlineFirst => deadline.into_iter().chain(regular_flows).collect(),
        DeadlinePriority::DeadlineLast => regular_flows.into_iter().chain(deadline).collect(),
    };
    allocate_by_priority(active, &order, capacity, slot_length)
}

/// Allocation for one slot under `policy`.
///
/// Serial policies select flows lazily: usually only the head of the order
/// (plus whatever finishes this slot) receives capacity, so sorting the whole
/// active set is avoided.
pub fn allocate(policy: PolicyKind, active: &[ActiveFlow], capacity: f64, slot_length: f64) -> Allocation {
    let Some(cmp) = priority_cmp(policy) else {
        return allocate_fair(active, capacity, slot_length);
    };
    let n = active.len();
    let mut alloc = Allocation::zeroed(active);
    let mut picked = vec![false; n];
    let mut residual = capacity;
    for round in 0..n {
        if residual <= 0.0 {
            break;
        }
        if round == 8 {
            let mut rest: Vec<usize> = (0..n).filter(|&i| !picked[i]).collect();
            rest.sort_by(|&a, &b| cmp(&active[a], &active[b]));
            for i in rest {
                if residual <= 0.0 {
                    break;
                }
                let rate = residual.min(active[i].demand(slot_length));
                alloc.set(i, rate);
                residual -= rate;
            }
            break;
        }
        let best = (0..n)
            .filter(|&i| !picked[i])
            .min_by(|&a, &b| cmp(&active[a], &active[b]))
            .expect("round < n leaves an unpicked flow");
        picked[best] = true;
        let rate = residual.min(active[best].demand(slot_length));
        alloc.set(best, rate);
        residual -= rate;
    }
    alloc
}

/// Link work (traffic units) done within a slot by the time each flow in
/// `finishing` has sent its last unit, assuming the slot's volumes are served
/// in the policy's own intra-slot order: back to back in priority order for
/// serial policies, processor sharing for fair sharing.
///
/// `finishing` lists indices of flows whose whole remaining volume is
/// delivered this slot.
pub fn finish_work(
    policy: PolicyKind,
    active: &[ActiveFlow],
    alloc: &Allocation,
    slot_length: f64,
    finishing: &[usize],
) -> Vec<f64> {
    match priority_cmp(policy) {
        Some(cmp) => {
            // everything ahead of a finishing flow in the order also finishes
            let mut order: Vec<usize> = (0..finishing.len()).collect();
            order.sort_by(|&a, &b| cmp(&active[finishing[a]], &active[finishing[b]]));
            let mut work = vec![0.0; finishing.len()];
            let mut acc = 0.0;
            for k in order {
                acc += active[finishing[k]].remaining;
                work[k] = acc;
            }
            work
        }
        None => finishing
            .iter()
            .map(|&j| {
                let own = active[j].remaining;
                (0..active.len())
                    .map(|i| (alloc.rate_at(i) * slot_length).min(own))
                    .sum()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traffic::Softness;
    use proptest::prelude::*;

    fn reg(id: FlowId, arrival: f64, remaining: f64) -> ActiveFlow {
        ActiveFlow {
            id,
            arrival,
            remaining,
            class: FlowClass::Regular,
        }
    }

    fn dl(id: FlowId, arrival: f64, remaining: f64, deadline: f64) -> ActiveFlow {
        ActiveFlow {
            id,
            arrival,
            remaining,
            class: FlowClass::Deadline {
                deadline,
                softness: Softness::Hard,
            },
        }
    }

    fn ids(active: &[ActiveFlow], order: &[usize]) -> Vec<FlowId> {
        order.iter().map(|&i| active[i].id).collect()
    }

    #[test]
    fn policy_names_round_trip() {
        for p in PolicyKind::ALL {
            assert_eq!(p.name().parse::<PolicyKind>().unwrap(), p);
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(json, format!("\"{}\"", p.name()));
        }
        assert!(matches!("lifo".parse::<PolicyKind>(), Err(Error::Config { field: "policy", .. })));
    }

    #[test]
    fn empty_active_set() {
        for p in PolicyKind::ALL {
            assert!(allocate(p, &[], 1.0, 0.1).is_empty());
        }
        assert!(allocate_by_priority(&[], &[], 1.0, 0.1).is_empty());
        assert!(order_edf(&[]).unwrap().is_empty());
    }

    #[test]
    fn demand_capped_single_flow() {
        let a = [reg(1, 0.0, 0.05)];
        let alloc = allocate(PolicyKind::Srpt, &a, 1.0, 0.1);
        assert!((alloc.rate(1).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fcfs_head_takes_link() {
        let a = [reg(2, 1.0, 5.0), reg(1, 0.0, 5.0)];
        let alloc = allocate(PolicyKind::Fcfs, &a, 1.0, 0.1);
        assert_eq!(alloc.rate(1), Some(1.0));
        assert_eq!(alloc.rate(2), Some(0.0));
    }

    #[test]
    fn fcfs_ordering() {
        let a = [reg(1, 0.0, 1.0), reg(2, 1.0, 1.0)];
        assert_eq!(ids(&a, &order_fcfs(&a)), [1, 2]);
        let a = [reg(2, 3.0, 1.0), reg(1, 3.0, 1.0)];
        assert_eq!(ids(&a, &order_fcfs(&a)), [1, 2]);
        let a = [reg(3, 2.0, 1.0), reg(1, 5.0, 1.0), reg(2, 0.0, 1.0)];
        assert_eq!(ids(&a, &order_fcfs(&a)), [2, 3, 1]);
    }

    #[test]
    fn srpt_ordering() {
        let a = [reg(1, 0.0, 3.0), reg(2, 0.0, 1.0)];
        assert_eq!(ids(&a, &order_srpt(&a)), [2, 1]);
        let a = [reg(2, 1.0, 2.0), reg(1, 0.0, 2.0)];
        assert_eq!(ids(&a, &order_srpt(&a)), [1, 2]);
    }

    #[test]
    fn srpt_head_is_stable_without_arrivals() {
        let mut a = [reg(1, 0.0, 1.0), reg(2, 0.0, 1.5)];
        let first = allocate(PolicyKind::Srpt, &a, 1.0, 0.1);
        assert_eq!(first.rate(1), Some(1.0));
        a[0].remaining -= 0.1;
        let second = allocate(PolicyKind::Srpt, &a, 1.0, 0.1);
        assert_eq!(second.rate(1), Some(1.0));
    }

    #[test]
    fn edf_ordering() {
        let a = [dl(1, 0.0, 1.0, 10.0), dl(2, 0.0, 1.0, 2.0)];
        assert_eq!(ids(&a, &order_edf(&a).unwrap()), [2, 1]);
        let a = [dl(1, 1.0, 1.0, 5.0), dl(2, 0.0, 1.0, 5.0)];
        assert_eq!(ids(&a, &order_edf(&a).unwrap()), [2, 1]);
        assert!(matches!(order_edf(&[reg(1, 0.0, 1.0)]), Err(Error::Internal(_))));
    }

    #[test]
    fn serial_allocation_examples() {
        let a = [reg(1, 0.0, 0.05), reg(2, 0.0, 1.0)];
        let alloc = allocate_by_priority(&a, &[0, 1], 1.0, 0.1);
        assert!((alloc.rate(1).unwrap() - 0.5).abs() < 1e-12);
        assert!((alloc.rate(2).unwrap() - 0.5).abs() < 1e-12);

        let a = [reg(1, 0.0, 1.0), reg(2, 0.0, 1.0)];
        let alloc = allocate_by_priority(&a, &[0, 1], 1.0, 0.1);
        assert_eq!(alloc.rate(1), Some(1.0));
        assert_eq!(alloc.rate(2), Some(0.0));
    }

    fn fair_rates(demands: &[f64]) -> Vec<f64> {
        // slot length 1 makes remaining == demand
        let a: Vec<ActiveFlow> = demands
            .iter()
            .enumerate()
            .map(|(i, &d)| reg(i as FlowId, 0.0, d))
            .collect();
        let alloc = allocate_fair(&a, 1.0, 1.0);
        (0..a.len()).map(|i| alloc.rate_at(i)).collect()
    }

    #[test]
    fn fair_examples() {
        assert_eq!(fair_rates(&[10.0, 10.0]), [0.5, 0.5]);
        let r = fair_rates(&[0.2, 0.9, 0.9]);
        for (got, want) in r.iter().zip([0.2, 0.4, 0.4]) {
            assert!((got - want).abs() < 1e-12, "{r:?}");
        }
        assert_eq!(fair_rates(&[0.1, 0.2]), [0.1, 0.2]);
    }

    #[test]
    fn edf_combo_examples() {
        let a = [reg(1, 0.0, 1.0), dl(2, 0.0, 1.0, 3.0)];
        let df = allocate(PolicyKind::EdfFcfsDf, &a, 1.0, 0.1);
        assert_eq!((df.rate(2), df.rate(1)), (Some(1.0), Some(0.0)));
        let dl_ = allocate(PolicyKind::EdfFcfsDl, &a, 1.0, 0.1);
        assert_eq!((dl_.rate(1), dl_.rate(2)), (Some(1.0), Some(0.0)));

        let a = [dl(1, 0.0, 1.0, 9.0), dl(2, 0.0, 1.0, 1.0)];
        let alloc = allocate(PolicyKind::EdfSrptDf, &a, 1.0, 0.1);
        assert_eq!((alloc.rate(2), alloc.rate(1)), (Some(1.0), Some(0.0)));
    }

    #[test]
    fn combo_matches_explicit_partition_order() {
        let a = [
            reg(1, 0.0, 0.02),
            dl(2, 0.5, 0.03, 4.0),
            reg(3, 0.2, 0.01),
            dl(4, 0.1, 2.0, 3.0),
        ];
        for p in [
            PolicyKind::EdfFcfsDf,
            PolicyKind::EdfSrptDf,
            PolicyKind::EdfFcfsDl,
            PolicyKind::EdfSrptDl,
        ] {
            let (regular, priority) = p.edf_combo().unwrap();
            assert_eq!(
                allocate(p, &a, 1.0, 0.1),
                allocate_edf_combo(&a, 1.0, 0.1, regular, priority),
                "{p}"
            );
        }
    }

    #[test]
    fn finish_work_serial_is_cumulative() {
        let a = [reg(1, 0.0, 0.02), reg(2, 0.1, 0.03), reg(3, 0.2, 5.0)];
        let alloc = allocate(PolicyKind::Fcfs, &a, 1.0, 0.1);
        let w = finish_work(PolicyKind::Fcfs, &a, &alloc, 0.1, &[1, 0]);
        assert!((w[0] - 0.05).abs() < 1e-12);
        assert!((w[1] - 0.02).abs() < 1e-12);
    }

    #[test]
    fn finish_work_fair_is_processor_sharing() {
        // three flows share the link; the smallest finishes when each has sent 0.01
        let a = [reg(1, 0.0, 0.01), reg(2, 0.0, 5.0), reg(3, 0.0, 5.0)];
        let alloc = allocate(PolicyKind::FairSharing, &a, 1.0, 0.1);
        let w = finish_work(PolicyKind::FairSharing, &a, &alloc, 0.1, &[0]);
        assert!((w[0] - 0.03).abs() < 1e-12);
    }

    fn arb_flow() -> impl Strategy<Value = (f64, f64, bool, f64)> {
        (0.0..10.0f64, 1e-4..3.0f64, any::<bool>(), 0.0..20.0f64)
    }

    fn build(specs: &[(f64, f64, bool, f64)]) -> Vec<ActiveFlow> {
        specs
            .iter()
            .enumerate()
            .map(|(i, &(arrival, remaining, is_dl, slack))| {
                if is_dl {
                    dl(i as FlowId, arrival, remaining, arrival + slack + 0.1)
                } else {
                    reg(i as FlowId, arrival, remaining)
                }
            })
            .collect()
    }

    proptest! {
        #[test]
        fn lazy_serial_matches_full_sort(
            specs in prop::collection::vec(arb_flow(), 0..30),
            capacity in 0.1..3.0f64,
            slot in 0.01..0.5f64,
        ) {
            let active = build(&specs);
            for p in PolicyKind::ALL.into_iter().filter(|p| p.is_serial()) {
                let order = priority_order(p, &active).unwrap();
                prop_assert_eq!(
                    allocate(p, &active, capacity, slot),
                    allocate_by_priority(&active, &order, capacity, slot)
                );
            }
        }

        #[test]
        fn every_policy_is_work_conserving(
            specs in prop::collection::vec(arb_flow(), 0..30),
            capacity in 0.1..3.0f64,
            slot in 0.01..0.5f64,
        ) {
            let active = build(&specs);
            let demand: f64 = active.iter().map(|f| f.remaining / slot).sum();
            for p in PolicyKind::ALL {
                let alloc = allocate(p, &active, capacity, slot);
                prop_assert_eq!(alloc.len(), active.len());
                prop_assert!((alloc.total() - capacity.min(demand)).abs() < 1e-9);
                for (i, f) in active.iter().enumerate() {
                    let r = alloc.rate_at(i);
                    prop_assert!(r >= 0.0);
                    prop_assert!(r <= f.remaining / slot + 1e-9);
                }
            }
        }
    }
}
