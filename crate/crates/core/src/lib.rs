//! Slotted single-link simulator for mixes of deadline and regular flows.
//!
//! The crate is organised bottom-up:
//!
//! - [`traffic`] generates Poisson/Exponential/Pareto workloads with deadline
//!   classes.
//! - [`policy`] turns an active flow set into per-slot rates for FCFS, SRPT,
//!   fair sharing and the four EDF combinations.
//! - [`engine`] runs a workload through a policy in fixed time slots.
//! - [`oracle`] is an exact event-driven scheduler used to check the engine.
//! - [`metrics`] reduces completions to FCT, miss-rate and lateness figures.
//! - [`experiment`] sweeps the policy/load/mix grid and writes CSV.

pub mod engine;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod oracle;
pub mod policy;
pub mod traffic;

pub use engine::{run, step, CompletionRecord, SimConfig, SimState};
pub use error::{Error, Result};
pub use metrics::MetricsReport;
pub use policy::{ActiveFlow, Allocation, PolicyKind};
pub use traffic::{FlowClass, FlowId, FlowSpec, SizeDistribution, Slack, Softness, WorkloadConfig};
