//! C ABI for the `mixsched` simulator.
//!
//! Every fallible function returns an [`MsStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`ms_last_error`] on the same thread. Handles are opaque and must be
//! released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::io::Cursor;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixsched::engine::{self, CompletionRecord, SimConfig};
use mixsched::experiment::{self, ExperimentConfig};
use mixsched::traffic::{self, FlowSpec, SizeDistribution, Slack, WorkloadConfig};
use mixsched::{Error, FlowClass, MetricsReport, PolicyKind, Softness};

/// Bumped whenever a signature or struct layout changes.
pub const MS_ABI_VERSION: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    NullPointer = 1,
    /// Invalid configuration, workload text or JSON.
    InvalidInput = 2,
    /// Internal invariant violated.
    Internal = 3,
    Io = 4,
    OutOfRange = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsDistribution {
    Exponential = 0,
    Pareto = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MsWorkloadParams {
    pub arrival_rate: f64,
    pub flow_count: usize,
    pub distribution: MsDistribution,
    pub mean_size: f64,
    /// Pareto scale; ignored for exponential sizes.
    pub pareto_min: f64,
    pub regular_fraction: f64,
    pub slack_low: f64,
    pub slack_high: f64,
    pub soft_multiplier: f64,
    pub capacity: f64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MsCompletion {
    pub id: u64,
    pub arrival: f64,
    pub volume: f64,
    pub completion: f64,
    pub is_deadline: bool,
    pub is_soft: bool,
    /// NaN for regular flows.
    pub deadline: f64,
}

/// Metrics of one run. Undefined metrics (no flows of that class) are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MsMetrics {
    pub afct: f64,
    pub mfct: f64,
    pub tfct: f64,
    pub dmr: f64,
    pub avg_lateness: f64,
    pub regular_count: usize,
    pub deadline_count: usize,
    pub soft_deadline_count: usize,
    pub missed_count: usize,
}

/// Opaque workload handle.
pub struct MsWorkload {
    flows: Vec<FlowSpec>,
}

/// Opaque handle holding the per-flow results of one simulation.
pub struct MsRun {
    records: Vec<CompletionRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: MsStatus, msg: impl Into<String>) -> MsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> MsStatus {
    let status = match e {
        Error::Config { .. } | Error::Parse { .. } | Error::Json(_) => MsStatus::InvalidInput,
        Error::Internal(_) => MsStatus::Internal,
        Error::Io(_) => MsStatus::Io,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), MsStatus>) -> MsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(MsStatus::Panic, "panic inside mixsched"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, MsStatus> {
    if p.is_null() {
        return Err(fail(MsStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(MsStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, MsStatus> {
    p.as_ref().ok_or_else(|| fail(MsStatus::NullPointer, "null argument"))
}

fn out_arg<T>(p: *mut T) -> Result<(), MsStatus> {
    if p.is_null() {
        Err(fail(MsStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn nan_if_none(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

#[no_mangle]
pub extern "C" fn ms_abi_version() -> u32 {
    MS_ABI_VERSION
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ms_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Default workload parameters: 10000 flows, rate 0.1, exponential sizes of
/// mean 1, half regular traffic, seed 1.
#[no_mangle]
pub extern "C" fn ms_workload_params_default() -> MsWorkloadParams {
    let cfg = WorkloadConfig::default();
    MsWorkloadParams {
        arrival_rate: cfg.arrival_rate,
        flow_count: cfg.flow_count,
        distribution: MsDistribution::Exponential,
        mean_size: 1.0,
        pareto_min: 0.1,
        regular_fraction: cfg.regular_fraction,
        slack_low: cfg.slack.low,
        slack_high: cfg.slack.high,
        soft_multiplier: cfg.soft_threshold_multiplier,
        capacity: cfg.capacity,
        seed: 1,
    }
}

/// # Safety
/// `params` must point to a valid struct; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_workload_generate(
    params: *const MsWorkloadParams,
    out: *mut *mut MsWorkload,
) -> MsStatus {
    guard(|| {
        let p = ref_arg(params)?;
        out_arg(out)?;
        let size_distribution = match p.distribution {
            MsDistribution::Exponential => SizeDistribution::Exponential { mean: p.mean_size },
            MsDistribution::Pareto => SizeDistribution::Pareto {
                mean: p.mean_size,
                minimum: p.pareto_min,
            },
        };
        let cfg = WorkloadConfig {
            arrival_rate: p.arrival_rate,
            flow_count: p.flow_count,
            size_distribution,
            regular_fraction: p.regular_fraction,
            slack: Slack {
                low: p.slack_low,
                high: p.slack_high,
            },
            soft_threshold_multiplier: p.soft_multiplier,
            capacity: p.capacity,
            seed: p.seed,
        };
        let flows = traffic::generate_workload(&cfg).map_err(from_error)?;
        *out = Box::into_raw(Box::new(MsWorkload { flows }));
        Ok(())
    })
}

/// Parses the text workload format (`id arrival volume class [deadline softness]`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ms_workload_parse(text: *const c_char, out: *mut *mut MsWorkload) -> MsStatus {
    guard(|| {
        let text = str_arg(text)?;
        out_arg(out)?;
        let flows = traffic::read_workload(Cursor::new(text)).map_err(from_error)?;
        *out = Box::into_raw(Box::new(MsWorkload { flows }));
        Ok(())
    })
}

/// # Safety
/// `workload` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ms_workload_len(workload: *const MsWorkload) -> usize {
    workload.as_ref().map_or(0, |w| w.flows.len())
}

/// # Safety
/// `workload` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_workload_free(workload: *mut MsWorkload) {
    if !workload.is_null() {
        drop(Box::from_raw(workload));
    }
}

/// Simulates `workload` under `policy` (e.g. `"srpt"`, `"edf-fcfs-df"`).
///
/// # Safety
/// `workload` must be a live handle, `policy` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_simulate(
    workload: *const MsWorkload,
    policy: *const c_char,
    capacity: f64,
    slot_length: f64,
    out: *mut *mut MsRun,
) -> MsStatus {
    guard(|| {
        let w = ref_arg(workload)?;
        let policy: PolicyKind = str_arg(policy)?.parse().map_err(from_error)?;
        out_arg(out)?;
        let cfg = SimConfig {
            capacity,
            slot_length,
            policy,
        };
        let records = engine::run(&w.flows, &cfg).map_err(from_error)?;
        *out = Box::into_raw(Box::new(MsRun { records }));
        Ok(())
    })
}

/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ms_run_len(run: *const MsRun) -> usize {
    run.as_ref().map_or(0, |r| r.records.len())
}

/// Completion of the `index`-th flow, in flow id order.
///
/// # Safety
/// `run` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_run_completion(run: *const MsRun, index: usize, out: *mut MsCompletion) -> MsStatus {
    guard(|| {
        let r = ref_arg(run)?;
        out_arg(out)?;
        let rec = r.records.get(index).ok_or_else(|| {
            fail(
                MsStatus::OutOfRange,
                format!("index {index} out of range for {} flows", r.records.len()),
            )
        })?;
        let (deadline, is_soft) = match rec.class {
            FlowClass::Regular => (f64::NAN, false),
            FlowClass::Deadline { deadline, softness } => (deadline, softness == Softness::Soft),
        };
        *out = MsCompletion {
            id: rec.id,
            arrival: rec.arrival,
            volume: rec.volume,
            completion: rec.completion,
            is_deadline: rec.class.is_deadline(),
            is_soft,
            deadline,
        };
        Ok(())
    })
}

/// # Safety
/// `run` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_run_metrics(run: *const MsRun, tail_percentile: f64, out: *mut MsMetrics) -> MsStatus {
    guard(|| {
        let r = ref_arg(run)?;
        out_arg(out)?;
        if !(tail_percentile > 0.0 && tail_percentile <= 1.0) {
            return Err(fail(
                MsStatus::InvalidInput,
                format!("tail percentile must lie in (0, 1], got {tail_percentile}"),
            ));
        }
        let m = MetricsReport::from_records(&r.records, tail_percentile);
        *out = MsMetrics {
            afct: nan_if_none(m.afct),
            mfct: nan_if_none(m.mfct),
            tfct: nan_if_none(m.tfct),
            dmr: nan_if_none(m.dmr),
            avg_lateness: nan_if_none(m.avg_lateness),
            regular_count: m.counts.regular,
            deadline_count: m.counts.deadline,
            soft_deadline_count: m.counts.soft_deadline,
            missed_count: m.counts.missed,
        };
        Ok(())
    })
}

/// # Safety
/// `run` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_run_free(run: *mut MsRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Runs the experiment grid described by `config_json` and returns the
/// normalized results as CSV. Free the string with [`ms_string_free`].
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ms_sweep_csv(config_json: *const c_char, out: *mut *mut c_char) -> MsStatus {
    guard(|| {
        let json = str_arg(config_json)?;
        out_arg(out)?;
        let cfg = ExperimentConfig::from_json(json).map_err(from_error)?;
        let results = experiment::run_experiment(&cfg).map_err(from_error)?;
        let csv = CString::new(experiment::emit_csv(&results))
            .map_err(|_| fail(MsStatus::Internal, "CSV contains NUL"))?;
        *out = csv.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
