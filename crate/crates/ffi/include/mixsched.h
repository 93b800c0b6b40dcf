#ifndef MIXSCHED_H
#define MIXSCHED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bumped whenever a signature or struct layout changes.
 */
#define MS_ABI_VERSION 1

typedef enum MsDistribution {
  MS_DISTRIBUTION_EXPONENTIAL = 0,
  MS_DISTRIBUTION_PARETO = 1,
} MsDistribution;

typedef enum MsStatus {
  MS_STATUS_OK = 0,
  MS_STATUS_NULL_POINTER = 1,
  /**
   * Invalid configuration, workload text or JSON.
   */
  MS_STATUS_INVALID_INPUT = 2,
  /**
   * Internal invariant violated.
   */
  MS_STATUS_INTERNAL = 3,
  MS_STATUS_IO = 4,
  MS_STATUS_OUT_OF_RANGE = 5,
  MS_STATUS_INVALID_UTF8 = 6,
  MS_STATUS_PANIC = 7,
} MsStatus;

/**
 * Opaque handle holding the per-flow results of one simulation.
 */
typedef struct MsRun MsRun;

/**
 * Opaque workload handle.
 */
typedef struct MsWorkload MsWorkload;

typedef struct MsWorkloadParams {
  double arrival_rate;
  size_t flow_count;
  enum MsDistribution distribution;
  double mean_size;
  /**
   * Pareto scale; ignored for exponential sizes.
   */
  double pareto_min;
  double regular_fraction;
  double slack_low;
  double slack_high;
  double soft_multiplier;
  double capacity;
  uint64_t seed;
} MsWorkloadParams;

typedef struct MsCompletion {
  uint64_t id;
  double arrival;
  double volume;
  double completion;
  bool is_deadline;
  bool is_soft;
  /**
   * NaN for regular flows.
   */
  double deadline;
} MsCompletion;

/**
 * Metrics of one run. Undefined metrics (no flows of that class) are NaN.
 */
typedef struct MsMetrics {
  double afct;
  double mfct;
  double tfct;
  double dmr;
  double avg_lateness;
  size_t regular_count;
  size_t deadline_count;
  size_t soft_deadline_count;
  size_t missed_count;
} MsMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

uint32_t ms_abi_version(void);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *ms_last_error(void);

/**
 * Default workload parameters: 10000 flows, rate 0.1, exponential sizes of
 * mean 1, half regular traffic, seed 1.
 */
struct MsWorkloadParams ms_workload_params_default(void);

/**
 * # Safety
 * `params` must point to a valid struct; `out` must be writable.
 */
enum MsStatus ms_workload_generate(const struct MsWorkloadParams *params, struct MsWorkload **out);

/**
 * Parses the text workload format (`id arrival volume class [deadline softness]`).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MsStatus ms_workload_parse(const char *text, struct MsWorkload **out);

/**
 * # Safety
 * `workload` must be null or a live handle.
 */
size_t ms_workload_len(const struct MsWorkload *workload);

/**
 * # Safety
 * `workload` must be null or a handle not yet freed.
 */
void ms_workload_free(struct MsWorkload *workload);

/**
 * Simulates `workload` under `policy` (e.g. `"srpt"`, `"edf-fcfs-df"`).
 *
 * # Safety
 * `workload` must be a live handle, `policy` a NUL-terminated string and
 * `out` writable.
 */
enum MsStatus ms_simulate(const struct MsWorkload *workload,
                          const char *policy,
                          double capacity,
                          double slot_length,
                          struct MsRun **out);

/**
 * # Safety
 * `run` must be null or a live handle.
 */
size_t ms_run_len(const struct MsRun *run);

/**
 * Completion of the `index`-th flow, in flow id order.
 *
 * # Safety
 * `run` must be a live handle and `out` writable.
 */
enum MsStatus ms_run_completion(const struct MsRun *run, size_t index, struct MsCompletion *out);

/**
 * # Safety
 * `run` must be a live handle and `out` writable.
 */
enum MsStatus ms_run_metrics(const struct MsRun *run,
                             double tail_percentile,
                             struct MsMetrics *out);

/**
 * # Safety
 * `run` must be null or a handle not yet freed.
 */
void ms_run_free(struct MsRun *run);

/**
 * Runs the experiment grid described by `config_json` and returns the
 * normalized results as CSV. Free the string with [`ms_string_free`].
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` writable.
 */
enum MsStatus ms_sweep_csv(const char *config_json, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void ms_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXSCHED_H */
