#include <stdio.h>
#include "mixsched.h"

int main(void) {
    MsWorkloadParams params = ms_workload_params_default();
    params.flow_count = 1000;
    params.arrival_rate = 0.8;

    MsWorkload *workload = NULL;
    if (ms_workload_generate(&params, &workload) != MS_STATUS_OK) {
        fprintf(stderr, "generate: %s\n", ms_last_error());
        return 1;
    }
    const char *policies[] = {"fcfs", "srpt", "fair", "edf-srpt-df"};
    for (int i = 0; i < 4; i++) {
        MsRun *run = NULL;
        MsMetrics m;
        if (ms_simulate(workload, policies[i], 1.0, 0.1, &run) != MS_STATUS_OK ||
            ms_run_metrics(run, 0.99, &m) != MS_STATUS_OK) {
            fprintf(stderr, "%s: %s\n", policies[i], ms_last_error());
            return 1;
        }
        printf("%s afct=%g dmr=%g\n", policies[i], m.afct, m.dmr);
        ms_run_free(run);
    }
    MsRun *run = NULL;
    if (ms_simulate(workload, "lifo", 1.0, 0.1, &run) != MS_STATUS_INVALID_INPUT) {
        return 1;
    }
    ms_workload_free(workload);
    return 0;
}
