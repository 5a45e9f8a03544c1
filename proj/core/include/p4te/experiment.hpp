#pragma once

#include <string>
#include <vector>

#include "p4te/config.hpp"
#include "p4te/report.hpp"

namespace p4te {

// One (scheme, workload, load, seed) cell: build the flows, run the
// simulator, return the report.
RunReport run_cell(const ExperimentConfig& cfg, Scheme scheme, const std::string& workload,
                   double load, uint64_t seed);

std::string cell_dir_name(const std::string& scheme, const std::string& workload, double load,
                          uint64_t seed);

// Writes flows.csv, links.csv, fct_cdf.csv and summary.json under
// out_dir/<cell>/ .
void write_cell_outputs(const std::string& out_dir, const RunReport& r);

struct ExperimentOutcome {
    int cells = 0;
    int invariant_failures = 0;
};

// Full grid for the config (loads x seeds, single scheme), plus one
// aggregate file per load level.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, int parallelism = 1);

// Re-aggregates existing summary.json files found under out_dir.
int aggregate_outputs(const std::string& out_dir);

}  // namespace p4te
