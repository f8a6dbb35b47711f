#pragma once

#include <string>

#include "thermocq/config.hpp"
#include "thermocq/scenarios.hpp"

namespace thermocq {

// material preset named by the config (or the study default) with constant
// overrides applied
MaterialModel resolve_material(const RunConfig& cfg);

// mesh preset name resolved against the shipped data directory, or a path
std::string resolve_mesh_path(const std::string& mesh);

// worker count: config value, else THERMOCQ_THREADS, else 1
int resolve_threads(int requested);

// report.csv serialization shared by the runner and the CLI tests
std::string format_report(const StudyTable& table);

// executes the configured study, writing report.csv, run.log and (for the
// scatter study) snapshot files into cfg.outdir; returns the process exit
// code: 0 success, 3 numerical failure
int run_study(const RunConfig& cfg);

// stdout table of the first n convolution weights of the symbols s and s^2
void dump_cq_weights(const std::string& scheme, double dt, int n);

} // namespace thermocq
