#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mobilecc/config.hpp"
#include "mobilecc/metrics.hpp"
#include "mobilecc/scenario.hpp"

namespace mobilecc {

struct SweepOptions {
  std::vector<Algorithm> algorithms{Algorithm::baseline, Algorithm::dynamic, Algorithm::direct};
  std::vector<double> rates;  // empty: the scenario's default sweep
  bool per_source_rates = false;
  std::vector<std::uint64_t> seeds{1};
  SimConfig base;  // usually Scenario::defaults with CLI overrides
  unsigned jobs = 1;
  std::optional<std::filesystem::path> out_dir;  // enables resume and per-run files
  bool trace = false;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // ordered by (algorithm, rate, seed) as requested
  std::size_t executed = 0;
  std::size_t reused = 0;
  std::vector<std::string> failures;
};

/// Seeds "50" -> 1..50; "3,7,9" -> {3,7,9}.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Per-source packets/s for one sweep point.
double per_source_rate(const Scenario& scenario, double rate, bool per_source);

/// Executes every (algorithm, rate, seed) combination. A failed run is
/// recorded in `failures` and the sweep carries on. With an output
/// directory, completed runs found there are loaded instead of re-run.
SweepResult run_sweep(const Scenario& scenario, const SweepOptions& options);

/// Stem shared by a run's record and trace files.
std::string run_stem(const std::string& scenario, Algorithm a, double rate, std::uint64_t seed);

std::string metrics_to_json(const RunMetrics& m);
RunMetrics metrics_from_json(const std::string& text);

}  // namespace mobilecc
