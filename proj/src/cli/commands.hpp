#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace kobalt::cli {

/// Command-line misuse or malformed input documents; exits with code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string subcommand;
  Json input;                       // effective input document (defaults filled in)
  int grid = 0;                     // 0 keeps each experiment's default
  std::uint64_t seed = 17;
  std::string out_dir;              // empty: write nothing
  bool json_stdout = false;
};

/// Names of all registered experiments, in dispatch order.
const std::vector<std::string>& experiment_names();

/// Dispatches to the owning module and writes report/CSV files when an
/// output directory is set.
ReportDocument run(const ExperimentConfig& config);

/// Flagship constant regressions, aggregated.  `metric_scale` rescales the
/// ball-model distances and exists for canary tests that prove the suite
/// catches a normalization drift; production callers leave it at 1.
ReportDocument paper_suite(double metric_scale = 1.0);

}  // namespace kobalt::cli
