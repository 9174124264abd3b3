#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace scrap::cli {

enum ExitCode : int { exit_ok = 0, exit_io = 1, exit_config = 2, exit_numerical = 3 };

struct ScanRow {
  std::vector<double> axis_values;
  double final_rn = 0.0;
  double final_coh = 0.0;
  double max_coh = 0.0;
};

/// Evaluates every axis combination (row-major over the axes as given)
/// and returns rows sorted by axis values.
std::vector<ScanRow> run_scan(const Preset& base, const std::vector<ScanAxis>& axes,
                              std::optional<UnitConvention> units, double tol, int threads);

/// Executes a validated configuration, writing artifacts under cfg.out.
/// Diagnostics go to `err`; list-presets prints to `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace scrap::cli
