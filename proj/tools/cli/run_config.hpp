#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <scrap/scenarios.hpp>

#include "json.hpp"

namespace scrap::cli {

inline constexpr int schema_version = 1;

enum class Command { dynamics, scan, propagate, oracle, list_presets };

std::string_view to_string(Command c) noexcept;

struct ScanAxis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  double value(int i) const noexcept { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

struct RunConfig {
  Command command = Command::dynamics;
  std::optional<std::string> preset;
  std::optional<Preset> inline_preset;
  std::map<std::string, double> params;  // overrides on top of the preset
  std::filesystem::path out = "out";
  double tol = 1e-8;
  std::optional<TimeGrid> grid;
  std::vector<ScanAxis> axes;
  std::optional<std::vector<double>> snapshots;
  std::optional<MixingMode> mode;
  std::optional<UnitConvention> units;  // convention of params and axis values
  double detuning_scale = 100.0;        // oracle only
  int threads = 0;                      // scan only; 0 = hardware concurrency

  /// Canonical JSON form; validate_config(to_json().dump()) round-trips.
  nlohmann::json to_json() const;
  /// Preset with overrides, grid, mode and snapshots applied.
  Preset resolved_preset() const;
};

struct Validation {
  std::optional<RunConfig> config;
  std::vector<std::string> errors;  // "<json path>: message"

  bool ok() const noexcept { return config.has_value(); }
};

/// Parses and checks a JSON run configuration, collecting every error.
Validation validate_config(std::string_view raw);
Validation validate_document(const nlohmann::json& j);

/// Closest known preset name by edit distance.
std::string nearest_preset(const std::string& name);

/// FNV-1a 64-bit hash of a byte string, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace scrap::cli
