// scrapsim: command-line front end for the SCRAP / four-wave-mixing
// simulator. Flags are folded into a JSON run configuration, validated,
// then executed.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/run_config.hpp"
#include "cli/runner.hpp"

using nlohmann::json;
using namespace scrap::cli;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  return parts;
}

// Numbers are passed through as JSON so the validator reports them.
json number_or_text(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return s;
}

json integer_or_text(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return s;
}

struct Flags {
  std::string preset, config, out, grid, snapshots, mode, units;
  std::optional<double> tol;
  std::vector<std::string> axes;
  std::vector<std::string> params;
  std::optional<double> detuning_scale;
  std::optional<int> threads;
};

void add_common(CLI::App* sub, Flags& f, bool with_source) {
  sub->add_option("--config", f.config, "JSON run configuration file");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--tol", f.tol, "relative ODE tolerance");
  sub->add_option("--grid", f.grid, "time grid t_start:t_end:n_samples");
  sub->add_option("--units", f.units, "convention of parameter values: angular|cyclic");
  if (with_source) {
    sub->add_option("--preset", f.preset, "named preset");
    sub->add_option("--set", f.params, "parameter override name=value (repeatable)");
    sub->add_option("--mode", f.mode, "mixing mode: difference|sum");
  }
}

std::optional<json> build_config(const std::string& command, const Flags& f, std::vector<std::string>& errors) {
  json j = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) {
      errors.push_back("--config: cannot read " + f.config);
      return std::nullopt;
    }
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      errors.push_back("--config: invalid JSON: " + std::string(e.what()));
      return std::nullopt;
    }
  } else {
    j["schema_version"] = schema_version;
  }
  j["command"] = command;
  if (!f.preset.empty()) j["preset"] = f.preset;
  if (!f.out.empty()) j["out"] = f.out;
  if (f.tol) j["tol"] = *f.tol;
  if (!f.mode.empty()) j["mode"] = f.mode;
  if (!f.units.empty()) j["units"] = f.units;
  if (f.detuning_scale) j["detuning_scale"] = *f.detuning_scale;
  if (f.threads) j["threads"] = *f.threads;
  if (!f.grid.empty()) {
    const auto parts = split(f.grid, ':');
    if (parts.size() != 3)
      errors.push_back("--grid: expected t_start:t_end:n_samples");
    else
      j["grid"] = {{"t_start", number_or_text(parts[0])},
                   {"t_end", number_or_text(parts[1])},
                   {"n_samples", integer_or_text(parts[2])}};
  }
  for (const auto& a : f.axes) {
    const auto parts = split(a, ':');
    if (parts.size() != 4) {
      errors.push_back("--axis " + a + ": expected name:lo:hi:n");
      continue;
    }
    j["axes"].push_back({{"name", parts[0]},
                         {"lo", number_or_text(parts[1])},
                         {"hi", number_or_text(parts[2])},
                         {"n", integer_or_text(parts[3])}});
  }
  if (!f.snapshots.empty()) {
    j["snapshots"] = json::array();
    for (const auto& s : split(f.snapshots, ',')) j["snapshots"].push_back(number_or_text(s));
  }
  for (const auto& kv : f.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      errors.push_back("--set " + kv + ": expected name=value");
      continue;
    }
    j["params"][kv.substr(0, eq)] = number_or_text(kv.substr(eq + 1));
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SCRAP and four-wave-mixing simulator"};
  app.require_subcommand(1);
  Flags f;

  auto* dyn = app.add_subcommand("dynamics", "integrate the reduced two-level dynamics");
  add_common(dyn, f, true);
  auto* scan = app.add_subcommand("scan", "scan preset parameters over a grid");
  add_common(scan, f, true);
  scan->add_option("--axis", f.axes, "scan axis name:lo:hi:n (repeatable)");
  scan->add_option("--threads", f.threads, "worker threads (0: all cores)");
  auto* prop = app.add_subcommand("propagate", "propagate the fields through the medium");
  add_common(prop, f, true);
  prop->add_option("--snapshots", f.snapshots, "comma-separated depths Z");
  auto* oracle = app.add_subcommand("oracle", "compare reduced and five-level models");
  add_common(oracle, f, false);
  oracle->add_option("--detuning", f.detuning_scale, "one-photon detuning scale |Omega| tau_1");
  app.add_subcommand("list-presets", "print the preset registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<std::string> errors;
  auto j = build_config(command, f, errors);
  if (j && errors.empty()) {
    Validation v = validate_document(*j);
    if (v.ok()) return run(*v.config, std::cout, std::cerr);
    errors = std::move(v.errors);
  }
  for (const auto& e : errors) std::cerr << "config error " << e << '\n';
  return exit_config;
}
