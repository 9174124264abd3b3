#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <scrap/artifacts.hpp>
#include <scrap/errors.hpp>
#include <scrap/multilevel.hpp>
#include <scrap/version.hpp>

namespace scrap::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class OutputDir {
public:
  explicit OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  std::ofstream open(const std::string& name) {
    std::ofstream f(root_ / name, std::ios::binary | std::ios::trunc);
    if (!f) throw fs::filesystem_error("cannot write", root_ / name, std::make_error_code(std::errc::io_error));
    files_.push_back(name);
    return f;
  }

  void write_json(const std::string& name, const json& j) {
    auto f = open(name);
    f << j.dump(2) << '\n';
  }

  void write_manifest(const RunConfig& cfg) {
    const std::string canonical = cfg.to_json().dump();
    json m{{"config", cfg.to_json()},
           {"config_hash", fnv1a_hex(canonical)},
           {"versions", {{"scrapsim", scrap::version}, {"scrap_core", scrap::version}, {"schema", schema_version}}},
           {"files", files_}};
    std::ofstream f(root_ / "manifest.json", std::ios::binary | std::ios::trunc);
    f << m.dump(2) << '\n';
  }

private:
  fs::path root_;
  std::vector<std::string> files_;
};

json metrics_json(const ConversionMetrics& m) {
  return {{"eps_ph", {{"g1", m.eps_ph.pump}, {"g2", m.eps_ph.probe}, {"gmix", m.eps_ph.generated}}},
          {"w_ph_max", {{"g1", m.w_ph_max.pump}, {"g2", m.w_ph_max.probe}, {"gmix", m.w_ph_max.generated}}},
          {"g1_energy_ratio", m.g1_energy_ratio}};
}

void run_dynamics(const RunConfig& cfg, OutputDir& dir) {
  const Preset p = cfg.resolved_preset();
  const Trajectory tr = evolve(drive_of(p), p.grid, cfg.tol);
  {
    auto f = dir.open("trajectory.csv");
    write_trajectory_csv(f, tr);
  }
  const CoherenceStats st = coherence_stats(tr);
  double purity = 0.0;
  for (const auto& s : tr.states) purity = std::max(purity, std::abs(s.purity_defect()));
  json summary{{"preset", p.name},       {"final_r_n", st.final_rn},   {"final_abs_r_gn", st.final_coh},
               {"max_abs_r_gn", st.max_coh}, {"t_of_max", st.t_of_max}, {"max_purity_defect", purity}};
  if (st.plateau)
    summary["plateau"] = {{"t_begin", st.plateau->t_begin}, {"t_end", st.plateau->t_end},
                          {"level", st.plateau->level}};
  dir.write_json("summary.json", summary);
}

void run_propagate(const RunConfig& cfg, OutputDir& dir, std::ostream& err) {
  const Preset p = cfg.resolved_preset();
  StepControl ctrl;
  ctrl.snapshots = p.snapshots;
  ctrl.atomic_tol = cfg.tol;
  const PropagationRecord rec = propagate(propagation_setup_of(p), depth_of(p), ctrl);

  json summary{{"preset", p.name}, {"mode", std::string(to_string(p.mode))}, {"Z", json::array()},
               {"slices", json::array()}, {"metrics", json::array()}};
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    const auto& s = rec.snapshots[i];
    const std::string name = fmt::format("slice_{:03d}.csv", i);
    {
      auto f = dir.open(name);
      write_slice_csv(f, s);
    }
    summary["Z"].push_back(s.Z);
    summary["slices"].push_back(name);
    summary["metrics"].push_back(s.metrics ? metrics_json(*s.metrics) : json(nullptr));
  }
  if (rec.depth_metrics.front()) {
    auto f = dir.open("metrics.csv");
    write_metrics_csv(f, rec);
  } else {
    err << "note: zero probe at entry; metrics.csv not written\n";
  }
  summary["depth_steps"] = rec.xi_samples.size() - 1;
  dir.write_json("propagation.json", summary);
}

void run_oracle(const RunConfig& cfg, OutputDir& dir) {
  OracleConfig oc = pi_half_oracle(cfg.detuning_scale);
  oc.tol = cfg.tol;
  if (cfg.grid) oc.grid = *cfg.grid;
  const ComparisonReport r = compare_reduced_vs_full(oc);
  json checks = json::array();
  for (const auto& c : r.adiabatic.checks)
    checks.push_back({{"transition", c.transition},
                      {"upper_ratio", c.upper_ratio},
                      {"lower_ratio", c.lower_ratio},
                      {"upper", std::string(to_string(c.upper))},
                      {"lower", std::string(to_string(c.lower))},
                      {"note", c.note}});
  json j{{"config",
          {{"detuning_scale", cfg.detuning_scale},
           {"a", oc.a},
           {"tol", oc.tol},
           {"grid", {{"t_start", oc.grid.t_start}, {"t_end", oc.grid.t_end}, {"n_samples", oc.grid.n_samples}}},
           {"Omega_gm", oc.det.Omega_gm},
           {"Omega_ln", oc.det.Omega_ln},
           {"Omega_nf", oc.det.Omega_nf},
           {"Omega_gn", oc.det.Omega_gn}}},
         {"max_pop_err", r.max_pop_err},
         {"max_coh_err", r.max_coh_err},
         {"adiabatic", {{"overall", std::string(to_string(r.adiabatic.overall))}, {"checks", checks}}}};
  dir.write_json("oracle.json", j);
}

void run_scan_command(const RunConfig& cfg, OutputDir& dir) {
  const Preset p = cfg.resolved_preset();
  const auto rows = run_scan(p, cfg.axes, cfg.units, cfg.tol, cfg.threads);
  auto f = dir.open("scan.csv");
  for (const auto& a : cfg.axes) f << a.name << ',';
  f << "final_r_n,final_|r_gn|,max_|r_gn|\n";
  for (const auto& r : rows) {
    for (double v : r.axis_values) fmt::print(f, "{:.12g},", v);
    fmt::print(f, "{:.12g},{:.12g},{:.12g}\n", r.final_rn, r.final_coh, r.max_coh);
  }
}

void list_presets(std::ostream& out) {
  for (const auto& name : preset_names()) {
    const Preset p = preset(name);
    fmt::print(out, "{:<16} {:<15} {}\n", p.name, to_string(p.kind), p.note);
  }
}

}  // namespace

std::vector<ScanRow> run_scan(const Preset& base, const std::vector<ScanAxis>& axes,
                              std::optional<UnitConvention> units, double tol, int threads) {
  std::size_t total = 1;
  for (const auto& a : axes) total *= static_cast<std::size_t>(a.n);

  std::vector<ScanRow> rows(total);
  std::vector<Preset> points(total, base);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    rows[k].axis_values.resize(axes.size());
    for (std::size_t ai = axes.size(); ai-- > 0;) {
      const int idx = static_cast<int>(rem % static_cast<std::size_t>(axes[ai].n));
      rem /= static_cast<std::size_t>(axes[ai].n);
      const double v = axes[ai].value(idx);
      rows[k].axis_values[ai] = v;
      const double internal =
          units && is_frequency_parameter(base.kind, axes[ai].name) ? convert_units(v, *units, base.units) : v;
      points[k].set(axes[ai].name, internal);
    }
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(total);
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      try {
        const Trajectory tr = evolve(drive_of(points[k]), points[k].grid, tol);
        const CoherenceStats st = coherence_stats(tr);
        rows[k].final_rn = st.final_rn;
        rows[k].final_coh = st.final_coh;
        rows[k].max_coh = st.max_coh;
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(total, threads > 0 ? static_cast<unsigned>(threads) : hw);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScanRow& a, const ScanRow& b) { return a.axis_values < b.axis_values; });
  return rows;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == Command::list_presets) {
      list_presets(out);
      return exit_ok;
    }
    OutputDir dir(cfg.out);
    switch (cfg.command) {
      case Command::dynamics: run_dynamics(cfg, dir); break;
      case Command::scan: run_scan_command(cfg, dir); break;
      case Command::propagate: run_propagate(cfg, dir, err); break;
      case Command::oracle: run_oracle(cfg, dir); break;
      case Command::list_presets: break;
    }
    dir.write_manifest(cfg);
    return exit_ok;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  }
}

}  // namespace scrap::cli
