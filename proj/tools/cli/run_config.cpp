#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include <scrap/errors.hpp>

namespace scrap::cli {

using nlohmann::json;

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::dynamics: return "dynamics";
    case Command::scan: return "scan";
    case Command::propagate: return "propagate";
    case Command::oracle: return "oracle";
    case Command::list_presets: return "list-presets";
  }
  return "unknown";
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

const std::vector<std::pair<std::string, Command>> commands{{"dynamics", Command::dynamics},
                                                            {"scan", Command::scan},
                                                            {"propagate", Command::propagate},
                                                            {"oracle", Command::oracle},
                                                            {"list-presets", Command::list_presets}};

const std::vector<std::string> known_keys{"schema_version", "command", "preset",    "inline", "params",
                                          "out",            "tol",     "grid",      "axes",   "snapshots",
                                          "mode",           "units",   "detuning_scale",      "threads"};

struct Collector {
  std::vector<std::string> errors;
  void add(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }
};

std::optional<double> number_at(const json& j, const std::string& path, Collector& c) {
  if (!j.is_number()) {
    c.add(path, "expected a number");
    return std::nullopt;
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    c.add(path, "must be finite");
    return std::nullopt;
  }
  return v;
}

std::optional<TimeGrid> grid_at(const json& j, const std::string& path, Collector& c) {
  if (!j.is_object()) {
    c.add(path, "expected an object {t_start, t_end, n_samples}");
    return std::nullopt;
  }
  TimeGrid g;
  bool ok = true;
  for (const char* key : {"t_start", "t_end", "n_samples"})
    if (!j.contains(key)) {
      c.add(path + "/" + key, "required");
      ok = false;
    }
  if (!ok) return std::nullopt;
  auto t0 = number_at(j["t_start"], path + "/t_start", c);
  auto t1 = number_at(j["t_end"], path + "/t_end", c);
  if (!j["n_samples"].is_number_integer() || j["n_samples"].get<long long>() < 2) {
    c.add(path + "/n_samples", "expected an integer >= 2");
    return std::nullopt;
  }
  if (!t0 || !t1) return std::nullopt;
  g.t_start = *t0;
  g.t_end = *t1;
  g.n_samples = static_cast<std::size_t>(j["n_samples"].get<long long>());
  try {
    g.validate();
  } catch (const ConfigError& e) {
    c.add(path, e.what());
    return std::nullopt;
  }
  return g;
}

template <class E>
std::optional<E> enum_at(const json& j, const std::string& path, Collector& c,
                         const std::vector<std::pair<std::string, E>>& values) {
  std::string list;
  for (const auto& [name, v] : values) list += (list.empty() ? "" : ", ") + name;
  if (j.is_string())
    for (const auto& [name, v] : values)
      if (j.get<std::string>() == name) return v;
  c.add(path, "expected one of: " + list);
  return std::nullopt;
}

const std::vector<std::pair<std::string, MixingMode>> modes{{"difference", MixingMode::difference},
                                                            {"sum", MixingMode::sum}};
const std::vector<std::pair<std::string, UnitConvention>> unit_names{{"angular", UnitConvention::angular},
                                                                     {"cyclic", UnitConvention::cyclic}};
const std::vector<std::pair<std::string, PresetKind>> kinds{{"reduced", PresetKind::reduced},
                                                            {"rectangular", PresetKind::rectangular},
                                                            {"hg_entry", PresetKind::hg_entry},
                                                            {"hg_propagation", PresetKind::hg_propagation}};

bool known_param(PresetKind k, const std::string& key) {
  const auto& names = parameter_names(k);
  return std::find(names.begin(), names.end(), key) != names.end();
}

std::string param_list(PresetKind k) {
  std::string list;
  for (const auto& n : parameter_names(k)) list += (list.empty() ? "" : ", ") + n;
  return list;
}

std::optional<std::vector<double>> depths_at(const json& j, const std::string& path, Collector& c) {
  if (!j.is_array()) {
    c.add(path, "expected an array of depths");
    return std::nullopt;
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto v = number_at(j[i], path + "/" + std::to_string(i), c);
    if (v && *v < 0.0) c.add(path + "/" + std::to_string(i), "depth must be >= 0");
    if (v) out.push_back(*v);
  }
  return out;
}

std::optional<Preset> inline_at(const json& j, const std::string& path, Collector& c) {
  if (!j.is_object()) {
    c.add(path, "expected an object {kind, params, grid}");
    return std::nullopt;
  }
  const std::size_t before = c.errors.size();
  Preset p;
  p.name = "inline";
  if (!j.contains("kind")) {
    c.add(path + "/kind", "required");
    return std::nullopt;
  }
  auto kind = enum_at(j["kind"], path + "/kind", c, kinds);
  if (!kind) return std::nullopt;
  p.kind = *kind;
  const bool hg = *kind == PresetKind::hg_entry || *kind == PresetKind::hg_propagation;
  p.units = hg ? UnitConvention::cyclic : UnitConvention::angular;
  if (j.contains("units"))
    if (auto u = enum_at(j["units"], path + "/units", c, unit_names)) p.units = *u;
  if (!j.contains("params") || !j["params"].is_object()) {
    c.add(path + "/params", "required object with keys: " + param_list(*kind));
  } else {
    for (const auto& [key, value] : j["params"].items()) {
      if (!known_param(*kind, key)) {
        c.add(path + "/params/" + key, "unknown parameter; expected one of: " + param_list(*kind));
        continue;
      }
      if (auto v = number_at(value, path + "/params/" + key, c)) p.params[key] = *v;
    }
    for (const auto& key : parameter_names(*kind))
      if (!j["params"].contains(key)) c.add(path + "/params/" + key, "required");
  }
  if (j.contains("grid")) {
    if (auto g = grid_at(j["grid"], path + "/grid", c)) p.grid = *g;
  } else {
    p.grid = hg ? TimeGrid{-6.0, 12.0, 512} : TimeGrid{};
  }
  if (j.contains("mode"))
    if (auto m = enum_at(j["mode"], path + "/mode", c, modes)) p.mode = *m;
  if (j.contains("snapshots"))
    if (auto s = depths_at(j["snapshots"], path + "/snapshots", c)) p.snapshots = *s;
  if (c.errors.size() != before) return std::nullopt;
  try {
    if (p.kind == PresetKind::hg_propagation)
      (void)propagation_setup_of(p);
    else
      (void)drive_of(p);
  } catch (const ConfigError& e) {
    c.add(path, e.what());
    return std::nullopt;
  }
  return p;
}

}  // namespace

std::string nearest_preset(const std::string& name) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& n : preset_names()) {
    const std::size_t d = edit_distance(name, n);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

Preset RunConfig::resolved_preset() const {
  Preset p = inline_preset ? *inline_preset : preset ? scrap::preset(*preset) : Preset{};
  for (const auto& [key, value] : params) {
    double v = value;
    if (units && is_frequency_parameter(p.kind, key)) v = convert_units(v, *units, p.units);
    p.set(key, v);
  }
  if (grid) p.grid = *grid;
  if (mode) p.mode = *mode;
  if (snapshots) p.snapshots = *snapshots;
  return p;
}

json RunConfig::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["command"] = std::string(to_string(command));
  if (preset) j["preset"] = *preset;
  if (inline_preset) {
    const Preset& p = *inline_preset;
    json ij{{"kind", std::string(to_string(p.kind))},
            {"units", std::string(scrap::to_string(p.units))},
            {"params", p.params},
            {"grid", {{"t_start", p.grid.t_start}, {"t_end", p.grid.t_end}, {"n_samples", p.grid.n_samples}}},
            {"mode", std::string(scrap::to_string(p.mode))}};
    if (!p.snapshots.empty()) ij["snapshots"] = p.snapshots;
    j["inline"] = ij;
  }
  if (!params.empty()) j["params"] = params;
  j["out"] = out.string();
  j["tol"] = tol;
  if (grid) j["grid"] = {{"t_start", grid->t_start}, {"t_end", grid->t_end}, {"n_samples", grid->n_samples}};
  if (!axes.empty()) {
    j["axes"] = json::array();
    for (const auto& a : axes) j["axes"].push_back({{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}});
  }
  if (snapshots) j["snapshots"] = *snapshots;
  if (mode) j["mode"] = std::string(scrap::to_string(*mode));
  if (units) j["units"] = std::string(scrap::to_string(*units));
  if (command == Command::oracle) j["detuning_scale"] = detuning_scale;
  if (threads != 0) j["threads"] = threads;
  return j;
}

Validation validate_config(std::string_view raw) {
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& e) {
    return {std::nullopt, {std::string("/: invalid JSON: ") + e.what()}};
  }
  return validate_document(j);
}

Validation validate_document(const json& j) {
  Collector c;
  if (!j.is_object()) return {std::nullopt, {"/: expected a JSON object"}};
  RunConfig cfg;

  for (const auto& [key, value] : j.items())
    if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) c.add("/" + key, "unknown field");

  if (!j.contains("schema_version")) {
    c.add("/schema_version", "required");
  } else if (!j["schema_version"].is_number_integer() || j["schema_version"].get<long long>() != schema_version) {
    c.add("/schema_version", fmt::format("unsupported; expected {}", schema_version));
  }

  bool have_command = false;
  if (!j.contains("command")) {
    c.add("/command", "required");
  } else if (auto cmd = enum_at(j["command"], "/command", c, commands)) {
    cfg.command = *cmd;
    have_command = true;
  }

  if (j.contains("preset")) {
    if (!j["preset"].is_string()) {
      c.add("/preset", "expected a string");
    } else {
      const std::string name = j["preset"].get<std::string>();
      try {
        (void)preset(name);
        cfg.preset = name;
      } catch (const ConfigError&) {
        c.add("/preset", "unknown preset '" + name + "'; did you mean '" + nearest_preset(name) + "'?");
      }
    }
  }
  if (j.contains("inline")) cfg.inline_preset = inline_at(j["inline"], "/inline", c);

  const bool needs_source = have_command && (cfg.command == Command::dynamics || cfg.command == Command::scan ||
                                             cfg.command == Command::propagate);
  if (j.contains("preset") && j.contains("inline")) c.add("/preset", "give either preset or inline, not both");
  if (needs_source && !j.contains("preset") && !j.contains("inline"))
    c.add("/preset", "required (or /inline) for command " + std::string(to_string(cfg.command)));

  if (j.contains("units"))
    if (auto u = enum_at(j["units"], "/units", c, unit_names)) cfg.units = *u;
  if (j.contains("mode"))
    if (auto m = enum_at(j["mode"], "/mode", c, modes)) cfg.mode = *m;

  std::optional<PresetKind> kind;
  if (cfg.inline_preset) kind = cfg.inline_preset->kind;
  if (cfg.preset) kind = preset(*cfg.preset).kind;

  if (j.contains("params")) {
    if (!j["params"].is_object()) {
      c.add("/params", "expected an object of parameter overrides");
    } else {
      for (const auto& [key, value] : j["params"].items()) {
        if (kind && !known_param(*kind, key)) {
          c.add("/params/" + key, "unknown parameter; expected one of: " + param_list(*kind));
          continue;
        }
        if (auto v = number_at(value, "/params/" + key, c)) cfg.params[key] = *v;
      }
    }
  }

  if (j.contains("out")) {
    if (!j["out"].is_string() || j["out"].get<std::string>().empty())
      c.add("/out", "expected a non-empty path string");
    else
      cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("tol"))
    if (auto t = number_at(j["tol"], "/tol", c)) {
      if (*t <= 0.0 || *t > 1e-3)
        c.add("/tol", "must lie in (0, 1e-3]");
      else
        cfg.tol = *t;
    }
  if (j.contains("grid")) cfg.grid = grid_at(j["grid"], "/grid", c);

  if (j.contains("axes")) {
    if (!j["axes"].is_array()) {
      c.add("/axes", "expected an array");
    } else {
      for (std::size_t i = 0; i < j["axes"].size(); ++i) {
        const json& a = j["axes"][i];
        const std::string path = "/axes/" + std::to_string(i);
        if (!a.is_object()) {
          c.add(path, "expected an object {name, lo, hi, n}");
          continue;
        }
        ScanAxis ax;
        bool ok = true;
        if (!a.contains("name") || !a["name"].is_string()) {
          c.add(path + "/name", "required string");
          ok = false;
        } else {
          ax.name = a["name"].get<std::string>();
          if (kind && !known_param(*kind, ax.name)) {
            c.add(path + "/name", "'" + ax.name + "' is not a parameter; expected one of: " + param_list(*kind));
            ok = false;
          }
          for (const auto& prev : cfg.axes)
            if (prev.name == ax.name) {
              c.add(path + "/name", "duplicate axis '" + ax.name + "'");
              ok = false;
            }
        }
        for (const char* key : {"lo", "hi"}) {
          if (!a.contains(key)) {
            c.add(path + "/" + key, "required");
            ok = false;
          } else if (auto v = number_at(a[key], path + "/" + key, c)) {
            (std::string(key) == "lo" ? ax.lo : ax.hi) = *v;
          } else {
            ok = false;
          }
        }
        if (!a.contains("n") || !a["n"].is_number_integer() || a["n"].get<long long>() < 1 ||
            a["n"].get<long long>() > 100000) {
          c.add(path + "/n", "expected an integer in [1, 100000]");
          ok = false;
        } else {
          ax.n = static_cast<int>(a["n"].get<long long>());
        }
        if (ok) cfg.axes.push_back(ax);
      }
    }
  }

  if (j.contains("snapshots")) cfg.snapshots = depths_at(j["snapshots"], "/snapshots", c);
  if (j.contains("detuning_scale"))
    if (auto d = number_at(j["detuning_scale"], "/detuning_scale", c)) {
      if (*d <= 0.0)
        c.add("/detuning_scale", "must be positive");
      else
        cfg.detuning_scale = *d;
    }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer() || j["threads"].get<long long>() < 0)
      c.add("/threads", "expected a non-negative integer");
    else
      cfg.threads = static_cast<int>(j["threads"].get<long long>());
  }

  if (have_command && kind) {
    if (cfg.command == Command::scan) {
      if (!j.contains("axes") || (j["axes"].is_array() && j["axes"].empty()))
        c.add("/axes", "scan needs at least one axis");
      if (*kind == PresetKind::hg_propagation)
        c.add("/command", "scan runs entry dynamics only; use a non-propagation preset");
    }
    if (cfg.command == Command::propagate && *kind != PresetKind::hg_propagation)
      c.add("/command", "propagate needs a propagation preset");
  }
  if (have_command && cfg.command != Command::scan && !cfg.axes.empty())
    c.add("/axes", "only valid for the scan command");

  if (c.errors.empty()) {
    try {
      const Preset p = needs_source ? cfg.resolved_preset() : Preset{};
      if (needs_source && p.propagates()) (void)propagation_setup_of(p);
      if (needs_source && !p.propagates()) (void)drive_of(p);
    } catch (const ConfigError& e) {
      c.add("/params", e.what());
    }
  }
  if (!c.errors.empty()) return {std::nullopt, std::move(c.errors)};
  return {std::move(cfg), {}};
}

}  // namespace scrap::cli
