#include "scrap/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "scrap/errors.hpp"

namespace scrap {

std::string_view to_string(PresetKind k) noexcept {
  switch (k) {
    case PresetKind::reduced: return "reduced";
    case PresetKind::rectangular: return "rectangular";
    case PresetKind::hg_entry: return "hg_entry";
    case PresetKind::hg_propagation: return "hg_propagation";
  }
  return "unknown";
}

const std::vector<std::string>& parameter_names(PresetKind k) {
  static const std::vector<std::string> reduced{"delta", "R", "S", "dtau", "tau_st", "beta"};
  static const std::vector<std::string> rect{"delta", "R", "duration"};
  static const std::vector<std::string> hg{"G01", "G0st", "delta", "dtau_st", "tau_st", "G20", "dtau2", "tau2", "K2"};
  static const std::vector<std::string> hg_prop{"G01",   "G0st", "delta", "dtau_st", "tau_st",
                                                "G20",   "dtau2", "tau2", "K2",      "Z_end"};
  switch (k) {
    case PresetKind::reduced: return reduced;
    case PresetKind::rectangular: return rect;
    case PresetKind::hg_entry: return hg;
    case PresetKind::hg_propagation: return hg_prop;
  }
  return reduced;
}

bool is_frequency_parameter(PresetKind k, const std::string& key) {
  switch (k) {
    case PresetKind::reduced: return key == "delta" || key == "R" || key == "S";
    case PresetKind::rectangular: return key == "delta" || key == "R";
    case PresetKind::hg_entry:
    case PresetKind::hg_propagation: return key == "G01" || key == "G0st" || key == "delta" || key == "G20";
  }
  return false;
}

double Preset::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("preset " + name + " has no parameter '" + key + "'");
  return it->second;
}

void Preset::set(const std::string& key, double value) {
  const auto& names = parameter_names(kind);
  if (std::find(names.begin(), names.end(), key) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown parameter '" + key + "' for " + std::string(to_string(kind)) +
                      " preset; expected one of: " + list);
  }
  if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
  params[key] = value;
}

namespace {

const TimeGrid reduced_grid{-6.0, 12.0, 2001};
const TimeGrid hg_grid{-8.0, 12.0, 2001};
const TimeGrid hg_prop_grid{-6.0, 12.0, 512};

Preset reduced(std::string name, std::string note, double delta, double R, double S, double dtau,
               double beta = 0.0) {
  Preset p;
  p.name = std::move(name);
  p.note = std::move(note);
  p.params = {{"delta", delta}, {"R", R}, {"S", S}, {"dtau", dtau}, {"tau_st", 1.6}, {"beta", beta}};
  p.grid = reduced_grid;
  return p;
}

Preset hg(std::string name, std::string note, double G01, double G0st, double delta, double dtau_st) {
  Preset p;
  p.name = std::move(name);
  p.kind = PresetKind::hg_entry;
  p.note = std::move(note);
  p.units = UnitConvention::cyclic;
  p.params = {{"G01", G01},         {"G0st", G0st}, {"delta", delta}, {"dtau_st", dtau_st}, {"tau_st", 1.6},
              {"G20", 1.6e-2},      {"dtau2", 5.0}, {"tau2", 1.0},    {"K2", 0.04}};
  p.grid = hg_grid;
  return p;
}

Preset hg_run(std::string name, std::string note, double delta, double dtau_st, double dtau2, double Z_end,
              MixingMode mode = MixingMode::difference, double K2 = 0.04) {
  Preset p = hg(std::move(name), std::move(note), 910.0, 325.0, delta, dtau_st);
  p.kind = PresetKind::hg_propagation;
  p.params["dtau2"] = dtau2;
  p.params["K2"] = K2;
  p.params["Z_end"] = Z_end;
  p.mode = mode;
  p.grid = hg_prop_grid;
  for (double z = 0.0; z <= Z_end * (1.0 + 1e-12); z += 5e5) p.snapshots.push_back(z);
  return p;
}

std::vector<Preset> build_registry() {
  std::vector<Preset> r;
  const double pi = std::numbers::pi;

  for (auto [suffix, delta] : {std::pair{"solid", 0.0}, {"dashed", 1.259}, {"dashdot", 2.5}}) {
    Preset p;
    p.name = std::string("fig3_") + suffix;
    p.kind = PresetKind::rectangular;
    p.note = "rectangular pulse, R = 2pi/5; solid delta = 0, dashed 1.259, dash-dotted 2.5";
    p.params = {{"delta", delta}, {"R", 2.0 * pi / 5.0}, {"duration", 10.0}};
    p.grid = {0.0, 10.0, 1001};
    r.push_back(p);
  }

  const std::string f4 = "tau_St/tau_1 = 1.6; solid delta = 0, S = 0, R = 0.886; dashed delta = 5, S = 7.4, "
                         "R = 3.18, dtau = 1.8; dash-dotted delta = 20, S = 23, R = 3.48, dtau = 1.34";
  r.push_back(reduced("fig4_solid", f4, 0.0, 0.886, 0.0, 0.0));
  r.push_back(reduced("fig4_dashed", f4, 5.0, 3.18, 7.4, 1.8));
  r.push_back(reduced("fig4_dashdot", f4, 20.0, 3.48, 23.0, 1.34));

  const std::string f5a = "(a) delta = 5, R = 3.18, dtau = 1.8; solid S = 7.4, dashed 6.7, dash-dotted 8.1";
  r.push_back(reduced("fig5_a_solid", f5a, 5.0, 3.18, 7.4, 1.8));
  r.push_back(reduced("fig5_a_dashed", f5a, 5.0, 3.18, 6.7, 1.8));
  r.push_back(reduced("fig5_a_dashdot", f5a, 5.0, 3.18, 8.1, 1.8));
  const std::string f5b = "(b) S = 7.4, R = 3.18, dtau = 1.8; solid delta = 5, dashed 4.5, dash-dotted 5.5";
  r.push_back(reduced("fig5_b_solid", f5b, 5.0, 3.18, 7.4, 1.8));
  r.push_back(reduced("fig5_b_dashed", f5b, 4.5, 3.18, 7.4, 1.8));
  r.push_back(reduced("fig5_b_dashdot", f5b, 5.5, 3.18, 7.4, 1.8));
  const std::string f5c = "(c) S = 23, delta = 20, dtau = 1.34; solid R = 3.48, dashed 3.85, dash-dotted 3.15";
  r.push_back(reduced("fig5_c_solid", f5c, 20.0, 3.48, 23.0, 1.34));
  r.push_back(reduced("fig5_c_dashed", f5c, 20.0, 3.85, 23.0, 1.34));
  r.push_back(reduced("fig5_c_dashdot", f5c, 20.0, 3.15, 23.0, 1.34));
  const std::string f5d = "(d) R = 3.48, S = 23, delta = 20; solid dtau = 1.34, dashed 1.2, dash-dotted 1.5";
  r.push_back(reduced("fig5_d_solid", f5d, 20.0, 3.48, 23.0, 1.34));
  r.push_back(reduced("fig5_d_dashed", f5d, 20.0, 3.48, 23.0, 1.2));
  r.push_back(reduced("fig5_d_dashdot", f5d, 20.0, 3.48, 23.0, 1.5));

  const std::string f6a = "(a) delta = 24, S = 75, dtau = 1.7; solid R = 30, dashed 15, dash-dotted 60";
  r.push_back(reduced("fig6_a_solid", f6a, 24.0, 30.0, 75.0, 1.7));
  r.push_back(reduced("fig6_a_dashed", f6a, 24.0, 15.0, 75.0, 1.7));
  r.push_back(reduced("fig6_a_dashdot", f6a, 24.0, 60.0, 75.0, 1.7));
  const std::string f6b = "(b) S = 75, R = 30, delta = 24; solid dtau = 1.7, dashed 1.1, dash-dotted 2.3";
  r.push_back(reduced("fig6_b_solid", f6b, 24.0, 30.0, 75.0, 1.7));
  r.push_back(reduced("fig6_b_dashed", f6b, 24.0, 30.0, 75.0, 1.1));
  r.push_back(reduced("fig6_b_dashdot", f6b, 24.0, 30.0, 75.0, 2.3));
  const std::string f6c = "(c) delta = 24, R = 30, dtau = 1.7; solid S = 75, dashed 50, dash-dotted 150";
  r.push_back(reduced("fig6_c_solid", f6c, 24.0, 30.0, 75.0, 1.7));
  r.push_back(reduced("fig6_c_dashed", f6c, 24.0, 30.0, 50.0, 1.7));
  r.push_back(reduced("fig6_c_dashdot", f6c, 24.0, 30.0, 150.0, 1.7));
  const std::string f6d = "(d) R = 30, S = 75, dtau = 1.7; solid delta = 24, dashed 12, dash-dotted 48";
  r.push_back(reduced("fig6_d_solid", f6d, 24.0, 30.0, 75.0, 1.7));
  r.push_back(reduced("fig6_d_dashed", f6d, 12.0, 30.0, 75.0, 1.7));
  r.push_back(reduced("fig6_d_dashdot", f6d, 48.0, 30.0, 75.0, 1.7));

  const std::string f7 = "S = 0, R = 0.886; solid beta = 0, delta = 0; dash-dotted beta = -1, delta = 0; "
                         "dashed beta = -1, delta = -0.65";
  r.push_back(reduced("fig7_solid", f7, 0.0, 0.886, 0.0, 0.0, 0.0));
  r.push_back(reduced("fig7_dashdot", f7, 0.0, 0.886, 0.0, 0.0, -1.0));
  r.push_back(reduced("fig7_dashed", f7, -0.65, 0.886, 0.0, 0.0, -1.0));

  const std::string f8 = "R = 20, S = 0, beta = -0.5; (a) delta = 0, (b) delta = -3, (c) dashed delta = -10, "
                         "solid delta = -15";
  r.push_back(reduced("fig8_a_solid", f8, 0.0, 20.0, 0.0, 0.0, -0.5));
  r.push_back(reduced("fig8_b_solid", f8, -3.0, 20.0, 0.0, 0.0, -0.5));
  r.push_back(reduced("fig8_c_dashed", f8, -10.0, 20.0, 0.0, 0.0, -0.5));
  r.push_back(reduced("fig8_c_solid", f8, -15.0, 20.0, 0.0, 0.0, -0.5));

  const std::string f9 = "beta = -0.5, S = 15, delta = 13.65, dtau = 1.6; dashed R = 15, solid R = 30";
  r.push_back(reduced("fig9_dashed", f9, 13.65, 15.0, 15.0, 1.6, -0.5));
  r.push_back(reduced("fig9_solid", f9, 13.65, 30.0, 15.0, 1.6, -0.5));

  const std::string f10 = "beta = -0.5, S = 75, R = 20, dtau = 1.4; dashed delta = 10, solid delta = 24";
  r.push_back(reduced("fig10_dashed", f10, 10.0, 20.0, 75.0, 1.4, -0.5));
  r.push_back(reduced("fig10_solid", f10, 24.0, 20.0, 75.0, 1.4, -0.5));

  const std::string f11 = "G01 = 910, G0st = 325; solid delta = 0.5, dtau_st = -3; dashed delta = 5.6, dtau_st = 2";
  r.push_back(hg("fig11_solid", f11, 910.0, 325.0, 0.5, -3.0));
  r.push_back(hg("fig11_dashed", f11, 910.0, 325.0, 5.6, 2.0));
  const std::string f12 = "G0st = 325, delta = 0.5, dtau_st = -3; solid G01 = 910, dashed 1173, dash-dotted 525";
  r.push_back(hg("fig12_solid", f12, 910.0, 325.0, 0.5, -3.0));
  r.push_back(hg("fig12_dashed", f12, 1173.0, 325.0, 0.5, -3.0));
  r.push_back(hg("fig12_dashdot", f12, 525.0, 325.0, 0.5, -3.0));
  const std::string f13 = "G01 = 910, delta = 0.5, dtau_st = -3; solid G0st = 461, dashed 266";
  r.push_back(hg("fig13_solid", f13, 910.0, 461.0, 0.5, -3.0));
  r.push_back(hg("fig13_dashed", f13, 910.0, 266.0, 0.5, -3.0));
  const std::string f14 = "G01 = 910, G0st = 325, delta = 0.5; solid dtau_st = -4, dashed -3, dash-dotted -2";
  r.push_back(hg("fig14_solid", f14, 910.0, 325.0, 0.5, -4.0));
  r.push_back(hg("fig14_dashed", f14, 910.0, 325.0, 0.5, -3.0));
  r.push_back(hg("fig14_dashdot", f14, 910.0, 325.0, 0.5, -2.0));

  const std::string f15 = "Z = 3e6; (a,c) entry as fig11 solid with dtau2 = 5; (b,d) fig11 dashed with dtau2 = 0";
  r.push_back(hg_run("fig15_a", f15, 0.5, -3.0, 5.0, 3e6));
  r.push_back(hg_run("fig15_b", f15, 5.6, 2.0, 0.0, 3e6));
  r.push_back(hg_run("fig15_c", f15, 0.5, -3.0, 5.0, 3e6));
  r.push_back(hg_run("fig15_d", f15, 5.6, 2.0, 0.0, 3e6));
  r.push_back(hg_run("fig16", "delta = 0.5, dtau_st = -3", 0.5, -3.0, 5.0, 3e6));
  const std::string f17 = "(a) down-conversion, (b) up-conversion, fig11 solid entry with dtau2 = 5; (c,d) "
                          "down-conversion, fig11 dashed entry with dtau2 = 0";
  r.push_back(hg_run("fig17a", f17, 0.5, -3.0, 5.0, 3e6));
  r.push_back(hg_run("fig17b", f17, 0.5, -3.0, 5.0, 3e6, MixingMode::sum));
  r.push_back(hg_run("fig17c", f17, 5.6, 2.0, 0.0, 3e6));
  r.push_back(hg_run("fig17d", f17, 5.6, 2.0, 0.0, 3e6));
  r.push_back(hg_run("fig18", "all parameters as fig17c", 5.6, 2.0, 0.0, 3e6));
  const std::string f19 = "Z = 1e6, G01 = 910, G0st = 325; solid delta = 0.5, dtau_st = -3; dashed delta = 5.6, "
                          "dtau_st = 2";
  r.push_back(hg_run("fig19_solid", f19, 0.5, -3.0, 5.0, 1e6));
  r.push_back(hg_run("fig19_dashed", f19, 5.6, 2.0, 0.0, 1e6));
  r.push_back(hg_run("fig20", "as fig17a with K2 = 0.4", 0.5, -3.0, 5.0, 3e6, MixingMode::difference, 0.4));
  return r;
}

const std::vector<Preset>& registry() {
  static const std::vector<Preset> r = build_registry();
  return r;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : registry()) out.push_back(p.name);
  return out;
}

Preset preset(const std::string& name) {
  for (const std::string& candidate : {name, name + "_solid"})
    for (const auto& p : registry())
      if (p.name == candidate) return p;
  std::string list;
  for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + name + "'; known presets: " + list);
}

MediumSpec hg_medium(MixingMode mode) {
  MediumSpec m;
  m.a = 0.345;
  m.K1 = 0.67;
  m.K2 = 0.04;
  m.Kminus = 1.0;
  m.det_gm = -2.4e5;
  m.det_ln = -2.2e4;
  m.det_nf = 8.9e3;
  m.mixing_mode = mode;
  return m;
}

std::optional<MediumSpec> medium_of(const Preset& p) {
  if (p.kind != PresetKind::hg_entry && p.kind != PresetKind::hg_propagation) return std::nullopt;
  MediumSpec m = hg_medium(p.mode);
  m.K2 = p.param("K2");
  m.validate();
  return m;
}

namespace {

double freq(const Preset& p, const std::string& key) { return to_angular(p.param(key), p.units); }

}  // namespace

DriveConfig drive_of(const Preset& p) {
  DriveConfig d;
  switch (p.kind) {
    case PresetKind::reduced:
      d.delta = freq(p, "delta");
      d.pump = PulseSpec::gaussian(freq(p, "R"), 1.0, 0.0);
      d.stark = PulseSpec::gaussian(freq(p, "S"), p.param("tau_st"), p.param("dtau"));
      d.beta = p.param("beta");
      break;
    case PresetKind::rectangular: {
      const double T = p.param("duration");
      d.delta = freq(p, "delta");
      d.pump = PulseSpec::rectangular(freq(p, "R"), T, 0.5 * T);
      d.stark = PulseSpec::gaussian(0.0);
      break;
    }
    case PresetKind::hg_entry:
    case PresetKind::hg_propagation: {
      const MediumSpec m = *medium_of(p);
      const cplx g1 = freq(p, "G01");
      const cplx g2 = freq(p, "G20");
      const cplx gst = freq(p, "G0st");
      const TwoPhotonQuantities q = two_photon_quantities(g1, g2, 0.0, gst, m);
      d.delta = freq(p, "delta");
      d.pump = PulseSpec::gaussian(std::abs(q.r1), 1.0, 0.0);
      d.stark = PulseSpec::gaussian(q.s, p.param("tau_st"), p.param("dtau_st"));
      d.beta = self_shift_coefficient(m);
      if (g2 != 0.0) {
        ProbeTerms t;
        t.r2 = PulseSpec::gaussian(0.0);
        t.s2 = {PulseShape::gaussian, q.s2, p.param("tau2"), p.param("dtau2")};
        t.smix = PulseSpec::gaussian(0.0);
        d.probe_terms = t;
      }
      break;
    }
  }
  d.validate();
  return d;
}

PropagationSetup propagation_setup_of(const Preset& p) {
  if (!p.propagates()) throw ConfigError("preset " + p.name + " is not a propagation preset");
  PropagationSetup s;
  s.medium = *medium_of(p);
  s.entry = FieldSlice::from_pulses(p.grid, PulseSpec::gaussian(freq(p, "G01"), 1.0, 0.0),
                                    PulseSpec::gaussian(freq(p, "G20"), p.param("tau2"), p.param("dtau2")));
  s.stark = PulseSpec::gaussian(freq(p, "G0st"), p.param("tau_st"), p.param("dtau_st"));
  s.delta = freq(p, "delta");
  return s;
}

double depth_of(const Preset& p) {
  if (!p.propagates()) throw ConfigError("preset " + p.name + " is not a propagation preset");
  return p.param("Z_end");
}

void HgCalibration::validate() const {
  for (double v : {lambda1_nm, lambda_st_nm, lambda2_nm, lambda_minus_nm, lambda_plus_nm, tau1_s, f_lg, g_g})
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("calibration constants must be positive and finite");
  const double expected = 1.0 / (2.0 / lambda1_nm - 1.0 / lambda2_nm);
  if (std::abs(lambda_minus_nm - expected) > 5e-3 * expected)
    throw ConfigError("lambda_minus inconsistent with 2/lambda1 - 1/lambda2");
}

AbsorptionScale absorption_scale(const HgCalibration& cal, double N) {
  cal.validate();
  if (!(N > 0.0) || !std::isfinite(N)) throw ConfigError("number density must be positive");
  AbsorptionScale s;
  s.alpha_minus = 0.67 * cal.g_g * cal.f_lg * N / 4.0;
  s.per_cm = s.alpha_minus * cal.tau1_s / two_pi;
  s.z0_cm = 1.0 / s.per_cm;
  return s;
}

}  // namespace scrap
