#pragma once

// Named parameter sets for every published configuration plus the mercury
// calibration. A preset is a flat map of named parameters interpreted by
// its kind; builders turn it into solver inputs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scrap/model.hpp"
#include "scrap/propagation.hpp"
#include "scrap/time_grid.hpp"

namespace scrap {

enum class PresetKind {
  reduced,      // generalised two-level drive, angular units
  rectangular,  // constant drive switched on over [0, duration]
  hg_entry,     // mercury fields at the cell entrance, cyclic units
  hg_propagation,
};

std::string_view to_string(PresetKind k) noexcept;

struct Preset {
  std::string name;
  PresetKind kind = PresetKind::reduced;
  std::string note;  // parameter set the values come from
  UnitConvention units = UnitConvention::angular;
  std::map<std::string, double> params;
  TimeGrid grid;
  MixingMode mode = MixingMode::difference;
  std::vector<double> snapshots;  // propagation only

  double param(const std::string& key) const;
  /// Throws ConfigError naming the valid keys if `key` is not a parameter.
  void set(const std::string& key, double value);
  bool propagates() const noexcept { return kind == PresetKind::hg_propagation; }
};

/// Parameter names accepted by presets of the given kind.
const std::vector<std::string>& parameter_names(PresetKind k);

/// Names of parameters that carry frequency units (converted between
/// angular and cyclic conventions).
bool is_frequency_parameter(PresetKind k, const std::string& key);

/// Looks up a preset. A bare panel name such as "fig4" resolves to its
/// "_solid" variant. Throws ConfigError listing the known names.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

/// Mercury constants: a = 0.345, K1 = 0.67, K2 = 0.04, Kminus = 1 and
/// angular one-photon detunings Omega_gm = -2.4e5, Omega_ln = -2.2e4,
/// Omega_nf = 8.9e3.
MediumSpec hg_medium(MixingMode mode = MixingMode::difference);

/// Medium for a preset (mercury with any K2 override); empty for reduced
/// presets.
std::optional<MediumSpec> medium_of(const Preset& p);

/// Reduced drive in angular units. For mercury presets the two-photon
/// quantities are evaluated from the peak one-photon amplitudes.
DriveConfig drive_of(const Preset& p);

/// Entry slice, Stark field and medium for a propagation preset.
PropagationSetup propagation_setup_of(const Preset& p);
double depth_of(const Preset& p);

struct HgCalibration {
  double lambda1_nm = 268.8;
  double lambda_st_nm = 1064.0;
  double lambda2_nm = 532.0;
  double lambda_minus_nm = 179.8;
  double lambda_plus_nm = 107.3;
  double tau1_s = 3e-9;
  double f_lg = 0.96;
  double g_g = 1.0;

  /// Throws ConfigError on non-positive values or if lambda_minus is off
  /// 1/lambda_minus = 2/lambda1 - 1/lambda2 by more than 0.5 %.
  void validate() const;
};

struct AbsorptionScale {
  double alpha_minus = 0.0;  // frequency-integrated, cm^-1 s^-1
  double per_cm = 0.0;       // alpha_minus tau_1 / 2pi, units of Z per cm
  double z0_cm = 0.0;        // cm per unit Z

  double Z_to_cm(double Z) const noexcept { return Z * z0_cm; }
};

/// alpha_minus = 0.67 g_g f N / 4 for number density N in cm^-3.
AbsorptionScale absorption_scale(const HgCalibration& cal, double N);

}  // namespace scrap
