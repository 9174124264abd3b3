#pragma once

// Five-level (g, n, m, l, f) density-matrix model without adiabatic
// elimination. Serves as a brute-force reference for the reduced model and
// supplies the algebraic (adiabatically eliminated) coherences used as
// propagation sources.

#include <string>
#include <vector>

#include "scrap/model.hpp"
#include "scrap/time_grid.hpp"
#include "scrap/twolevel.hpp"

namespace scrap {

/// Interaction-frame density-matrix elements. rho_g = 1 - rho_n.
struct FiveLevelState {
  double rho_n = 0.0;
  cplx rho_mn{}, rho_ln{}, rho_gl{}, rho_gm{}, rho_gn{}, rho_nf{}, rho_gf{};
};

/// Scaled one-photon and multi-photon detunings (angular, units 1/tau_1).
struct DetuningSet {
  double Omega_gm = 0.0;
  double Omega_mn = 0.0;
  double Omega_ln = 0.0;
  double Omega_gl = 0.0;
  double Omega_nf = 0.0;
  double Omega_gf = 0.0;
  double Omega_gn = 0.0;

  /// Builds a set satisfying the frequency-combination identities exactly:
  /// Omega_mn = Omega_gn - Omega_gm, Omega_gl = Omega_gn - Omega_ln,
  /// Omega_gf = Omega_gn + Omega_nf.
  static DetuningSet consistent(double Omega_gm, double Omega_ln, double Omega_nf, double Omega_gn);
  /// Near-resonance set derived from a medium plus the static detuning.
  static DetuningSet from_medium(const MediumSpec& m, double Omega_gn);

  /// Throws ConfigError if a one-photon detuning is zero or the identities
  /// fail beyond rounding.
  void validate() const;
};

/// One-photon Rabi envelopes (angular amplitudes) of the four fields.
struct FieldSet {
  PulseSpec pump;
  PulseSpec probe;
  PulseSpec generated;
  PulseSpec stark;
};

struct FullTrajectory {
  TimeGrid grid;
  std::vector<FiveLevelState> states;
};

/// Integrates the five-level equations from the ground state. The step is
/// capped at 0.02 / max|Omega| to resolve interaction-frame oscillations.
FullTrajectory evolve_full(const FieldSet& fields, const DetuningSet& det, double a, const TimeGrid& grid,
                           double tol = 1e-8);

/// Right-hand side of the d rho_n / dT equation evaluated on a state; used
/// to cross-check the integrated population.
double population_rate(const FiveLevelState& st, const FieldSet& fields, const DetuningSet& det, double a,
                       double t);

/// Slowly varying envelopes of the fast coherences.
struct AlgebraicCoherences {
  cplx r_mn{}, r_ln{}, r_gl{}, r_gm{}, r_nf{}, r_gf{};
};

/// Adiabatically eliminated coherences for a reduced state and complex
/// one-photon envelopes. In sum-frequency mode the probe enters the
/// l-level coherences conjugated.
AlgebraicCoherences algebraic_coherences(const TwoLevelState& st, cplx g1, cplx g2, cplx gmix, cplx gst,
                                         const DetuningSet& det, double a,
                                         MixingMode mode = MixingMode::difference);

enum class AdiabaticStatus { ok, warning, violated };

std::string_view to_string(AdiabaticStatus s) noexcept;

struct AdiabaticCheck {
  std::string transition;
  double detuning = 0.0;
  double rabi_peak = 0.0;
  double width = 0.0;
  double upper_ratio = 0.0;  // |Omega| / |G|
  double lower_ratio = 0.0;  // |G| * tau
  AdiabaticStatus upper = AdiabaticStatus::ok;
  AdiabaticStatus lower = AdiabaticStatus::ok;
  std::string note;
};

struct AdiabaticReport {
  std::vector<AdiabaticCheck> checks;
  AdiabaticStatus overall = AdiabaticStatus::ok;
};

struct AdiabaticMargins {
  double ok_ratio = 10.0;
  double violated_ratio = 3.0;
};

/// Checks |Omega_ij| >> |G_ij| >> 1/tau_i for every driven transition.
/// A failing lower inequality is only ever a "perturbative field" warning.
AdiabaticReport validate_adiabatic(const FieldSet& fields, const DetuningSet& det, double a,
                                   const AdiabaticMargins& margins = {});

struct OracleConfig {
  FieldSet fields;
  DetuningSet det;
  double a = 1.0;
  TimeGrid grid{-6.0, 12.0, 1801};
  double tol = 1e-8;
};

/// Two-photon pi/2 configuration with one-photon detunings of magnitude
/// `detuning_scale`, a = 1 (no self-shift) and exact two-photon resonance.
OracleConfig pi_half_oracle(double detuning_scale);

struct ComparisonReport {
  double max_pop_err = 0.0;
  double max_coh_err = 0.0;
  AdiabaticReport adiabatic;
};

/// Runs the reduced and the five-level model on the same physical input
/// and reports max_T |rho_n - r_n| and max_T |rho_gn e^{i Omega_gn T} - r_gn|.
ComparisonReport compare_reduced_vs_full(const OracleConfig& cfg);

}  // namespace scrap
