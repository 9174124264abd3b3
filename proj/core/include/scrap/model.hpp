#pragma once

// Domain types shared by every module: pulse envelopes, drive and medium
// parameters, the reduced two-level state, and the algebra that turns
// one-photon Rabi envelopes into two-photon couplings and Stark shifts.
//
// Internal convention: every amplitude, detuning and shift is angular and
// scaled to the pump duration tau_1 (x -> x * tau_1). Time is in units of
// tau_1. The cyclic convention (x * tau_1 / 2pi) only appears at I/O.

#include <complex>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

namespace scrap {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class PulseShape { gaussian, rectangular };
enum class UnitConvention { angular, cyclic };
enum class MixingMode { difference, sum };

std::string_view to_string(PulseShape shape) noexcept;
std::string_view to_string(UnitConvention units) noexcept;
std::string_view to_string(MixingMode mode) noexcept;

/// Converts a scaled frequency-like quantity between conventions.
/// angular -> cyclic divides by 2pi; identical conventions are a no-op.
double convert_units(double x, UnitConvention from, UnitConvention to) noexcept;

inline double to_angular(double x, UnitConvention from) noexcept {
  return convert_units(x, from, UnitConvention::angular);
}

/// One laser pulse envelope. `width_ratio` is tau_i / tau_1 and `delay`
/// is the pulse centre in units of tau_1.
struct PulseSpec {
  PulseShape shape = PulseShape::gaussian;
  double amplitude = 0.0;
  double width_ratio = 1.0;
  double delay = 0.0;

  static PulseSpec gaussian(double amplitude, double width_ratio = 1.0, double delay = 0.0) {
    return {PulseShape::gaussian, amplitude, width_ratio, delay};
  }
  static PulseSpec rectangular(double amplitude, double duration, double centre) {
    return {PulseShape::rectangular, amplitude, duration, centre};
  }

  /// Throws ConfigError unless width_ratio > 0, amplitude >= 0 and all
  /// fields are finite.
  void validate() const;

  /// Times at which the envelope is discontinuous (rectangular edges).
  std::vector<double> discontinuities() const;
};

/// One-photon Rabi envelope g_i(t): a * exp(-(t - d)^2 / (2 w^2)).
/// Rectangular pulses are `amplitude` on [delay - w/2, delay + w/2].
double envelope(const PulseSpec& p, double t) noexcept;

/// Envelope of a two-photon quantity (r_i, s, s_i) driven by the pulse:
/// a * exp(-(t - d)^2 / w^2), i.e. the squared one-photon profile rescaled
/// to peak `amplitude`. Identical to `envelope` for rectangular pulses.
double two_photon_envelope(const PulseSpec& p, double t) noexcept;

/// Optional contributions of the probe and generated waves to the reduced
/// drive: r2 (two-photon coupling through level l) and the shifts s2, smix.
struct ProbeTerms {
  PulseSpec r2;
  PulseSpec s2;
  PulseSpec smix;
};

/// Instantaneous reduced drive: total two-photon Rabi frequency r1 + r2
/// and total shift of the two-photon resonance.
struct DriveSample {
  cplx r1{};
  cplx r2{};
  double shift = 0.0;

  cplx rabi() const noexcept { return r1 + r2; }
};

/// Generalised two-level drive. `pump.amplitude` is the peak two-photon
/// Rabi frequency R, `stark.amplitude` the peak shift S, and the pump's
/// self-shift is s1 = beta * |r1|.
struct DriveConfig {
  double delta = 0.0;
  PulseSpec pump;
  PulseSpec stark;
  double beta = 0.0;
  std::optional<ProbeTerms> probe_terms;

  void validate() const;
  DriveSample sample(double t) const noexcept;
  std::vector<double> discontinuities() const;
};

/// Atomic and propagation constants of the medium. Detunings are the
/// scaled one-photon detunings Omega_ij * tau_1 (angular). Near two-photon
/// resonance Omega_mn = -Omega_gm and Omega_gl = -Omega_ln.
struct MediumSpec {
  double a = 1.0;
  double K1 = 1.0;
  double K2 = 1.0;
  double Kminus = 1.0;
  double det_gm = 0.0;
  double det_ln = 0.0;
  double det_nf = 0.0;
  MixingMode mixing_mode = MixingMode::difference;

  double det_mn() const noexcept { return -det_gm; }
  double det_gl() const noexcept { return -det_ln; }

  /// Throws ConfigError on zero detunings or non-positive couplings.
  void validate() const;
};

MediumSpec set_mixing_mode(MediumSpec m, MixingMode mode) noexcept;

/// Reduced atomic state: upper population r_n and two-photon coherence r_gn.
struct TwoLevelState {
  double rn = 0.0;
  cplx rgn{};

  double rg() const noexcept { return 1.0 - rn; }
  /// |r_gn|^2 - r_n (1 - r_n); zero for a pure state.
  double purity_defect() const noexcept { return std::norm(rgn) - rn * (1.0 - rn); }
};

/// Two-photon couplings and shifts built from one-photon envelopes.
struct TwoPhotonQuantities {
  cplx r1{};
  cplx r2{};
  double s = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double smix = 0.0;

  double total_shift() const noexcept { return s + s1 + s2 + smix; }
};

/// Evaluates the generalised two-level couplings for complex one-photon
/// envelopes g1 (pump), g2 (probe), gmix (generated) and gst (Stark field):
///   r1 = -2 a g1^2 / Omega_gm,  s1 = (a^2 / Omega_gm + 1 / Omega_mn) |g1|^2,
///   r2 = -2 g2 gmix / Omega_gl, s2 = |g2|^2 / Omega_gl,
///   smix = |gmix|^2 / Omega_ln, s = |gst|^2 / Omega_nf.
/// In sum-frequency mode the probe enters r2 conjugated.
/// Throws ConfigError if any detuning is zero.
TwoPhotonQuantities two_photon_quantities(cplx g1, cplx g2, cplx gmix, cplx gst, const MediumSpec& m);

/// Self-shift coefficient beta = s1 / |r1| implied by the medium constants.
double self_shift_coefficient(const MediumSpec& m);

}  // namespace scrap
