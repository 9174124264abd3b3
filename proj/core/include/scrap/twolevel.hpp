#pragma once

// Reduced two-level dynamics of the g-n two-photon transition:
//   d r_n / dT  = Im[(r1 + r2)^* r_gn]
//   d r_gn / dT = -i (Omega_St - Omega_gn) r_gn - i (r1 + r2) (r_n - 1/2)
// started from the ground state.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "scrap/model.hpp"
#include "scrap/time_grid.hpp"

namespace scrap {

/// Time-dependent reduced drive. `sample` must be smooth between the
/// listed breakpoints.
struct Drive {
  std::function<DriveSample(double)> sample;
  double static_detuning = 0.0;  // Omega_gn * tau_1
  std::vector<double> breakpoints;

  static Drive from_config(const DriveConfig& d);
};

struct SolverOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;  // 0: unlimited
  bool record_drive = true;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<TwoLevelState> states;
  // Sampled Omega_St(T) and |r1(T)|; empty when not recorded.
  std::vector<double> stark_shift;
  std::vector<double> r1_abs;

  const TwoLevelState& final_state() const { return states.back(); }
};

/// Integrates the reduced equations for a DriveConfig. `tol` is the
/// relative tolerance, in (0, 1e-3]; the absolute tolerance is tol / 100.
Trajectory evolve(const DriveConfig& d, const TimeGrid& grid, double tol = 1e-8);

/// General form used by propagation and the multilevel comparison.
Trajectory evolve(const Drive& drive, const TimeGrid& grid, const SolverOptions& opts);

/// Closed-form solution for constant real drive `rabi` and detuning
/// Omega = Omega_gn - Omega_St, starting from the ground state at t = 0.
/// With W = sqrt(R^2 + Omega^2): r_n = (R/W)^2 sin^2(W t / 2).
TwoLevelState analytic_rectangular(double rabi, double detuning, double t);

/// Instants t1 <= t2 where a Gaussian shift S exp(-(t - delay)^2 / width^2)
/// equals delta. Empty if delta == 0, if the signs differ, or |S| < |delta|.
std::optional<std::pair<double, double>> crossing_times(double S, double delta, double delay, double width);

/// Static detuning that puts the first resonance crossing at t = 0:
/// S exp(-delay^2 / width^2).
double pi_half_detuning(double S, double delay, double width);

struct Plateau {
  double t_begin = 0.0;
  double t_end = 0.0;
  double level = 0.0;
};

struct PlateauOptions {
  double band = 0.05;       // relative half-width around the window mean
  double min_length = 1.0;  // in units of tau_1
};

struct CoherenceStats {
  double max_coh = 0.0;
  double t_of_max = 0.0;
  double final_coh = 0.0;
  double final_rn = 0.0;
  std::optional<Plateau> plateau;
};

/// Peak, final and plateau statistics of |r_gn|. The plateau search starts
/// at the peak of |r1| (or the first sample when no drive was recorded).
CoherenceStats coherence_stats(const Trajectory& tr, const PlateauOptions& opts = {});

}  // namespace scrap
