#pragma once

// Retarded-frame propagation of the pump, probe and generated envelopes
// through the medium. Depth is Z = xi tau_1 / 2pi with xi the length in
// units of the absorption length of the generated transition; envelopes
// are angular (g tau_1), so
//   dg1/dZ = 2pi S1,  dg2/dZ = 2pi S2,  dgmix/dZ = 2pi Smix
// with the source terms below. The Stark field does not deplete.

#include <optional>
#include <vector>

#include "scrap/metrics.hpp"
#include "scrap/model.hpp"
#include "scrap/multilevel.hpp"
#include "scrap/time_grid.hpp"

namespace scrap {

struct FieldSlice {
  TimeGrid grid;
  std::vector<cplx> g1;
  std::vector<cplx> g2;
  std::vector<cplx> gmix;

  /// Samples real one-photon pulse envelopes onto the grid.
  static FieldSlice from_pulses(const TimeGrid& grid, const PulseSpec& pump, const PulseSpec& probe,
                                const PulseSpec& generated = {});

  /// Throws ConfigError on length mismatch or non-finite entries.
  void validate() const;
};

struct SourceTerms {
  cplx pump{};
  cplx probe{};
  cplx generated{};
};

/// Right-hand sides per unit xi:
///   S1 = -i K1 (r_gm + a r_mn),  S2 = -i K2 r_ln,  Smix = -i Kminus r_gl.
SourceTerms source_terms(cplx g1, cplx g2, cplx gmix, cplx gst, const TwoLevelState& atom, const MediumSpec& m,
                         double Omega_gn);

struct StepControl {
  /// Target relative change of field L2 norms per depth step. The pump is
  /// measured against itself; probe and generated waves in photon-weighted
  /// amplitude against their combined norm.
  double target_rel_change = 1e-3;
  /// Cap on the linear phase rotation of any field per step (radians).
  double max_phase_per_step = 0.1;
  double initial_step = 0.0;  // 0: start at the phase-limited maximum
  double min_step = 1e-9;
  /// Depths at which full slices and atomic traces are stored. Zero and
  /// the end depth are always included.
  std::vector<double> snapshots;
  double atomic_tol = 1e-8;
};

struct PropagationSetup {
  FieldSlice entry;
  PulseSpec stark;  // one-photon, angular
  MediumSpec medium;
  double delta = 0.0;  // Omega_gn tau_1
};

struct DepthSnapshot {
  double Z = 0.0;
  FieldSlice fields;
  std::vector<double> rn;
  std::vector<double> coh;
  std::optional<ConversionMetrics> metrics;
};

struct PropagationRecord {
  std::vector<double> xi_samples;  // every accepted depth, from 0
  std::vector<std::optional<ConversionMetrics>> depth_metrics;
  std::vector<DepthSnapshot> snapshots;  // at requested depths, increasing

  const DepthSnapshot& at(double Z) const;
  const DepthSnapshot& final_snapshot() const { return snapshots.back(); }
};

/// Reduced atomic response to a field slice: the two-level trajectory with
/// drive quantities computed pointwise from the (linearly interpolated)
/// envelopes.
Trajectory atomic_response(const FieldSlice& fields, const PulseSpec& stark, const MediumSpec& m, double delta,
                           double tol = 1e-8);

/// Marches the fields from Z = 0 to Z_end with classical RK4 in depth.
/// Conversion metrics are present only when the probe enters with nonzero
/// energy.
PropagationRecord propagate(const PropagationSetup& setup, double Z_end, const StepControl& ctrl = {});

}  // namespace scrap
