#pragma once

// Photon-number-weighted conversion observables.
//
// Photon weights. The energy and peak-power gains of field i carry the
// factor omega_2 |d_ln|^2 / (omega_i |d_i|^2) with |d_1| = |d_gm|,
// |d_gen| = |d_gl| and |d_2| = |d_ln|. The propagation constants are
// K_1 = k_1 |d_gm|^2 / (k_gen |d_gl|^2), K_2 = k_2 |d_ln|^2 / (k_gen |d_gl|^2)
// and K_gen = 1 by normalisation, with k proportional to omega. Eliminating
// the dipoles gives
//   w_2 = 1,   w_gen = K_2 / K_gen,   w_1 = K_2 / K_1.

#include <span>

#include "scrap/model.hpp"

namespace scrap {

struct FieldSlice;

/// One value per propagating field.
struct FieldValues {
  double pump = 0.0;
  double probe = 0.0;
  double generated = 0.0;
};

struct ConversionMetrics {
  FieldValues eps_ph;
  FieldValues w_ph_max;
  double g1_energy_ratio = 1.0;
};

/// Throws ConfigError if any K is not positive.
FieldValues photon_weights(const MediumSpec& m);

/// Trapezoidal integral of |g|^2 over a uniform grid of spacing dt.
double pulse_energy(std::span<const cplx> g, double dt);
double peak_power(std::span<const cplx> g);

/// Photon-weighted energy gain of every field relative to `entry`, scaled
/// to the probe's entry energy. Throws ConfigError if the grids differ or
/// the probe entry energy is zero.
FieldValues eps_ph(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m);

/// Same with peak powers max_T |g|^2 in place of energies.
FieldValues w_ph_max(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m);

ConversionMetrics conversion_metrics(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m);

/// L-infinity distance of two pulse profiles after each is normalised to
/// unit peak. Throws ConfigError on a zero-peak input or length mismatch.
double shape_distance(std::span<const double> a, std::span<const double> b);

}  // namespace scrap
