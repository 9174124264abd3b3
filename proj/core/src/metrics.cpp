#include "scrap/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "scrap/errors.hpp"
#include "scrap/propagation.hpp"

namespace scrap {

FieldValues photon_weights(const MediumSpec& m) {
  if (!(m.K1 > 0.0) || !(m.K2 > 0.0) || !(m.Kminus > 0.0))
    throw ConfigError("propagation constants K1, K2, Kminus must be positive");
  return {m.K2 / m.K1, 1.0, m.K2 / m.Kminus};
}

double pulse_energy(std::span<const cplx> g, double dt) {
  if (g.size() < 2) return 0.0;
  double s = 0.5 * (std::norm(g.front()) + std::norm(g.back()));
  for (std::size_t i = 1; i + 1 < g.size(); ++i) s += std::norm(g[i]);
  return s * dt;
}

double peak_power(std::span<const cplx> g) {
  double p = 0.0;
  for (const cplx& z : g) p = std::max(p, std::norm(z));
  return p;
}

namespace {

void check_grids(const FieldSlice& a, const FieldSlice& b) {
  if (a.grid.size() != b.grid.size() || a.grid.t_start != b.grid.t_start || a.grid.t_end != b.grid.t_end ||
      a.g1.size() != b.g1.size() || a.g2.size() != b.g2.size() || a.gmix.size() != b.gmix.size())
    throw ConfigError("slice and entry must share the same time grid");
}

template <class Measure>
FieldValues weighted_gain(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m, Measure measure) {
  check_grids(slice, entry);
  const FieldValues w = photon_weights(m);
  const double ref = measure(entry.g2);
  if (!(ref > 0.0)) throw ConfigError("probe entry is zero; photon-weighted gains are undefined");
  return {w.pump * (measure(slice.g1) - measure(entry.g1)) / ref,
          w.probe * (measure(slice.g2) - measure(entry.g2)) / ref,
          w.generated * (measure(slice.gmix) - measure(entry.gmix)) / ref};
}

}  // namespace

FieldValues eps_ph(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m) {
  const double dt = entry.grid.step();
  return weighted_gain(slice, entry, m, [dt](const std::vector<cplx>& g) { return pulse_energy(g, dt); });
}

FieldValues w_ph_max(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m) {
  return weighted_gain(slice, entry, m, [](const std::vector<cplx>& g) { return peak_power(g); });
}

ConversionMetrics conversion_metrics(const FieldSlice& slice, const FieldSlice& entry, const MediumSpec& m) {
  ConversionMetrics c;
  c.eps_ph = eps_ph(slice, entry, m);
  c.w_ph_max = w_ph_max(slice, entry, m);
  const double dt = entry.grid.step();
  const double e0 = pulse_energy(entry.g1, dt);
  c.g1_energy_ratio = e0 > 0.0 ? pulse_energy(slice.g1, dt) / e0 : 1.0;
  return c;
}

double shape_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("shape_distance: length mismatch");
  auto peak = [](std::span<const double> v) {
    double p = 0.0;
    for (double x : v) p = std::max(p, std::abs(x));
    return p;
  };
  const double pa = peak(a), pb = peak(b);
  if (!(pa > 0.0) || !(pb > 0.0)) throw ConfigError("shape_distance: zero-peak input");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] / pa - b[i] / pb));
  return d;
}

}  // namespace scrap
