#include "scrap/model.hpp"

#include <cmath>
#include <string>

#include "scrap/errors.hpp"
#include "scrap/time_grid.hpp"

namespace scrap {

std::string_view to_string(PulseShape shape) noexcept {
  return shape == PulseShape::gaussian ? "gaussian" : "rectangular";
}

std::string_view to_string(UnitConvention units) noexcept {
  return units == UnitConvention::angular ? "angular" : "cyclic";
}

std::string_view to_string(MixingMode mode) noexcept {
  return mode == MixingMode::difference ? "difference" : "sum";
}

double convert_units(double x, UnitConvention from, UnitConvention to) noexcept {
  if (from == to) return x;
  return from == UnitConvention::angular ? x / two_pi : x * two_pi;
}

void PulseSpec::validate() const {
  if (!std::isfinite(amplitude) || !std::isfinite(width_ratio) || !std::isfinite(delay))
    throw ConfigError("pulse parameters must be finite");
  if (width_ratio <= 0.0) throw ConfigError("pulse width_ratio must be > 0");
  if (amplitude < 0.0) throw ConfigError("pulse amplitude must be >= 0");
}

std::vector<double> PulseSpec::discontinuities() const {
  if (shape != PulseShape::rectangular || amplitude == 0.0) return {};
  return {delay - 0.5 * width_ratio, delay + 0.5 * width_ratio};
}

namespace {

bool inside_box(const PulseSpec& p, double t) noexcept {
  const double half = 0.5 * p.width_ratio;
  return t >= p.delay - half && t <= p.delay + half;
}

}  // namespace

double envelope(const PulseSpec& p, double t) noexcept {
  if (p.amplitude == 0.0) return 0.0;
  if (p.shape == PulseShape::rectangular) return inside_box(p, t) ? p.amplitude : 0.0;
  const double x = (t - p.delay) / p.width_ratio;
  return p.amplitude * std::exp(-0.5 * x * x);
}

double two_photon_envelope(const PulseSpec& p, double t) noexcept {
  if (p.amplitude == 0.0) return 0.0;
  if (p.shape == PulseShape::rectangular) return inside_box(p, t) ? p.amplitude : 0.0;
  const double x = (t - p.delay) / p.width_ratio;
  return p.amplitude * std::exp(-x * x);
}

void DriveConfig::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(beta)) throw ConfigError("drive delta/beta must be finite");
  pump.validate();
  stark.validate();
  if (probe_terms) {
    // Shift amplitudes carry the sign of their detuning, so only finiteness
    // and width are constrained.
    for (const auto* p : {&probe_terms->r2, &probe_terms->s2, &probe_terms->smix}) {
      if (!std::isfinite(p->amplitude) || !std::isfinite(p->delay) || !(p->width_ratio > 0.0))
        throw ConfigError("probe term pulses need finite parameters and width_ratio > 0");
    }
  }
}

DriveSample DriveConfig::sample(double t) const noexcept {
  DriveSample d;
  const double r1 = two_photon_envelope(pump, t);
  d.r1 = r1;
  d.shift = two_photon_envelope(stark, t) + beta * r1;
  if (probe_terms) {
    d.r2 = two_photon_envelope(probe_terms->r2, t);
    d.shift += two_photon_envelope(probe_terms->s2, t) + two_photon_envelope(probe_terms->smix, t);
  }
  return d;
}

std::vector<double> DriveConfig::discontinuities() const {
  std::vector<double> out = pump.discontinuities();
  for (double t : stark.discontinuities()) out.push_back(t);
  if (probe_terms) {
    for (const auto* p : {&probe_terms->r2, &probe_terms->s2, &probe_terms->smix})
      for (double t : p->discontinuities()) out.push_back(t);
  }
  return out;
}

void MediumSpec::validate() const {
  for (double v : {a, K1, K2, Kminus, det_gm, det_ln, det_nf})
    if (!std::isfinite(v)) throw ConfigError("medium constants must be finite");
  if (det_gm == 0.0) throw ConfigError("medium det_gm must be nonzero");
  if (det_ln == 0.0) throw ConfigError("medium det_ln must be nonzero");
  if (det_nf == 0.0) throw ConfigError("medium det_nf must be nonzero");
  if (K1 <= 0.0 || K2 <= 0.0 || Kminus <= 0.0) throw ConfigError("medium K1, K2, Kminus must be > 0");
}

MediumSpec set_mixing_mode(MediumSpec m, MixingMode mode) noexcept {
  m.mixing_mode = mode;
  return m;
}

TwoPhotonQuantities two_photon_quantities(cplx g1, cplx g2, cplx gmix, cplx gst, const MediumSpec& m) {
  if (m.det_gm == 0.0 || m.det_ln == 0.0 || m.det_nf == 0.0)
    throw ConfigError("two-photon quantities need nonzero detunings");

  const double gm = m.det_gm;
  const double mn = m.det_mn();
  const double gl = m.det_gl();
  const double ln = m.det_ln;

  TwoPhotonQuantities q;
  q.r1 = -2.0 * m.a * g1 * g1 / gm;
  q.s1 = (m.a * m.a / gm + 1.0 / mn) * std::norm(g1);
  q.r2 = m.mixing_mode == MixingMode::difference ? -2.0 * g2 * gmix / gl
                                                 : -2.0 * std::conj(g2) * gmix / gl;
  q.s2 = std::norm(g2) / gl;
  q.smix = std::norm(gmix) / ln;
  q.s = std::norm(gst) / m.det_nf;
  return q;
}

double self_shift_coefficient(const MediumSpec& m) {
  if (m.det_gm == 0.0 || m.a == 0.0) throw ConfigError("self-shift coefficient needs a != 0 and det_gm != 0");
  const double s1_per_g2 = m.a * m.a / m.det_gm + 1.0 / m.det_mn();
  const double r1_per_g2 = 2.0 * std::abs(m.a) / std::abs(m.det_gm);
  return s1_per_g2 / r1_per_g2;
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw ConfigError("time grid bounds must be finite");
  if (!(t_start < t_end)) throw ConfigError("time grid needs t_start < t_end");
  if (n_samples < 2) throw ConfigError("time grid needs at least 2 samples");
}

}  // namespace scrap
