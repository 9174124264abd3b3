#include "scrap/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scrap/errors.hpp"

namespace scrap {

FieldSlice FieldSlice::from_pulses(const TimeGrid& grid, const PulseSpec& pump, const PulseSpec& probe,
                                   const PulseSpec& generated) {
  grid.validate();
  FieldSlice s;
  s.grid = grid;
  s.g1.resize(grid.size());
  s.g2.resize(grid.size());
  s.gmix.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    s.g1[i] = envelope(pump, t);
    s.g2[i] = envelope(probe, t);
    s.gmix[i] = envelope(generated, t);
  }
  return s;
}

void FieldSlice::validate() const {
  grid.validate();
  const std::size_t n = grid.size();
  if (g1.size() != n || g2.size() != n || gmix.size() != n)
    throw ConfigError("field slice arrays must match the time grid length");
  for (const auto* v : {&g1, &g2, &gmix})
    for (const cplx& z : *v)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ConfigError("field slice contains non-finite entries");
}

SourceTerms source_terms(cplx g1, cplx g2, cplx gmix, cplx gst, const TwoLevelState& atom, const MediumSpec& m,
                         double Omega_gn) {
  const DetuningSet det = DetuningSet::from_medium(m, Omega_gn);
  const AlgebraicCoherences c = algebraic_coherences(atom, g1, g2, gmix, gst, det, m.a, m.mixing_mode);
  const cplx minus_i{0.0, -1.0};
  return {minus_i * m.K1 * (c.r_gm + m.a * c.r_mn), minus_i * m.K2 * c.r_ln, minus_i * m.Kminus * c.r_gl};
}

const DepthSnapshot& PropagationRecord::at(double Z) const {
  for (const auto& s : snapshots)
    if (std::abs(s.Z - Z) <= 1e-9 * std::max(1.0, std::abs(Z))) return s;
  throw ConfigError("no snapshot stored at Z = " + std::to_string(Z));
}

namespace {

cplx lerp(const std::vector<cplx>& v, std::size_t i, double frac) {
  return frac == 0.0 ? v[i] : v[i] + frac * (v[i + 1] - v[i]);
}

// Linear phase-rotation rate bound of the fastest field per unit Z.
double max_linear_rate(const MediumSpec& m) {
  const double a = std::abs(m.a);
  const double pump = m.K1 * (std::max(1.0, a * a) + a) / std::abs(m.det_gm);
  const double probe = 2.0 * m.K2 / std::abs(m.det_ln);
  const double gen = 2.0 * m.Kminus / std::abs(m.det_gl());
  return two_pi * std::max({pump, probe, gen});
}

double l2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

struct Stage {
  FieldSlice derivative;
  Trajectory atom;
};

class Marcher {
public:
  Marcher(const PropagationSetup& setup, const StepControl& ctrl)
      : setup_(setup), ctrl_(ctrl) {
    const TimeGrid& g = setup.entry.grid;
    gst_.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gst_[i] = envelope(setup.stark, g.at(i));
  }

  Stage derivative(const FieldSlice& f) const {
    Stage st{f, atomic_response(f, setup_.stark, setup_.medium, setup_.delta, ctrl_.atomic_tol)};
    const MediumSpec& m = setup_.medium;
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
      const SourceTerms s = source_terms(f.g1[i], f.g2[i], f.gmix[i], gst_[i], st.atom.states[i], m, setup_.delta);
      st.derivative.g1[i] = two_pi * s.pump;
      st.derivative.g2[i] = two_pi * s.probe;
      st.derivative.gmix[i] = two_pi * s.generated;
    }
    return st;
  }

private:
  const PropagationSetup& setup_;
  const StepControl& ctrl_;
  std::vector<cplx> gst_;
};

FieldSlice axpy(const FieldSlice& base, double h, const FieldSlice& d) {
  FieldSlice out = base;
  for (std::size_t i = 0; i < base.g1.size(); ++i) {
    out.g1[i] += h * d.g1[i];
    out.g2[i] += h * d.g2[i];
    out.gmix[i] += h * d.gmix[i];
  }
  return out;
}

double relative_norm_change(const FieldSlice& before, const FieldSlice& after, const FieldValues& w) {
  double change = 0.0;
  const double p0 = l2(before.g1);
  if (p0 > 0.0) change = std::abs(l2(after.g1) - p0) / p0;
  // Probe and generated waves exchange photons, so both are measured in
  // photon-weighted amplitude against their common total.
  const double a2 = std::sqrt(w.probe), am = std::sqrt(w.generated);
  const double w0 = std::hypot(a2 * l2(before.g2), am * l2(before.gmix));
  if (w0 > 0.0) {
    change = std::max(change, a2 * std::abs(l2(after.g2) - l2(before.g2)) / w0);
    change = std::max(change, am * std::abs(l2(after.gmix) - l2(before.gmix)) / w0);
  }
  return change;
}

void check_finite(const FieldSlice& f, double Z) {
  const auto* names = "g1\0g2\0gmix";
  const std::vector<cplx>* arrays[] = {&f.g1, &f.g2, &f.gmix};
  for (int k = 0; k < 3; ++k) {
    const auto& v = *arrays[k];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
        const char* name = names;
        for (int j = 0; j < k; ++j) name += std::char_traits<char>::length(name) + 1;
        throw NumericalError("non-finite " + std::string(name) + " at Z = " + std::to_string(Z) +
                                 ", time index " + std::to_string(i),
                             Z);
      }
    }
  }
}

}  // namespace

Trajectory atomic_response(const FieldSlice& fields, const PulseSpec& stark, const MediumSpec& m, double delta,
                           double tol) {
  const TimeGrid& g = fields.grid;
  const double t0 = g.t_start;
  const double dt = g.step();
  const std::size_t last = g.size() - 2;

  Drive drive;
  drive.static_detuning = delta;
  drive.sample = [&fields, &stark, &m, t0, dt, last](double t) {
    const double u = std::max(0.0, (t - t0) / dt);
    std::size_t i = std::min(static_cast<std::size_t>(u), last);
    const double frac = std::min(1.0, u - static_cast<double>(i));
    const TwoPhotonQuantities q = two_photon_quantities(lerp(fields.g1, i, frac), lerp(fields.g2, i, frac),
                                                        lerp(fields.gmix, i, frac), envelope(stark, t), m);
    return DriveSample{q.r1, q.r2, q.total_shift()};
  };
  SolverOptions so;
  so.rel_tol = tol;
  so.abs_tol = tol * 1e-2;
  return evolve(drive, g, so);
}

PropagationRecord propagate(const PropagationSetup& setup, double Z_end, const StepControl& ctrl) {
  setup.entry.validate();
  setup.stark.validate();
  setup.medium.validate();
  if (!std::isfinite(Z_end) || Z_end < 0.0) throw ConfigError("Z_end must be finite and >= 0");
  if (!(ctrl.target_rel_change > 0.0) || !(ctrl.max_phase_per_step > 0.0))
    throw ConfigError("step control targets must be positive");

  std::vector<double> marks;
  for (double z : ctrl.snapshots)
    if (z > 0.0 && z < Z_end) marks.push_back(z);
  marks.push_back(Z_end);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const FieldSlice& entry = setup.entry;
  const bool have_metrics = pulse_energy(entry.g2, entry.grid.step()) > 0.0;
  auto metrics_of = [&](const FieldSlice& f) -> std::optional<ConversionMetrics> {
    if (!have_metrics) return std::nullopt;
    return conversion_metrics(f, entry, setup.medium);
  };

  const FieldValues weights = photon_weights(setup.medium);
  Marcher marcher(setup, ctrl);
  PropagationRecord rec;
  auto snapshot = [&](double Z, const FieldSlice& f, const Trajectory& atom) {
    DepthSnapshot s;
    s.Z = Z;
    s.fields = f;
    s.rn.reserve(atom.states.size());
    s.coh.reserve(atom.states.size());
    for (const auto& st : atom.states) {
      s.rn.push_back(st.rn);
      s.coh.push_back(std::abs(st.rgn));
    }
    s.metrics = metrics_of(f);
    rec.snapshots.push_back(std::move(s));
  };

  FieldSlice F = entry;
  double Z = 0.0;
  std::optional<Stage> k1 = marcher.derivative(F);
  rec.xi_samples.push_back(0.0);
  rec.depth_metrics.push_back(metrics_of(F));
  snapshot(0.0, F, k1->atom);
  if (Z_end == 0.0) return rec;

  const double h_max = ctrl.max_phase_per_step / max_linear_rate(setup.medium);
  if (!(h_max >= ctrl.min_step))
    throw NumericalError("depth step underflow: phase limit needs steps below " + std::to_string(ctrl.min_step), 0.0);
  double h = ctrl.initial_step > 0.0 ? std::min(ctrl.initial_step, h_max) : h_max;
  std::size_t mark = 0;
  while (mark < marks.size()) {
    const double to_mark = marks[mark] - Z;
    const bool lands = h >= to_mark;
    const double step = lands ? to_mark : h;

    if (!k1) k1 = marcher.derivative(F);
    const Stage k2 = marcher.derivative(axpy(F, 0.5 * step, k1->derivative));
    const Stage k3 = marcher.derivative(axpy(F, 0.5 * step, k2.derivative));
    const Stage k4 = marcher.derivative(axpy(F, step, k3.derivative));
    FieldSlice next = F;
    for (std::size_t i = 0; i < F.g1.size(); ++i) {
      auto combine = [&](const std::vector<cplx> FieldSlice::*member) {
        return step / 6.0 *
               ((k1->derivative.*member)[i] + 2.0 * (k2.derivative.*member)[i] +
                2.0 * (k3.derivative.*member)[i] + (k4.derivative.*member)[i]);
      };
      next.g1[i] += combine(&FieldSlice::g1);
      next.g2[i] += combine(&FieldSlice::g2);
      next.gmix[i] += combine(&FieldSlice::gmix);
    }
    check_finite(next, Z + step);

    const double change = relative_norm_change(F, next, weights);
    if (change > 2.0 * ctrl.target_rel_change && step > ctrl.min_step) {
      h = std::max(ctrl.min_step, step * std::max(0.2, 0.9 * ctrl.target_rel_change / change));
      continue;  // k1 is still valid for F
    }
    if (change > 2.0 * ctrl.target_rel_change)
      throw NumericalError("depth step underflow at Z = " + std::to_string(Z), Z);

    Z = lands ? marks[mark] : Z + step;
    F = std::move(next);
    k1.reset();
    rec.xi_samples.push_back(Z);
    rec.depth_metrics.push_back(metrics_of(F));
    if (lands) {
      k1 = marcher.derivative(F);
      snapshot(Z, F, k1->atom);
      ++mark;
    }
    const double grow = change > 0.0 ? std::clamp(0.9 * ctrl.target_rel_change / change, 0.2, 2.0) : 2.0;
    if (!lands || grow < 1.0) h = std::min(h_max, step * grow);
  }
  return rec;
}

}  // namespace scrap
