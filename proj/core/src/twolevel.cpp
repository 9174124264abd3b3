#include "scrap/twolevel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/integrator.hpp"
#include "scrap/errors.hpp"

namespace scrap {

Drive Drive::from_config(const DriveConfig& d) {
  Drive drive;
  drive.sample = [d](double t) { return d.sample(t); };
  drive.static_detuning = d.delta;
  drive.breakpoints = d.discontinuities();
  return drive;
}

Trajectory evolve(const DriveConfig& d, const TimeGrid& grid, double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw ConfigError("evolve tolerance must lie in (0, 1e-3]");
  d.validate();
  SolverOptions opts;
  opts.rel_tol = tol;
  opts.abs_tol = tol * 1e-2;
  return evolve(Drive::from_config(d), grid, opts);
}

Trajectory evolve(const Drive& drive, const TimeGrid& grid, const SolverOptions& opts) {
  grid.validate();
  if (!drive.sample) throw ConfigError("drive has no sampling function");

  using State = std::array<double, 3>;  // r_n, Re r_gn, Im r_gn
  const double omega_gn = drive.static_detuning;
  auto rhs = [&](const State& x, State& dxdt, double t) {
    const DriveSample s = drive.sample(t);
    const cplx r = s.rabi();
    const cplx rgn{x[1], x[2]};
    const double rn = x[0];
    dxdt[0] = std::imag(std::conj(r) * rgn);
    const cplx drgn = cplx{0.0, -(s.shift - omega_gn)} * rgn - cplx{0.0, 1.0} * r * (rn - 0.5);
    dxdt[1] = drgn.real();
    dxdt[2] = drgn.imag();
  };

  detail::StepOptions so;
  so.rel_tol = opts.rel_tol;
  so.abs_tol = opts.abs_tol;
  so.max_step = opts.max_step;
  so.initial_step = std::min(1e-2, grid.step());
  detail::SegmentIntegrator<3> integrator(so);

  std::vector<double> breaks = drive.breakpoints;
  std::sort(breaks.begin(), breaks.end());

  Trajectory tr;
  tr.grid = grid;
  tr.states.reserve(grid.size());
  if (opts.record_drive) {
    tr.stark_shift.reserve(grid.size());
    tr.r1_abs.reserve(grid.size());
  }

  State x{0.0, 0.0, 0.0};
  auto record = [&](double t) {
    tr.states.push_back({x[0], cplx{x[1], x[2]}});
    if (opts.record_drive) {
      const DriveSample s = drive.sample(t);
      tr.stark_shift.push_back(s.shift);
      tr.r1_abs.push_back(std::abs(s.r1));
    }
  };

  record(grid.at(0));
  auto next_break = std::upper_bound(breaks.begin(), breaks.end(), grid.at(0));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double t = grid.at(i - 1);
    const double t1 = grid.at(i);
    while (next_break != breaks.end() && *next_break < t1) {
      integrator.advance(rhs, x, t, *next_break);
      integrator.reset();
      t = *next_break;
      ++next_break;
    }
    integrator.advance(rhs, x, t, t1);
    if (next_break != breaks.end() && *next_break == t1) {
      integrator.reset();
      ++next_break;
    }
    record(t1);
  }
  return tr;
}

TwoLevelState analytic_rectangular(double rabi, double detuning, double t) {
  // Bloch vector (Re r_gn, Im r_gn, r_n - 1/2) precesses about (R, 0, Omega)
  // at rate W, starting from (0, 0, -1/2).
  const double w2 = rabi * rabi + detuning * detuning;
  if (w2 == 0.0) return {};
  const double w = std::sqrt(w2);
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  const double x = -rabi * detuning / (2.0 * w2) * (1.0 - c);
  const double y = rabi / (2.0 * w) * s;
  const double rn = rabi * rabi / w2 * 0.5 * (1.0 - c);
  return {rn, cplx{x, y}};
}

std::optional<std::pair<double, double>> crossing_times(double S, double delta, double delay, double width) {
  if (!(width > 0.0)) throw ConfigError("crossing_times needs width > 0");
  if (delta == 0.0) return std::nullopt;
  const double ratio = S / delta;
  if (ratio < 1.0) return std::nullopt;  // also covers opposite signs
  const double half = width * std::sqrt(std::log(ratio));
  return std::pair{delay - half, delay + half};
}

double pi_half_detuning(double S, double delay, double width) {
  if (!(width > 0.0)) throw ConfigError("pi_half_detuning needs width > 0");
  return S * std::exp(-(delay * delay) / (width * width));
}

namespace {

std::optional<Plateau> find_plateau(const Trajectory& tr, std::size_t first, const PlateauOptions& opts) {
  const std::size_t n = tr.states.size();
  std::vector<double> coh(n);
  for (std::size_t i = 0; i < n; ++i) coh[i] = std::abs(tr.states[i].rgn);

  std::size_t best_i = 0, best_j = 0;
  bool found = false;
  for (std::size_t i = first; i < n; ++i) {
    double lo = coh[i], hi = coh[i], sum = 0.0;
    for (std::size_t j = i; j < n; ++j) {
      lo = std::min(lo, coh[j]);
      hi = std::max(hi, coh[j]);
      sum += coh[j];
      const double mean = sum / static_cast<double>(j - i + 1);
      const double tol = opts.band * mean;
      if (hi - mean > tol || mean - lo > tol) {
        // Once the spread exceeds twice the band around any admissible mean
        // no longer window from i can qualify.
        if (hi - lo > 2.0 * opts.band * hi) break;
        continue;
      }
      if (!found || j - i > best_j - best_i) {
        best_i = i;
        best_j = j;
        found = true;
      }
    }
    if (found && best_j + 1 == n) break;
  }
  if (!found) return std::nullopt;
  const double t0 = tr.grid.at(best_i);
  const double t1 = tr.grid.at(best_j);
  if (t1 - t0 < opts.min_length) return std::nullopt;
  double sum = 0.0;
  for (std::size_t k = best_i; k <= best_j; ++k) sum += coh[k];
  return Plateau{t0, t1, sum / static_cast<double>(best_j - best_i + 1)};
}

}  // namespace

CoherenceStats coherence_stats(const Trajectory& tr, const PlateauOptions& opts) {
  if (tr.states.empty()) throw ConfigError("coherence_stats needs a nonempty trajectory");
  CoherenceStats st;
  st.max_coh = -1.0;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const double c = std::abs(tr.states[i].rgn);
    if (c > st.max_coh) {
      st.max_coh = c;
      st.t_of_max = tr.grid.at(i);
    }
  }
  st.final_coh = std::abs(tr.final_state().rgn);
  st.final_rn = tr.final_state().rn;

  std::size_t first = 0;
  if (!tr.r1_abs.empty()) {
    first = static_cast<std::size_t>(
        std::distance(tr.r1_abs.begin(), std::max_element(tr.r1_abs.begin(), tr.r1_abs.end())));
  }
  st.plateau = find_plateau(tr, first, opts);
  return st;
}

}  // namespace scrap
