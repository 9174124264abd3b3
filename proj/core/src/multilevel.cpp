#include "scrap/multilevel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "detail/integrator.hpp"
#include "scrap/errors.hpp"

namespace scrap {

DetuningSet DetuningSet::consistent(double Omega_gm, double Omega_ln, double Omega_nf, double Omega_gn) {
  DetuningSet d;
  d.Omega_gm = Omega_gm;
  d.Omega_mn = Omega_gn - Omega_gm;
  d.Omega_ln = Omega_ln;
  d.Omega_gl = Omega_gn - Omega_ln;
  d.Omega_nf = Omega_nf;
  d.Omega_gf = Omega_gn + Omega_nf;
  d.Omega_gn = Omega_gn;
  return d;
}

DetuningSet DetuningSet::from_medium(const MediumSpec& m, double Omega_gn) {
  return consistent(m.det_gm, m.det_ln, m.det_nf, Omega_gn);
}

void DetuningSet::validate() const {
  for (double v : {Omega_gm, Omega_mn, Omega_ln, Omega_gl, Omega_nf, Omega_gf}) {
    if (!std::isfinite(v) || v == 0.0) throw ConfigError("one-photon detunings must be finite and nonzero");
  }
  const double scale = std::max({std::abs(Omega_gm), std::abs(Omega_ln), std::abs(Omega_nf), 1.0});
  const double eps = 1e-9 * scale;
  if (std::abs(Omega_gm + Omega_mn - Omega_gn) > eps) throw ConfigError("Omega_gm + Omega_mn != Omega_gn");
  if (std::abs(Omega_gl + Omega_ln - Omega_gn) > eps) throw ConfigError("Omega_gl + Omega_ln != Omega_gn");
  if (std::abs(Omega_gn + Omega_nf - Omega_gf) > eps) throw ConfigError("Omega_gn + Omega_nf != Omega_gf");
}

namespace {

using State = std::array<double, 15>;

// Layout: rho_n, then (re, im) of mn, ln, gl, gm, gn, nf, gf.
enum Slot : std::size_t { kMn = 1, kLn = 3, kGl = 5, kGm = 7, kGn = 9, kNf = 11, kGf = 13 };

cplx get(const State& x, Slot s) { return {x[s], x[s + 1]}; }
void put(State& x, Slot s, cplx v) {
  x[s] = v.real();
  x[s + 1] = v.imag();
}

FiveLevelState unpack(const State& x) {
  FiveLevelState st;
  st.rho_n = x[0];
  st.rho_mn = get(x, kMn);
  st.rho_ln = get(x, kLn);
  st.rho_gl = get(x, kGl);
  st.rho_gm = get(x, kGm);
  st.rho_gn = get(x, kGn);
  st.rho_nf = get(x, kNf);
  st.rho_gf = get(x, kGf);
  return st;
}

cplx phasor(double omega, double t) { return std::polar(1.0, -omega * t); }

struct Couplings {
  cplx gm, mn, gl, ln, nf;  // G_ij(t) = g_k(t) exp(-i Omega_ij t); G_ji = conj(G_ij)
};

Couplings couplings(const FieldSet& f, const DetuningSet& d, double a, double t) {
  const double g1 = envelope(f.pump, t);
  return {g1 * phasor(d.Omega_gm, t), a * g1 * phasor(d.Omega_mn, t),
          envelope(f.generated, t) * phasor(d.Omega_gl, t), envelope(f.probe, t) * phasor(d.Omega_ln, t),
          envelope(f.stark, t) * phasor(d.Omega_nf, t)};
}

double rate_n(const FiveLevelState& s, const Couplings& G) {
  return 2.0 * std::imag(std::conj(G.mn) * s.rho_mn + std::conj(G.ln) * s.rho_ln + G.nf * std::conj(s.rho_nf));
}

std::vector<double> field_breakpoints(const FieldSet& f) {
  std::vector<double> out;
  for (const PulseSpec* p : {&f.pump, &f.probe, &f.generated, &f.stark})
    for (double t : p->discontinuities()) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double population_rate(const FiveLevelState& st, const FieldSet& fields, const DetuningSet& det, double a,
                       double t) {
  return rate_n(st, couplings(fields, det, a, t));
}

FullTrajectory evolve_full(const FieldSet& fields, const DetuningSet& det, double a, const TimeGrid& grid,
                           double tol) {
  grid.validate();
  det.validate();
  for (const PulseSpec* p : {&fields.pump, &fields.probe, &fields.generated, &fields.stark}) p->validate();
  if (!(tol > 0.0 && tol <= 1e-3)) throw ConfigError("evolve_full tolerance must lie in (0, 1e-3]");

  const cplx I{0.0, 1.0};
  auto rhs = [&](const State& x, State& dxdt, double t) {
    const Couplings G = couplings(fields, det, a, t);
    const FiveLevelState s = unpack(x);
    const double rho_g = 1.0 - s.rho_n;

    dxdt[0] = rate_n(s, G);
    put(dxdt, kMn, -I * (G.mn * s.rho_n + std::conj(G.gm) * s.rho_gn));
    put(dxdt, kLn, -I * (G.ln * s.rho_n + std::conj(G.gl) * s.rho_gn));
    put(dxdt, kGl, I * (s.rho_gn * std::conj(G.ln) + rho_g * G.gl));
    put(dxdt, kGm, I * (s.rho_gn * std::conj(G.mn) + G.gm * rho_g));
    put(dxdt, kGn, -I * (G.gm * s.rho_mn - G.mn * s.rho_gm + G.gl * s.rho_ln - G.ln * s.rho_gl -
                         std::conj(G.nf) * s.rho_gf));
    put(dxdt, kNf, I * G.nf * s.rho_n);
    put(dxdt, kGf, I * s.rho_gn * G.nf);
  };

  const double omega_max = std::max({std::abs(det.Omega_gm), std::abs(det.Omega_mn), std::abs(det.Omega_ln),
                                     std::abs(det.Omega_gl), std::abs(det.Omega_nf), std::abs(det.Omega_gf)});
  detail::StepOptions so;
  so.rel_tol = tol;
  so.abs_tol = tol * 1e-2;
  so.max_step = 0.02 / omega_max;
  so.initial_step = so.max_step;
  detail::SegmentIntegrator<15> integrator(so);

  // Runaway step counts mean the detunings are too large for the window.
  const double span = grid.t_end - grid.t_start;
  if (span / so.max_step > 5e8) {
    throw NumericalError("detuning |Omega| = " + std::to_string(omega_max) +
                             " needs more than 5e8 steps over the grid; reduce the detunings",
                         grid.t_start);
  }

  const std::vector<double> breaks = field_breakpoints(fields);
  auto next_break = std::upper_bound(breaks.begin(), breaks.end(), grid.at(0));

  FullTrajectory out;
  out.grid = grid;
  out.states.reserve(grid.size());
  State x{};
  out.states.push_back(unpack(x));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double t = grid.at(i - 1);
    const double t1 = grid.at(i);
    while (next_break != breaks.end() && *next_break < t1) {
      integrator.advance(rhs, x, t, *next_break);
      integrator.reset();
      t = *next_break++;
    }
    integrator.advance(rhs, x, t, t1);
    out.states.push_back(unpack(x));
  }
  return out;
}

AlgebraicCoherences algebraic_coherences(const TwoLevelState& st, cplx g1, cplx g2, cplx gmix, cplx gst,
                                         const DetuningSet& det, double a, MixingMode mode) {
  for (double v : {det.Omega_mn, det.Omega_ln, det.Omega_gl, det.Omega_gm, det.Omega_nf, det.Omega_gf}) {
    if (v == 0.0) throw ConfigError("algebraic coherences need nonzero detunings");
  }
  const double rn = st.rn;
  const double rg = 1.0 - rn;
  const cplx rgn = st.rgn;

  AlgebraicCoherences c;
  c.r_mn = (a * g1 * rn + std::conj(g1) * rgn) / det.Omega_mn;
  c.r_gm = -(a * std::conj(g1) * rgn + g1 * rg) / det.Omega_gm;
  if (mode == MixingMode::difference) {
    c.r_ln = (g2 * rn + std::conj(gmix) * rgn) / det.Omega_ln;
    c.r_gl = -(rgn * std::conj(g2) + rg * gmix) / det.Omega_gl;
  } else {
    c.r_ln = (g2 * rn + gmix * std::conj(rgn)) / det.Omega_ln;
    c.r_gl = -(rgn * g2 + rg * gmix) / det.Omega_gl;
  }
  c.r_nf = -gst * rn / det.Omega_nf;
  c.r_gf = -rgn * gst / det.Omega_gf;
  return c;
}

std::string_view to_string(AdiabaticStatus s) noexcept {
  switch (s) {
    case AdiabaticStatus::ok: return "ok";
    case AdiabaticStatus::warning: return "warning";
    case AdiabaticStatus::violated: return "violated";
  }
  return "unknown";
}

AdiabaticReport validate_adiabatic(const FieldSet& fields, const DetuningSet& det, double a,
                                   const AdiabaticMargins& margins) {
  struct Pair {
    const char* name;
    const PulseSpec* pulse;
    double coupling_scale;
    double detuning;
  };
  const std::array<Pair, 5> pairs{{{"gm", &fields.pump, 1.0, det.Omega_gm},
                                   {"mn", &fields.pump, std::abs(a), det.Omega_mn},
                                   {"gl", &fields.generated, 1.0, det.Omega_gl},
                                   {"ln", &fields.probe, 1.0, det.Omega_ln},
                                   {"nf", &fields.stark, 1.0, det.Omega_nf}}};

  auto grade = [&](double ratio) {
    if (ratio >= margins.ok_ratio) return AdiabaticStatus::ok;
    if (ratio < margins.violated_ratio) return AdiabaticStatus::violated;
    return AdiabaticStatus::warning;
  };

  AdiabaticReport report;
  for (const Pair& p : pairs) {
    AdiabaticCheck c;
    c.transition = p.name;
    c.detuning = p.detuning;
    c.rabi_peak = p.coupling_scale * p.pulse->amplitude;
    c.width = p.pulse->width_ratio;
    c.upper_ratio = c.rabi_peak > 0.0 ? std::abs(p.detuning) / c.rabi_peak
                                      : std::numeric_limits<double>::infinity();
    c.lower_ratio = c.rabi_peak * c.width;
    c.upper = grade(c.upper_ratio);
    c.lower = grade(c.lower_ratio) == AdiabaticStatus::ok ? AdiabaticStatus::ok : AdiabaticStatus::warning;
    if (c.lower != AdiabaticStatus::ok) c.note = "perturbative field";
    if (c.upper == AdiabaticStatus::violated) c.note = "detuning not large compared to Rabi frequency";
    report.checks.push_back(c);
    report.overall = std::max({report.overall, c.upper, c.lower});
  }
  return report;
}

OracleConfig pi_half_oracle(double detuning_scale) {
  if (!(detuning_scale > 0.0)) throw ConfigError("pi_half_oracle needs a positive detuning scale");
  OracleConfig cfg;
  cfg.a = 1.0;
  cfg.det = DetuningSet::consistent(-detuning_scale, -detuning_scale, detuning_scale, 0.0);
  // r1 = 2 a g1^2 / |Omega_gm| with Gaussian area r1 * sqrt(pi) = pi / 2.
  const double rabi = std::sqrt(std::numbers::pi) / 2.0;
  cfg.fields.pump = PulseSpec::gaussian(std::sqrt(rabi * detuning_scale / (2.0 * cfg.a)), 1.0, 0.0);
  cfg.grid = TimeGrid{-6.0, 6.0, 1201};
  return cfg;
}

ComparisonReport compare_reduced_vs_full(const OracleConfig& cfg) {
  const FullTrajectory full = evolve_full(cfg.fields, cfg.det, cfg.a, cfg.grid, cfg.tol);

  MediumSpec medium;
  medium.a = cfg.a;
  medium.det_gm = cfg.det.Omega_gm;
  medium.det_ln = cfg.det.Omega_ln;
  medium.det_nf = cfg.det.Omega_nf;

  Drive drive;
  drive.static_detuning = cfg.det.Omega_gn;
  drive.breakpoints = field_breakpoints(cfg.fields);
  drive.sample = [&cfg, medium](double t) {
    const TwoPhotonQuantities q =
        two_photon_quantities(envelope(cfg.fields.pump, t), envelope(cfg.fields.probe, t),
                              envelope(cfg.fields.generated, t), envelope(cfg.fields.stark, t), medium);
    return DriveSample{q.r1, q.r2, q.total_shift()};
  };
  SolverOptions so;
  so.rel_tol = cfg.tol;
  so.abs_tol = cfg.tol * 1e-2;
  so.record_drive = false;
  const Trajectory reduced = evolve(drive, cfg.grid, so);

  ComparisonReport rep;
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    const double t = cfg.grid.at(i);
    const FiveLevelState& f = full.states[i];
    const TwoLevelState& r = reduced.states[i];
    rep.max_pop_err = std::max(rep.max_pop_err, std::abs(f.rho_n - r.rn));
    const cplx aligned = f.rho_gn * std::polar(1.0, cfg.det.Omega_gn * t);
    rep.max_coh_err = std::max(rep.max_coh_err, std::abs(aligned - r.rgn));
  }
  rep.adiabatic = validate_adiabatic(cfg.fields, cfg.det, cfg.a);
  return rep;
}

}  // namespace scrap
