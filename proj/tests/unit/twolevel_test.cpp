#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "reference.hpp"

#include <scrap/errors.hpp>
#include <scrap/scenarios.hpp>
#include <scrap/twolevel.hpp>

using namespace scrap;
using std::numbers::pi;

namespace {

double max_purity_defect(const Trajectory& tr) {
  double worst = 0.0;
  for (const auto& s : tr.states) worst = std::max(worst, std::abs(s.purity_defect()));
  return worst;
}

DriveConfig rectangular(double R, double delta, double duration) {
  DriveConfig d;
  d.delta = delta;
  d.pump = PulseSpec::rectangular(R, duration, 0.5 * duration);
  return d;
}

DriveConfig gaussian_drive(double R, double delta, double S, double tau_st, double dtau, double beta) {
  DriveConfig d;
  d.delta = delta;
  d.pump = PulseSpec::gaussian(R, 1.0, 0.0);
  d.stark = PulseSpec::gaussian(S, tau_st, dtau);
  d.beta = beta;
  return d;
}

// Reference trajectory for the same drive from the fixed-step oracle.
std::vector<ref::State> reference_run(const DriveConfig& d, const TimeGrid& g, int substeps) {
  auto drive = [&](double t) {
    const double r1 = ref::gauss2(d.pump.amplitude, d.pump.width_ratio, d.pump.delay, t);
    return ref::Sample{r1, ref::gauss2(d.stark.amplitude, d.stark.width_ratio, d.stark.delay, t) + d.beta * r1};
  };
  return ref::rk4_reduced(drive, d.delta, g.t_start, g.t_end, static_cast<int>(g.n_samples - 1) * substeps,
                          substeps);
}

}  // namespace

TEST_CASE("analytic rectangular solution at resonance") {
  const double R = 2 * pi / 5;
  CHECK(analytic_rectangular(R, 0.0, pi / R).rn == doctest::Approx(1.0).epsilon(1e-14));
  const TwoLevelState half = analytic_rectangular(R, 0.0, pi / (2 * R));
  CHECK(half.rn == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(half.rgn) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(analytic_rectangular(R, 0.0, 2 * pi / R).rn == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("analytic rectangular solution with detuning 2R never exceeds 1/5") {
  const double R = 0.7;
  double peak = 0.0;
  for (double t = 0; t < 20; t += 1e-3) peak = std::max(peak, analytic_rectangular(R, 2 * R, t).rn);
  CHECK(peak <= 0.2 + 1e-14);
  CHECK(peak == doctest::Approx(0.2).epsilon(1e-5));

  const Trajectory tr = evolve(rectangular(R, 2 * R, 20.0), TimeGrid{0.0, 20.0, 20001}, 1e-10);
  double num_peak = 0.0;
  for (const auto& s : tr.states) num_peak = std::max(num_peak, s.rn);
  CHECK(num_peak == doctest::Approx(0.2).epsilon(1e-5));
}

TEST_CASE("analytic rectangular state is pure") {
  for (double Om : {0.0, 0.4, -1.1, 3.0})
    for (double t = 0; t < 10; t += 0.37) CHECK(std::abs(analytic_rectangular(1.2, Om, t).purity_defect()) < 1e-14);
}

TEST_CASE("evolve matches the analytic rectangular solution") {
  const double R = 2 * pi / 5;
  for (double delta : {0.0, 1.259, 2.5}) {
    const Trajectory tr = evolve(rectangular(R, delta, 4 * pi / R), TimeGrid{0.0, 4 * pi / R, 1001}, 1e-8);
    double worst = 0.0, worst_coh = 0.0;
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
      const TwoLevelState a = analytic_rectangular(R, delta, tr.grid.at(i));
      worst = std::max(worst, std::abs(tr.states[i].rn - a.rn));
      worst_coh = std::max(worst_coh, std::abs(tr.states[i].rgn - a.rgn));
    }
    CHECK(worst < 1e-6);
    CHECK(worst_coh < 1e-6);
  }
}

TEST_CASE("rectangular populations depend on the detuning only through its square") {
  const double R = 2 * pi / 5;
  const TimeGrid g{0.0, 10.0, 1001};
  for (double delta : {0.3, 1.259, 2.5}) {
    const Trajectory plus = evolve(rectangular(R, delta, 10.0), g, 1e-9);
    const Trajectory minus = evolve(rectangular(R, -delta, 10.0), g, 1e-9);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(plus.states[i].rn - minus.states[i].rn));
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("oscillations speed up and shrink as the detuning grows") {
  const double R = 2 * pi / 5;
  const TimeGrid g{0.0, 10.0, 10001};
  double prev_amp = 2.0, prev_t = 1e9;
  for (double delta : {0.0, 1.259, 2.5}) {
    const Trajectory tr = evolve(rectangular(R, delta, 10.0), g, 1e-9);
    // first maximum sits at half a period, pi / W
    std::size_t i = 1;
    while (i + 1 < g.size() && tr.states[i + 1].rn >= tr.states[i].rn) ++i;
    const double amp = tr.states[i].rn, t_half = g.at(i);
    const double W = std::sqrt(R * R + delta * delta);
    CHECK(amp == doctest::Approx(R * R / (W * W)).epsilon(1e-5));
    CHECK(t_half == doctest::Approx(pi / W).epsilon(2e-3));
    CHECK(amp < prev_amp);
    CHECK(t_half < prev_t);
    prev_amp = amp;
    prev_t = t_half;
  }
}

TEST_CASE("zero drive leaves the atom in the ground state") {
  const Trajectory tr = evolve(DriveConfig{}, TimeGrid{}, 1e-8);
  REQUIRE(tr.states.size() == 2001);
  for (const auto& s : tr.states) {
    CHECK(s.rn == 0.0);
    CHECK(s.rgn == cplx{});
  }
  const CoherenceStats st = coherence_stats(tr);
  CHECK(st.max_coh == 0.0);
  REQUIRE(st.plateau);
  CHECK(st.plateau->level == 0.0);
}

TEST_CASE("gaussian runs agree with an independent fixed-step integrator") {
  const TimeGrid g{-6.0, 12.0, 1801};
  const std::vector<DriveConfig> cases{
      gaussian_drive(0.886, 0.0, 0.0, 1.6, 0.0, 0.0),  gaussian_drive(3.18, 5.0, 7.4, 1.6, 1.8, 0.0),
      gaussian_drive(30.0, 24.0, 75.0, 1.6, 1.7, 0.0), gaussian_drive(0.886, -0.65, 0.0, 1.6, 0.0, -1.0),
      gaussian_drive(30.0, 13.65, 15.0, 1.6, 1.6, -0.5)};
  for (const auto& d : cases) {
    const Trajectory tr = evolve(d, g, 1e-10);
    const auto expect = reference_run(d, g, 40);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max({worst, std::abs(tr.states[i].rn - expect[i].rn), std::abs(tr.states[i].rgn - expect[i].rgn)});
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("pi/2 gaussian pulse creates maximum coherence") {
  const Trajectory tr = evolve(gaussian_drive(0.886, 0.0, 0.0, 1.6, 0.0, 0.0), TimeGrid{}, 1e-8);
  CHECK(tr.final_state().rn == doctest::Approx(0.5).epsilon(0.04));
  CHECK(std::abs(tr.final_state().rgn) == doctest::Approx(0.5).epsilon(0.02));
  const CoherenceStats st = coherence_stats(tr);
  CHECK(st.final_coh == doctest::Approx(0.5).epsilon(0.02));
  REQUIRE(st.plateau);
  CHECK(st.plateau->level == doctest::Approx(0.5).epsilon(0.02));
  CHECK(st.plateau->t_end - st.plateau->t_begin > 1.0);
}

TEST_CASE("Stark-chirped passage transfers the population") {
  const Trajectory tr = evolve(gaussian_drive(30.0, 24.0, 75.0, 1.6, 1.7, 0.0), TimeGrid{}, 1e-8);
  CHECK(tr.final_state().rn > 0.9);
  const CoherenceStats st = coherence_stats(tr);
  CHECK(st.max_coh == doctest::Approx(0.5).epsilon(0.01));
  CHECK(st.final_coh < 0.3);
}

TEST_CASE("self-shift compensation by static detuning") {
  const TimeGrid g{};
  const double ref_coh = std::abs(evolve(gaussian_drive(0.886, 0.0, 0.0, 1.6, 0.0, 0.0), g).final_state().rgn);
  const double comp = std::abs(evolve(gaussian_drive(0.886, -0.65, 0.0, 1.6, 0.0, -1.0), g).final_state().rgn);
  const double uncomp = std::abs(evolve(gaussian_drive(0.886, 0.0, 0.0, 1.6, 0.0, -1.0), g).final_state().rgn);
  CHECK(std::abs(comp - ref_coh) < 0.02);
  CHECK(comp > uncomp);
}

TEST_CASE("purity and bounds hold for random drives") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> R(0.0, 40.0), delta(-30.0, 30.0), S(0.0, 80.0), tau(0.5, 2.5),
      dtau(-4.0, 5.0), beta(-1.5, 1.5);
  const double tol = 1e-8;
  for (int i = 0; i < 25; ++i) {
    const Trajectory tr = evolve(gaussian_drive(R(rng), delta(rng), S(rng), tau(rng), dtau(rng), beta(rng)),
                                 TimeGrid{-6.0, 12.0, 401}, tol);
    CHECK(max_purity_defect(tr) < 100 * tol);
    for (const auto& s : tr.states) {
      CHECK(s.rn >= -1e-7);
      CHECK(s.rn <= 1 + 1e-7);
      CHECK(std::abs(s.rgn) <= 0.5 + 1e-7);
    }
  }
}

TEST_CASE("purity holds over every reduced preset") {
  for (const auto& name : preset_names()) {
    const Preset p = preset(name);
    if (p.kind != PresetKind::reduced && p.kind != PresetKind::rectangular) continue;
    CAPTURE(name);
    CHECK(max_purity_defect(evolve(drive_of(p), p.grid, 1e-8)) < 1e-6);
  }
}

TEST_CASE("tolerance outside (0, 1e-3] is rejected") {
  CHECK_THROWS_AS(evolve(DriveConfig{}, TimeGrid{}, 0.0), ConfigError);
  CHECK_THROWS_AS(evolve(DriveConfig{}, TimeGrid{}, 1e-2), ConfigError);
  CHECK_NOTHROW(evolve(DriveConfig{}, TimeGrid{}, 1e-3));
}

TEST_CASE("non-finite drive is a numerical failure with its time") {
  Drive d;
  d.sample = [](double t) {
    DriveSample s;
    s.r1 = t > 1.0 ? cplx{NAN, 0.0} : cplx{0.5, 0.0};
    return s;
  };
  try {
    evolve(d, TimeGrid{0.0, 3.0, 31}, SolverOptions{});
    FAIL("expected a numerical failure");
  } catch (const NumericalError& e) {
    CHECK(e.where() >= 1.0);
    CHECK(e.where() <= 3.0);
  }
}

TEST_CASE("crossing times agree with a bisection root finder") {
  const auto c = crossing_times(7.4, 5.0, 1.8, 1.6);
  REQUIRE(c);
  auto f = [](double t) { return ref::gauss2(7.4, 1.6, 1.8, t) - 5.0; };
  CHECK(c->first == doctest::Approx(ref::bisect(f, -5.0, 1.8)).epsilon(1e-10));
  CHECK(c->second == doctest::Approx(ref::bisect(f, 1.8, 8.0)).epsilon(1e-10));
  CHECK(c->first == doctest::Approx(0.798).epsilon(1e-3));
  CHECK(c->second == doctest::Approx(2.802).epsilon(1e-3));
}

TEST_CASE("crossing time edge cases") {
  const auto same = crossing_times(4.0, 4.0, 1.2, 1.6);
  REQUIRE(same);
  CHECK(same->first == 1.2);
  CHECK(same->second == 1.2);
  CHECK_FALSE(crossing_times(5.0, 7.4, 1.8, 1.6));
  CHECK_FALSE(crossing_times(5.0, 0.0, 1.8, 1.6));
  CHECK_FALSE(crossing_times(5.0, -3.0, 1.8, 1.6));
  const auto neg = crossing_times(-7.4, -5.0, 1.8, 1.6);
  REQUIRE(neg);
  CHECK(neg->first == doctest::Approx(0.798).epsilon(1e-3));
  CHECK_THROWS_AS(crossing_times(7.4, 5.0, 1.8, 0.0), ConfigError);
}

TEST_CASE("pi/2 detuning places the first crossing at zero") {
  CHECK(pi_half_detuning(7.4, 0.0, 1.6) == 7.4);
  CHECK(pi_half_detuning(0.0, 1.8, 1.6) == 0.0);
  const double d = pi_half_detuning(7.4, 1.8, 1.6);
  CHECK(d == doctest::Approx(7.4 * std::exp(-(1.8 * 1.8) / (1.6 * 1.6))).epsilon(1e-14));
  CHECK(d == doctest::Approx(2.09).epsilon(2e-3));
  const auto c = crossing_times(7.4, d, 1.8, 1.6);
  REQUIRE(c);
  CHECK(std::abs(c->first) < 1e-12);
}

TEST_CASE("coherence statistics rejects an empty trajectory") {
  CHECK_THROWS_AS(coherence_stats(Trajectory{}), ConfigError);
}
