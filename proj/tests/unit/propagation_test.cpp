#include <cmath>

#include "doctest.h"

#include <scrap/errors.hpp>
#include <scrap/propagation.hpp>
#include <scrap/scenarios.hpp>

using namespace scrap;

namespace {

PropagationSetup hg_setup(const std::string& name) { return propagation_setup_of(preset(name)); }

PropagationSetup unseeded(PropagationSetup s) {
  std::fill(s.entry.g2.begin(), s.entry.g2.end(), cplx{});
  std::fill(s.entry.gmix.begin(), s.entry.gmix.end(), cplx{});
  return s;
}

}  // namespace

TEST_CASE("slice sampling and validation") {
  const TimeGrid g{-6.0, 12.0, 512};
  const FieldSlice s = FieldSlice::from_pulses(g, PulseSpec::gaussian(2.0), PulseSpec::gaussian(0.1, 1.0, 5.0));
  REQUIRE(s.g1.size() == 512);
  CHECK(s.g2.size() == 512);
  CHECK(s.gmix.size() == 512);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(s.g1[i] == cplx{envelope(PulseSpec::gaussian(2.0), g.at(i)), 0.0});
    CHECK(s.gmix[i] == cplx{});
  }
  FieldSlice bad = s;
  bad.g2.pop_back();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = s;
  bad.g1[3] = cplx{INFINITY, 0.0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("zero depth is the identity") {
  const PropagationSetup s = hg_setup("fig17a");
  const PropagationRecord rec = propagate(s, 0.0);
  REQUIRE(rec.snapshots.size() == 1);
  const DepthSnapshot& out = rec.final_snapshot();
  CHECK(out.Z == 0.0);
  CHECK(out.fields.g1 == s.entry.g1);
  CHECK(out.fields.g2 == s.entry.g2);
  CHECK(out.fields.gmix == s.entry.gmix);
  REQUIRE(out.metrics);
  CHECK(out.metrics->eps_ph.pump == 0.0);
  CHECK(out.metrics->eps_ph.probe == 0.0);
  CHECK(out.metrics->eps_ph.generated == 0.0);
  CHECK(out.metrics->g1_energy_ratio == 1.0);
  REQUIRE(rec.xi_samples.size() == 1);
  CHECK(rec.xi_samples.front() == 0.0);
}

TEST_CASE("no generation without a seed") {
  const PropagationSetup s = unseeded(hg_setup("fig17a"));
  StepControl ctrl;
  ctrl.snapshots = {1e4};
  const PropagationRecord rec = propagate(s, 2e4, ctrl);
  REQUIRE(rec.snapshots.size() == 3);
  for (const auto& snap : rec.snapshots) {
    for (const cplx& z : snap.fields.g2) CHECK(z == cplx{});
    for (const cplx& z : snap.fields.gmix) CHECK(z == cplx{});
    CHECK_FALSE(snap.metrics);
  }
  CHECK(rec.final_snapshot().fields.g1 != s.entry.g1);
}

TEST_CASE("depth record bookkeeping") {
  StepControl ctrl;
  ctrl.snapshots = {3e3, 1e3, 1e3, 0.0};
  const PropagationRecord rec = propagate(hg_setup("fig17a"), 5e3, ctrl);
  REQUIRE(rec.snapshots.size() == 4);
  CHECK(rec.snapshots[0].Z == 0.0);
  CHECK(rec.snapshots[1].Z == 1e3);
  CHECK(rec.snapshots[2].Z == 3e3);
  CHECK(rec.snapshots[3].Z == 5e3);
  CHECK(rec.at(3e3).Z == 3e3);
  CHECK_THROWS_AS(rec.at(2e3), ConfigError);
  REQUIRE(rec.xi_samples.size() == rec.depth_metrics.size());
  CHECK(rec.xi_samples.front() == 0.0);
  for (std::size_t i = 1; i < rec.xi_samples.size(); ++i) CHECK(rec.xi_samples[i] > rec.xi_samples[i - 1]);
  CHECK(rec.xi_samples.back() == 5e3);
  for (const auto& snap : rec.snapshots) {
    CHECK(snap.rn.size() == 512);
    CHECK(snap.coh.size() == 512);
  }
}

TEST_CASE("source terms: ground-state atom disperses the pump linearly") {
  const MediumSpec m = hg_medium();
  const cplx g1{500.0, 120.0};
  const SourceTerms s = source_terms(g1, 0.0, 0.0, 0.0, TwoLevelState{}, m, 0.0);
  const cplx I{0.0, 1.0};
  CHECK(std::abs(s.pump - I * m.K1 * g1 / m.det_gm) < 1e-15 * std::abs(g1));
  // pure phase rotation: source is orthogonal to the field
  CHECK(std::abs(std::real(std::conj(g1) * s.pump)) < 1e-12);
  CHECK(s.probe == cplx{});
  CHECK(s.generated == cplx{});
}

TEST_CASE("source terms: no coherence gives only linear response of the generated wave") {
  const MediumSpec m = hg_medium();
  const cplx gmix{0.3, -0.1};
  const TwoLevelState st{0.2, 0.0};
  const SourceTerms s = source_terms(100.0, 2.0, gmix, 0.0, st, m, 0.0);
  const cplx I{0.0, 1.0};
  CHECK(std::abs(s.generated - (-I * m.Kminus * (-(1.0 - st.rn) * gmix / m.det_gl()))) < 1e-18);
}

TEST_CASE("source terms: maximum coherence generates from the probe seed") {
  const MediumSpec m = hg_medium();
  const cplx g2{2.0, 0.5};
  const TwoLevelState st{0.5, cplx{0.0, 0.5}};
  const SourceTerms s = source_terms(100.0, g2, 0.0, 0.0, st, m, 0.0);
  CHECK(std::abs(s.generated) == doctest::Approx(m.Kminus * std::abs(0.5 * g2 / m.det_gl())).epsilon(1e-12));
  CHECK(std::abs(s.generated) > 0.0);
}

TEST_CASE("atomic response at the entry matches the analytic drive") {
  const Preset p = preset("fig17a");
  const PropagationSetup s = propagation_setup_of(p);
  const Trajectory from_slice = atomic_response(s.entry, s.stark, s.medium, s.delta);
  const Trajectory analytic = evolve(drive_of(p), p.grid, 1e-8);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    worst = std::max(worst, std::abs(from_slice.states[i].rn - analytic.states[i].rn));
  // linear interpolation of 512 samples against exact envelopes
  CHECK(worst < 5e-3);
}

TEST_CASE("probe grows in difference mode and depletes in sum mode") {
  StepControl ctrl;
  const auto diff = propagate(hg_setup("fig17a"), 1e4, ctrl).final_snapshot().metrics;
  const auto sum = propagate(hg_setup("fig17b"), 1e4, ctrl).final_snapshot().metrics;
  REQUIRE(diff);
  REQUIRE(sum);
  CHECK(diff->eps_ph.probe > 0.0);
  CHECK(diff->eps_ph.generated > 0.0);
  CHECK(sum->eps_ph.probe < 0.0);
  CHECK(sum->eps_ph.generated > 0.0);
}

TEST_CASE("refining depth step and time grid changes the gains by less than 1%") {
  Preset coarse = preset("fig17a");
  Preset fine = coarse;
  fine.grid.n_samples = 2 * coarse.grid.n_samples;
  StepControl c1, c2;
  c2.target_rel_change = c1.target_rel_change / 2;
  c2.max_phase_per_step = c1.max_phase_per_step / 2;
  const auto a = *propagate(propagation_setup_of(coarse), 2e4, c1).final_snapshot().metrics;
  const auto b = *propagate(propagation_setup_of(fine), 2e4, c2).final_snapshot().metrics;
  CHECK(a.eps_ph.probe == doctest::Approx(b.eps_ph.probe).epsilon(0.01));
  CHECK(a.eps_ph.generated == doctest::Approx(b.eps_ph.generated).epsilon(0.01));
}

TEST_CASE("propagation input errors") {
  const PropagationSetup s = hg_setup("fig17a");
  CHECK_THROWS_AS(propagate(s, -1.0), ConfigError);
  CHECK_THROWS_AS(propagate(s, NAN), ConfigError);
  StepControl bad;
  bad.target_rel_change = 0.0;
  CHECK_THROWS_AS(propagate(s, 10.0, bad), ConfigError);
  PropagationSetup broken = s;
  broken.entry.g2[10] = cplx{NAN, 0.0};
  CHECK_THROWS_AS(propagate(broken, 10.0), ConfigError);
  broken = s;
  broken.medium.det_ln = 0.0;
  CHECK_THROWS_AS(propagate(broken, 10.0), ConfigError);
}

TEST_CASE("unresolvable depth step is a numerical failure") {
  PropagationSetup s = hg_setup("fig17a");
  s.medium.Kminus = 1e300;
  CHECK_THROWS_AS(propagate(s, 10.0), NumericalError);
}
