#include <algorithm>
#include <set>

#include "doctest.h"

#include <scrap/errors.hpp>
#include <scrap/scenarios.hpp>

using namespace scrap;

TEST_CASE("fig4_solid parameters") {
  const Preset p = preset("fig4_solid");
  CHECK(p.kind == PresetKind::reduced);
  CHECK(p.units == UnitConvention::angular);
  CHECK(p.param("delta") == 0.0);
  CHECK(p.param("S") == 0.0);
  CHECK(p.param("R") == 0.886);
  CHECK(p.param("beta") == 0.0);
  CHECK_FALSE(p.note.empty());
}

TEST_CASE("fig6_a_solid parameters") {
  const Preset p = preset("fig6_a_solid");
  CHECK(p.param("delta") == 24.0);
  CHECK(p.param("S") == 75.0);
  CHECK(p.param("R") == 30.0);
  CHECK(p.param("dtau") == 1.7);
  CHECK(p.param("tau_st") == 1.6);
  CHECK(p.param("beta") == 0.0);
}

TEST_CASE("fig9_solid parameters") {
  const Preset p = preset("fig9_solid");
  CHECK(p.param("beta") == -0.5);
  CHECK(p.param("S") == 15.0);
  CHECK(p.param("delta") == 13.65);
  CHECK(p.param("dtau") == 1.6);
  CHECK(p.param("R") == 30.0);
}

TEST_CASE("fig11_solid parameters and medium") {
  const Preset p = preset("fig11_solid");
  CHECK(p.kind == PresetKind::hg_entry);
  CHECK(p.units == UnitConvention::cyclic);
  CHECK(p.param("G01") == 910.0);
  CHECK(p.param("G0st") == 325.0);
  CHECK(p.param("delta") == 0.5);
  CHECK(p.param("dtau_st") == -3.0);
  const auto m = medium_of(p);
  REQUIRE(m);
  CHECK(m->a == 0.345);
  CHECK(m->K1 == 0.67);
  CHECK(m->K2 == 0.04);
  CHECK(m->Kminus == 1.0);
  CHECK(m->det_gm == -2.4e5);
  CHECK(m->det_ln == -2.2e4);
  CHECK(m->det_nf == 8.9e3);
  CHECK_FALSE(medium_of(preset("fig4_solid")));
}

TEST_CASE("mercury drive is built from the cyclic amplitudes") {
  const DriveConfig d = drive_of(preset("fig11_solid"));
  CHECK(d.pump.amplitude / two_pi == doctest::Approx(14.96).epsilon(1e-3));
  CHECK(d.stark.amplitude / two_pi == doctest::Approx(74.6).epsilon(1e-3));
  CHECK(d.delta == doctest::Approx(0.5 * two_pi));
  CHECK(d.beta == doctest::Approx(self_shift_coefficient(hg_medium())));
}

TEST_CASE("propagation presets") {
  const Preset a = preset("fig17a");
  CHECK(a.propagates());
  CHECK(a.mode == MixingMode::difference);
  CHECK(depth_of(a) == 3e6);
  CHECK(a.grid.n_samples == 512);
  CHECK(a.grid.t_start == -6.0);
  CHECK(a.grid.t_end == 12.0);
  CHECK(a.param("dtau2") == 5.0);
  CHECK(a.param("G20") == 1.6e-2);
  CHECK(preset("fig17b").mode == MixingMode::sum);
  CHECK(preset("fig17c").param("delta") == 5.6);
  CHECK(preset("fig17c").param("dtau2") == 0.0);
  CHECK(medium_of(preset("fig20"))->K2 == 0.4);
  CHECK(medium_of(preset("fig20"))->K1 == 0.67);
  CHECK(depth_of(preset("fig19_solid")) == 1e6);
  CHECK_THROWS_AS(depth_of(preset("fig4_solid")), ConfigError);
  CHECK_THROWS_AS(propagation_setup_of(preset("fig11_solid")), ConfigError);

  const PropagationSetup s = propagation_setup_of(a);
  CHECK(s.entry.g1.size() == 512);
  CHECK(s.stark.amplitude == doctest::Approx(325.0 * two_pi));
  CHECK(s.delta == doctest::Approx(0.5 * two_pi));
}

TEST_CASE("bare panel names resolve to the solid variant") {
  CHECK(preset("fig4").name == "fig4_solid");
  CHECK(preset("fig6_a").name == "fig6_a_solid");
}

TEST_CASE("unknown preset lists the known names") {
  try {
    preset("fig99");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("fig99") != std::string::npos);
    CHECK(msg.find("fig4_solid") != std::string::npos);
    CHECK(msg.find("fig17a") != std::string::npos);
  }
}

TEST_CASE("registry names are unique and cover every preset group") {
  const auto names = preset_names();
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  for (int fig = 3; fig <= 20; ++fig) {
    const std::string prefix = "fig" + std::to_string(fig);
    const bool found = std::any_of(names.begin(), names.end(), [&](const std::string& n) {
      return n.rfind(prefix, 0) == 0 && (n.size() == prefix.size() || !std::isdigit(n[prefix.size()]));
    });
    CAPTURE(prefix);
    CHECK(found);
  }
}

TEST_CASE("parameter overrides") {
  Preset p = preset("fig4_solid");
  p.set("R", 1.2);
  CHECK(p.param("R") == 1.2);
  try {
    p.set("G01", 1.0);
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("tau_st") != std::string::npos);
  }
  CHECK_THROWS_AS(p.set("R", NAN), ConfigError);
  CHECK(is_frequency_parameter(PresetKind::reduced, "S"));
  CHECK_FALSE(is_frequency_parameter(PresetKind::reduced, "dtau"));
  CHECK_FALSE(is_frequency_parameter(PresetKind::reduced, "beta"));
  CHECK(is_frequency_parameter(PresetKind::hg_entry, "G01"));
  CHECK_FALSE(is_frequency_parameter(PresetKind::hg_propagation, "Z_end"));
}

TEST_CASE("every zero-dimensional preset runs") {
  for (const auto& name : preset_names()) {
    const Preset p = preset(name);
    if (p.propagates()) continue;
    CAPTURE(name);
    const Trajectory tr = evolve(drive_of(p), p.grid, 1e-8);
    CHECK(tr.states.size() == p.grid.size());
    CHECK(std::isfinite(tr.final_state().rn));
  }
}

TEST_CASE("every propagation preset builds and takes a first depth step") {
  for (const auto& name : preset_names()) {
    const Preset p = preset(name);
    if (!p.propagates()) continue;
    CAPTURE(name);
    const PropagationRecord rec = propagate(propagation_setup_of(p), 50.0);
    CHECK(rec.final_snapshot().metrics);
    CHECK(p.snapshots.front() == 0.0);
    CHECK(p.snapshots.back() == depth_of(p));
  }
}

TEST_CASE("absorption scale of the mercury cell") {
  const HgCalibration cal;
  const AbsorptionScale s = absorption_scale(cal, 1e16);
  CHECK(s.alpha_minus == doctest::Approx(0.67 * 0.96 * 1e16 / 4).epsilon(1e-12));
  CHECK(s.per_cm == doctest::Approx(0.67 * 0.96 * 1e16 / 4 * 3e-9 / two_pi).epsilon(1e-12));
  CHECK(s.per_cm == doctest::Approx(7.6e5).epsilon(0.05));
  CHECK(s.Z_to_cm(1e6) == doctest::Approx(1.3).epsilon(0.05));
  const AbsorptionScale d = absorption_scale(cal, 2e16);
  CHECK(d.z0_cm == doctest::Approx(s.z0_cm / 2).epsilon(1e-12));
  CHECK_THROWS_AS(absorption_scale(cal, 0.0), ConfigError);
}

TEST_CASE("calibration wavelengths are consistent") {
  HgCalibration cal;
  CHECK_NOTHROW(cal.validate());
  CHECK(1.0 / (2.0 / cal.lambda1_nm - 1.0 / cal.lambda2_nm) == doctest::Approx(cal.lambda_minus_nm).epsilon(5e-3));
  cal.lambda_minus_nm = 185.0;
  CHECK_THROWS_AS(cal.validate(), ConfigError);
  cal = HgCalibration{};
  cal.tau1_s = -1.0;
  CHECK_THROWS_AS(cal.validate(), ConfigError);
}
