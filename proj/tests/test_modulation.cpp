#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfewave/modulation.hpp"

using namespace mfewave;
using std::numbers::pi;

TEST_CASE("profiles parse and evaluate") {
  CHECK(Profile::parse("constant:2.5")(0.3) == 2.5);
  CHECK(Profile::parse("affine:1,2")(0.25) == doctest::Approx(1.5));
  CHECK(Profile::parse("bump:1,0.5,0.5,0.1")(0.5) == doctest::Approx(1.5));
  const auto t = Profile::parse("table:1,3,2");
  CHECK(t(0.25) == doctest::Approx(2.0));
  CHECK(t(0.75) == doctest::Approx(2.5));
  CHECK(Profile::parse("affine:1,2").text == "affine:1,2");
  for (const char* bad : {"", "constant", "constant:x", "affine:1", "table:1", "wave:1"})
    CHECK_THROWS_AS(Profile::parse(bad), std::invalid_argument);
}

TEST_CASE("cosine modulation values and time derivative") {
  const auto spec = cosine_modulation(0.04, 0.3);
  for (double t : {0.0, 0.013, 0.5, 1.7}) {
    CHECK(modulation_eval(spec, 0.2, t) == doctest::Approx(1.0 + 0.6 * std::cos(t / 0.04)));
    const double d = 1e-6;
    const double fd = (modulation_eval(spec, 0.2, t + d) - modulation_eval(spec, 0.2, t - d)) / (2 * d);
    CHECK(modulation_eval(spec, 0.2, t, 1) == doctest::Approx(fd).epsilon(1e-6));
  }
  const auto g = build_grid(20);
  CHECK(modulation_min(spec, g) == doctest::Approx(0.4).epsilon(1e-4));
}

TEST_CASE("multi-harmonic modulation") {
  ModulationSpec spec;
  spec.epsilon = 0.1;
  spec.rho = 0.1;
  spec.mu0 = Profile::parse("affine:2,1");
  spec.muhat = {Profile::constant(1.0), Profile::parse("affine:0,1")};
  const double x = 0.3, t = 0.7;
  const double expect = 2.3 + 0.2 * (std::cos(t / 0.1) + x * std::cos(2 * t / 0.1));
  CHECK(modulation_eval(spec, x, t) == doctest::Approx(expect));
  CHECK(spec.J() == 2);
}

TEST_CASE("validation fills and checks the bounds on mu0") {
  auto g = build_grid(10);
  auto spec = cosine_modulation(0.04, 0.2);
  spec.mu0 = Profile::parse("affine:1,1");
  validate_modulation(spec, g);
  CHECK(spec.c_mu > 1.0);
  CHECK(spec.C_mu < 2.0);
  spec.mu0 = Profile::parse("affine:1,-2");
  spec.c_mu = spec.C_mu = 0.0;
  CHECK_THROWS_AS(validate_modulation(spec, g), std::invalid_argument);
  auto bad = cosine_modulation(-1.0, 0.1);
  CHECK_THROWS_AS(validate_modulation(bad, g), std::invalid_argument);
  bad = cosine_modulation(0.1, -0.1);
  CHECK_THROWS_AS(validate_modulation(bad, g), std::invalid_argument);
}

TEST_CASE("energy growth constant of the cosine modulation") {
  // (1/(pi eps)) int (d_theta mu)_+ / mu = log((1 + 2 rho)/(1 - 2 rho)) / (pi eps)
  const auto g = build_grid(10);
  for (double rho : {0.05, 0.2, 0.4}) {
    const double eps = 0.04;
    const auto spec = cosine_modulation(eps, rho);
    const double exact = std::log((1 + 2 * rho) / (1 - 2 * rho)) / (pi * eps);
    CHECK(energy_growth_constant(spec, g) == doctest::Approx(exact).epsilon(1e-6));
  }
  // small-rho slope 4 rho / (pi eps)
  const auto small = cosine_modulation(0.04, 1e-4);
  CHECK(energy_growth_constant(small, g) == doctest::Approx(4e-4 / (pi * 0.04)).epsilon(1e-6));
}

TEST_CASE("sources") {
  const auto g = build_grid(50);
  SourceSpec src;
  for (double v : source_step(src, g, 0.01, 0)) CHECK(v == 0.0);
  const auto f1 = source_step(src, g, 0.01, 100);
  const auto s1 = sample_source(src, g, 1.0);
  for (std::size_t i = 0; i < g.m; ++i) CHECK(f1[i] == s1[i]);
  // the smooth source is off after the reported time
  const double off = source_off_time(src, 1e-8);
  for (double t : {off, off + 0.5, off + 3.0})
    for (double x : g.nodes) CHECK(std::abs(source_eval(src, x, t)) < 1e-8);
  SourceSpec zero;
  zero.kind = SourceKind::zero;
  CHECK(source_off_time(zero, 1e-8) == 0.0);
  CHECK(source_kind_from_string(to_string(SourceKind::low_regularity_step)) ==
        SourceKind::low_regularity_step);
  CHECK_THROWS_AS(source_kind_from_string("custom-ish"), std::invalid_argument);
}
