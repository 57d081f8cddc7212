#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mfewave/direct.hpp"

using namespace mfewave;
using std::numbers::pi;

namespace {

double modal_forcing(double t) { return t * std::sin(2.0 * t); }

SourceSpec modal_source() {
  SourceSpec src;
  src.kind = SourceKind::custom;
  src.custom = [](double x, double t) { return std::sin(pi * x) * modal_forcing(t); };
  return src;
}

}  // namespace

TEST_CASE("constant medium reduces to the trapezoidal rule on one mode") {
  const auto g = build_grid(60);
  const auto spec = cosine_modulation(0.1, 0.0);
  const double tau = 0.01;
  const std::size_t N = 300;
  const auto traj = direct_solve(g, spec, modal_source(), tau, N);

  // scalar oracle: y'' = -lambda y + g(t), first-order trapezoidal rule, g_0 = 0
  const double s = std::sin(pi * g.h / 2.0);
  const double lambda = 4.0 / (g.h * g.h) * s * s;
  double y = 0.0, v = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    const double g0 = n == 0 ? 0.0 : modal_forcing(static_cast<double>(n) * tau);
    const double g1 = modal_forcing(static_cast<double>(n + 1) * tau);
    const double yn = (2.0 * y / tau + 2.0 * v - lambda * tau * y / 2.0 + tau * (g0 + g1) / 2.0) /
                      (2.0 / tau + lambda * tau / 2.0);
    v = 2.0 * (yn - y) / tau - v;
    y = yn;
    const auto& st = traj.states[n + 1];
    for (std::size_t i = 0; i < g.m; i += 7) {
      CHECK(st.u[i] == doctest::Approx(y * std::sin(pi * g.nodes[i])).epsilon(1e-10).scale(1e-3));
      CHECK(st.v[i] == doctest::Approx(v * std::sin(pi * g.nodes[i])).epsilon(1e-10).scale(1e-3));
    }
  }
}

TEST_CASE("trajectory times are generated, not accumulated") {
  const auto g = build_grid(10);
  const auto traj = direct_solve(g, cosine_modulation(0.1, 0.1), SourceSpec{}, 0.1, 30, 3);
  REQUIRE(traj.states.size() == 11);
  for (std::size_t k = 0; k < traj.states.size(); ++k)
    CHECK(traj.states[k].t == static_cast<double>(3 * k) * 0.1);
  CHECK_THROWS(direct_solve(g, cosine_modulation(0.1, 0.1), SourceSpec{}, 0.1, 31, 3));
}

TEST_CASE("non-positive coefficient is rejected with the failing time") {
  const auto g = build_grid(10);
  try {
    direct_solve(g, cosine_modulation(0.1, 0.6), SourceSpec{}, 0.05, 40);
    FAIL("expected ModulationPositivityError");
  } catch (const ModulationPositivityError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= 2.0);
  }
}

TEST_CASE("energy is nonnegative") {
  const auto g = build_grid(30);
  const auto spec = cosine_modulation(0.05, 0.3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    WaveState st{RealVec(g.m), RealVec(g.m), n(rng) * n(rng)};
    for (std::size_t i = 0; i < g.m; ++i) st.u[i] = n(rng), st.v[i] = n(rng);
    CHECK(energy_of(st, spec, g) >= 0.0);
  }
}

TEST_CASE("energy identity residual converges at second order") {
  const auto g = build_grid(100);
  const auto spec = cosine_modulation(0.1, 0.2);
  const SourceSpec src;
  std::vector<double> r;
  for (std::size_t N : {400u, 800u, 1600u}) {
    const auto traj = direct_solve(g, spec, src, 2.0 / static_cast<double>(N), N);
    r.push_back(energy_identity_residual(traj, spec, src, g));
  }
  CHECK(r[0] / r[1] > 3.5);
  CHECK(r[1] / r[2] > 3.5);
}

TEST_CASE("static medium conserves energy once the source is off") {
  const auto g = build_grid(200);
  const auto spec = cosine_modulation(0.1, 0.0);
  const SourceSpec src;
  const double T = 4.0, off = source_off_time(src, 1e-12);
  const std::size_t N = 4096;
  const double tau = T / static_cast<double>(N);
  double e_ref = -1.0, drift = 0.0;
  direct_march(g, spec, src, tau, N, [&](std::size_t n, const WaveState& st) {
    if (static_cast<double>(n) * tau < off + tau) return;
    const double e = energy_of(st, spec, g);
    if (e_ref < 0.0) e_ref = e;
    drift = std::max(drift, std::abs(e - e_ref) / e_ref);
  });
  REQUIRE(e_ref > 0.0);
  CHECK(drift < 1e-9);
}

TEST_CASE("energy estimate with the numerical growth constant") {
  const auto g = build_grid(100);
  const auto spec = cosine_modulation(0.05, 0.1);
  const SourceSpec src;
  const double C = energy_growth_constant(spec, g);
  const double tau = 1.0 / 256.0;
  double forcing = 0.0;
  RealVec prev;
  direct_march(g, spec, src, tau, 1024, [&](std::size_t n, const WaveState& st) {
    const auto f = source_step(src, g, tau, n);
    double ff = 0.0;
    for (double v : f) ff += g.h * v * v;
    if (n > 0) forcing += 0.5 * tau * ff;
    const double t = static_cast<double>(n) * tau;
    const double bound = std::exp(C * (t + spec.epsilon)) * forcing / (4.0 * C);
    CHECK(energy_of(st, spec, g) <= bound + 1e-14);
    if (n > 0) forcing += 0.5 * tau * ff;
  });
}
