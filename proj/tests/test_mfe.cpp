#include <doctest.h>

#include <cmath>
#include <random>

#include "mfewave/experiments.hpp"

using namespace mfewave;

TEST_CASE("configuration checks") {
  const auto spec = cosine_modulation(0.04, 0.1);
  CHECK_NOTHROW(validate_mfe_config({3, 1}, spec));
  CHECK_THROWS_AS(validate_mfe_config({0, 1}, spec), std::invalid_argument);
  CHECK_THROWS_AS(validate_mfe_config({2, 2}, spec), std::invalid_argument);
  CHECK(MfeConfig{3, 2}.harmonics() == 13);
}

TEST_CASE("block operator: apply and solve are inverse, node-major band") {
  const auto g = build_grid(30);
  const auto spec = cosine_modulation(0.04, 0.2);
  const MfeConfig cfg{3, 1};
  const BlockOperator B(g, spec, cfg, cplx(7.0, -3.0));
  CHECK(B.dimension() == 30 * 7);
  CHECK(B.bandwidth() == 7 + 1);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  std::vector<CplxVec> z(7, CplxVec(30)), y;
  for (auto& zk : z)
    for (auto& v : zk) v = cplx(n(rng), n(rng));
  B.apply(z, y);
  B.solve(y);
  for (std::size_t k = 0; k < 7; ++k)
    for (std::size_t i = 0; i < 30; ++i) CHECK(std::abs(y[k][i] - z[k][i]) < 1e-10);
}

TEST_CASE("block operator matches the harmonic-by-harmonic definition") {
  // ((s + ik/eps)^2 + A) z_k + rho A (z_{k-1} + z_{k+1}) for mu = 1 + 2 rho cos
  const auto g = build_grid(12);
  const double eps = 0.05, rho = 0.15;
  const auto spec = cosine_modulation(eps, rho);
  const cplx s(3.0, 1.0);
  const BlockOperator B(g, spec, MfeConfig{2, 1}, s);
  const auto A = assemble_stiffness(g, [](double) { return 1.0; });
  std::vector<CplxVec> z(5, CplxVec(12)), y;
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < 12; ++i) z[k][i] = cplx(std::sin(double(i + k)), std::cos(double(i * k)));
  B.apply(z, y);
  for (int k = -2; k <= 2; ++k) {
    CplxVec acc(12), tmp(12);
    A.apply<cplx>(z[k + 2], acc);
    const cplx shift = (s + cplx(0.0, k / eps)) * (s + cplx(0.0, k / eps));
    for (std::size_t i = 0; i < 12; ++i) acc[i] += shift * z[k + 2][i];
    for (int j : {k - 1, k + 1}) {
      if (j < -2 || j > 2) continue;
      A.apply<cplx>(z[j + 2], tmp);
      for (std::size_t i = 0; i < 12; ++i) acc[i] += rho * tmp[i];
    }
    for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(y[k + 2][i] - acc[i]) < 1e-9 * std::abs(acc[i]) + 1e-9);
  }
}

TEST_CASE("the march factorises its step matrix once") {
  const auto g = build_grid(40);
  const auto spec = cosine_modulation(0.04, 0.2);
  const auto before = BlockOperator::factorizations();
  mfe_march(g, spec, SourceSpec{}, {3, 1}, 0.01, 200, [](std::size_t, const MfeState&) {});
  CHECK(BlockOperator::factorizations() - before == 1);
}

TEST_CASE("unmodulated medium: z_0 is the direct solution, other harmonics vanish") {
  const auto g = build_grid(80);
  const auto spec = cosine_modulation(0.04, 0.0);
  const SourceSpec src;
  const double tau = 5.0 / 256.0;
  const auto direct = direct_solve(g, spec, src, tau, 256);
  double worst = 0.0, scale = 0.0;
  bool others_zero = true;
  mfe_march(g, spec, src, {3, 1}, tau, 256, [&](std::size_t n, const MfeState& s) {
    for (std::size_t i = 0; i < g.m; ++i) {
      worst = std::max(worst, std::abs(s.zk(0)[i] - direct.states[n].u[i]));
      scale = std::max(scale, std::abs(direct.states[n].u[i]));
    }
    for (int k = -3; k <= 3; ++k)
      if (k != 0)
        for (const auto& v : s.zk(k)) others_zero = others_zero && v == cplx(0.0);
  });
  CHECK(worst <= 1e-10 * scale);
  CHECK(others_zero);
}

TEST_CASE("real sources give conjugate-symmetric coefficients at every step") {
  const auto g = build_grid(100);
  const auto spec = cosine_modulation(0.04, 0.4);
  double worst = 0.0, imag = 0.0;
  mfe_march(g, spec, SourceSpec{}, {3, 1}, 5.0 / 128.0, 128, [&](std::size_t, const MfeState& s) {
    worst = std::max(worst, symmetry_defect(s));
    const auto r = reconstruct(s, spec);
    double un = 0.0;
    for (double v : r.u) un = std::max(un, std::abs(v));
    imag = std::max(imag, r.imag_max / std::max(un, 1e-300));
  });
  CHECK(worst <= 1e-12);
  CHECK(imag <= 1e-10);
}

TEST_CASE("symmetry defect measures z_{-k} - conj z_k") {
  MfeState s(1, 4);
  s.zk(1)[0] = cplx(1.0, 2.0);
  s.zk(-1)[0] = cplx(1.0, -2.0);
  s.zk(0)[1] = 3.0;
  CHECK(symmetry_defect(s) == 0.0);
  s.zk(-1)[0] = cplx(1.0, 2.0);
  CHECK(symmetry_defect(s) > 0.1);
  CHECK(symmetry_defect(MfeState(2, 3)) == 0.0);
}

TEST_CASE("invariant equals the explicit quadratic form") {
  const auto g = build_grid(50);
  const double eps = 0.04, rho = 0.3;
  const auto spec = cosine_modulation(eps, rho);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n;
  MfeState s(2, g.m);
  for (int k = -2; k <= 2; ++k)
    for (std::size_t i = 0; i < g.m; ++i) s.zk(k)[i] = cplx(n(rng), n(rng)), s.wk(k)[i] = cplx(n(rng), n(rng));
  double expect = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const double w = norm_l2(g, std::span<const cplx>(s.wk(k)));
    const double z = norm_l2(g, std::span<const cplx>(s.zk(k)));
    const double dz = norm_grad(g, std::span<const cplx>(s.zk(k)));
    expect += w * w - k * k / (eps * eps) * z * z + dz * dz;
    if (k > -2) expect += 2.0 * rho * inner_grad(g, s.zk(k), s.zk(k - 1)).real();
  }
  CHECK(mfe_invariant(s, g, spec) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("the trapezoidal march conserves the invariant to round-off") {
  const auto g = build_grid(200);
  const auto spec = cosine_modulation(0.04, 0.1);
  const MfeConfig cfg{3, 1};
  const CouplingOperator T(g, spec, cfg.span());
  SourceSpec none;
  none.kind = SourceKind::zero;
  for (std::size_t N : {256u, 1024u}) {
    double e0 = 0.0, drift = 0.0;
    mfe_march_from(g, spec, none, cfg, 4.0 / static_cast<double>(N), N,
                   invariant_initial_state(g, cfg.span()), [&](std::size_t n, const MfeState& s) {
                     const double e = mfe_invariant(s, g, T, spec.epsilon);
                     if (n == 0) e0 = e;
                     drift = std::max(drift, std::abs(e - e0) / std::abs(e0));
                   });
    CHECK(drift < 1e-10);
  }
}

TEST_CASE("scheme orders: trapezoidal 2, printed recurrence 1") {
  const auto g = build_grid(100);
  const auto spec = cosine_modulation(0.1, 0.1);
  const MfeConfig cfg{2, 1};
  const SourceSpec src;
  const double T = 3.0;
  const std::size_t Nref = 8192;
  std::vector<RealVec> ref;
  mfe_march(g, spec, src, cfg, T / Nref, Nref, [&](std::size_t n, const MfeState& s) {
    if (n % 32 == 0) ref.push_back(reconstruct(s, spec).u);
  });
  auto final_error = [&](std::size_t N, MfeScheme scheme) {
    RealVec last;
    mfe_march(g, spec, src, cfg, T / static_cast<double>(N), N,
              [&](std::size_t n, const MfeState& s) { if (n == N) last = reconstruct(s, spec).u; }, scheme);
    double e = 0.0;
    for (std::size_t i = 0; i < g.m; ++i) e += g.h * std::pow(last[i] - ref.back()[i], 2);
    return std::sqrt(e);
  };
  const double t1 = final_error(64, MfeScheme::trapezoidal), t2 = final_error(128, MfeScheme::trapezoidal);
  const double p1 = final_error(128, MfeScheme::printed), p2 = final_error(256, MfeScheme::printed);
  CHECK(std::log2(t1 / t2) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(p1 / p2) == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("coefficient norms decay geometrically") {
  const auto g = build_grid(100);
  const auto spec = cosine_modulation(0.04, 0.4);
  const auto traj = mfe_solve(g, spec, SourceSpec{}, {6, 1}, 4.0 / 256.0, 256);
  const auto norms = coefficient_norms(traj, g);
  REQUIRE(norms.size() == 7);
  for (std::size_t k = 1; k < norms.size(); ++k) CHECK(norms[k] < norms[k - 1]);
  CoefficientNorms acc(g, 6);
  for (const auto& s : traj.states) acc.add(s);
  const auto streamed = acc.norms();
  for (std::size_t k = 0; k < norms.size(); ++k) CHECK(streamed[k] == doctest::Approx(norms[k]));
}

TEST_CASE("remainder against the direct solution shrinks with K") {
  const auto g = build_grid(100);
  const auto spec = cosine_modulation(0.05, 0.2);
  const SourceSpec src;
  const double tau = 2.0 / 2048;
  const auto direct = direct_solve(g, spec, src, tau, 2048, 16);
  MfeOptions o;
  o.stride = 16;
  const double r1 = remainder_norm(mfe_solve(g, spec, src, {1, 1}, tau, 2048, o), direct, spec, g);
  const double r3 = remainder_norm(mfe_solve(g, spec, src, {3, 1}, tau, 2048, o), direct, spec, g);
  CHECK(r3 < r1);
  o.stride = 3;
  const auto odd = mfe_solve(g, spec, src, {1, 1}, tau, 2046, o);
  CHECK_THROWS_AS(remainder_norm(odd, direct, spec, g), std::invalid_argument);
}
