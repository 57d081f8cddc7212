#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mfewave/spatial.hpp"

using namespace mfewave;
using std::numbers::pi;

TEST_CASE("grid geometry") {
  const auto g = build_grid(9, 0.0, 2.0);
  CHECK(g.h == doctest::Approx(0.2));
  CHECK(g.nodes.front() == doctest::Approx(0.2));
  CHECK(g.nodes.back() == doctest::Approx(1.8));
  CHECK(g.half_node(0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(build_grid(0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("Dirichlet Laplacian eigenpairs have the closed form") {
  const std::size_t m = 63;
  const auto g = build_grid(m);
  const auto A = assemble_stiffness(g, [](double) { return 1.0; });
  for (std::size_t j : {1u, 5u, 40u, 63u}) {
    RealVec v(m), Av(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = std::sin(static_cast<double>(j) * pi * g.nodes[i]);
    A.apply<double>(v, Av);
    const double s = std::sin(static_cast<double>(j) * pi * g.h / 2.0);
    const double lambda = 4.0 / (g.h * g.h) * s * s;
    for (std::size_t i = 0; i < m; ++i) CHECK(Av[i] == doctest::Approx(lambda * v[i]).epsilon(1e-9).scale(lambda));
  }
}

TEST_CASE("variable-coefficient stiffness is second-order consistent") {
  // -(c u')' with c = 1 + x, u = sin(pi x): exact -(pi cos(pi x) + (1+x)(-pi^2 sin(pi x)))
  auto err = [](std::size_t m) {
    const auto g = build_grid(m);
    const auto A = assemble_stiffness(g, [](double x) { return 1.0 + x; });
    RealVec u(m), Au(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = std::sin(pi * g.nodes[i]);
    A.apply<double>(u, Au);
    double e = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = g.nodes[i];
      const double exact = -pi * std::cos(pi * x) + (1.0 + x) * pi * pi * std::sin(pi * x);
      e = std::max(e, std::abs(Au[i] - exact));
    }
    return e;
  };
  const double e1 = err(99), e2 = err(199);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("stiffness is symmetric positive definite") {
  const auto g = build_grid(20);
  const auto A = assemble_stiffness(g, [](double x) { return 2.0 + std::sin(5.0 * x); });
  const auto d = A.dense();
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) CHECK(d[i * 20 + j] == d[j * 20 + i]);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    RealVec x(20), y(20);
    for (auto& v : x) v = n(rng);
    A.apply<double>(x, y);
    double q = 0.0;
    for (std::size_t i = 0; i < 20; ++i) q += x[i] * y[i];
    CHECK(q > 0.0);
  }
}

TEST_CASE("discrete norms of sin(pi x)") {
  const auto g = build_grid(999);
  RealVec v(g.m);
  for (std::size_t i = 0; i < g.m; ++i) v[i] = std::sin(pi * g.nodes[i]);
  CHECK(norm_l2(g, std::span<const double>(v)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(norm_grad(g, std::span<const double>(v)) == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-5));
  CplxVec c(g.m);
  for (std::size_t i = 0; i < g.m; ++i) c[i] = cplx(0.0, v[i]);
  CHECK(norm_grad(g, std::span<const cplx>(c)) == doctest::Approx(norm_grad(g, std::span<const double>(v))));
  const double ig = inner_grad(g, c, c).real();
  CHECK(ig == doctest::Approx(std::pow(norm_grad(g, std::span<const cplx>(c)), 2)));
}

TEST_CASE("gradient inner product matches the stiffness form") {
  const auto g = build_grid(40);
  const auto A = assemble_stiffness(g, [](double) { return 1.0; });
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  CplxVec u(g.m), v(g.m), Av(g.m);
  for (std::size_t i = 0; i < g.m; ++i) u[i] = cplx(n(rng), n(rng)), v[i] = cplx(n(rng), n(rng));
  A.apply<cplx>(v, Av);
  const cplx lhs = inner_grad(g, u, v), rhs = inner(g, u, Av);
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
}

TEST_CASE("shifted solves invert the shifted operator") {
  const auto g = build_grid(50);
  const auto A = assemble_stiffness(g, [](double x) { return 1.0 + x * x; });
  RealVec x(g.m), b(g.m);
  for (std::size_t i = 0; i < g.m; ++i) x[i] = std::cos(3.0 * g.nodes[i]);
  A.apply<double>(x, b);
  for (std::size_t i = 0; i < g.m; ++i) b[i] = 2.0 * x[i] + 0.5 * b[i];
  REQUIRE(solve_shifted_spd(A, 2.0, 0.5, b));
  for (std::size_t i = 0; i < g.m; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-10));

  const cplx shift(-30.0, 4.0);
  CplxVec z(g.m), r(g.m);
  for (std::size_t i = 0; i < g.m; ++i) z[i] = cplx(x[i], g.nodes[i]);
  A.apply<cplx>(z, r);
  for (std::size_t i = 0; i < g.m; ++i) r[i] += shift * z[i];
  solve_shifted(A, shift, r);
  for (std::size_t i = 0; i < g.m; ++i) CHECK(std::abs(r[i] - z[i]) < 1e-10);

  RealVec neg(g.m, 1.0);
  CHECK_FALSE(solve_shifted_spd(A, -1e8, 1.0, neg));
}
