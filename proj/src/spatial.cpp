#include "mfewave/spatial.hpp"

#include <cmath>
#include <stdexcept>

namespace mfewave {

Grid1D build_grid(std::size_t m, double a, double b) {
  if (m == 0) throw std::invalid_argument("build_grid: m must be positive");
  if (!(a < b)) throw std::invalid_argument("build_grid: require a < b");
  Grid1D g;
  g.a = a;
  g.b = b;
  g.m = m;
  g.h = (b - a) / static_cast<double>(m + 1);
  g.nodes.resize(m);
  for (std::size_t i = 0; i < m; ++i) g.nodes[i] = a + static_cast<double>(i + 1) * g.h;
  return g;
}

RealVec BandedSym::dense() const {
  const std::size_t m = diag.size();
  RealVec d(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    d[i * m + i] = diag[i];
    if (i + 1 < m) {
      d[i * m + i + 1] = off[i];
      d[(i + 1) * m + i] = off[i];
    }
  }
  return d;
}

BandedSym assemble_stiffness(const Grid1D& grid, const Coefficient& coeff) {
  const std::size_t m = grid.m;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  RealVec c(m + 1);
  for (std::size_t i = 0; i <= m; ++i) c[i] = coeff(grid.half_node(i));
  BandedSym A;
  A.diag.resize(m);
  A.off.resize(m > 0 ? m - 1 : 0);
  for (std::size_t i = 0; i < m; ++i) A.diag[i] = (c[i] + c[i + 1]) * inv_h2;
  for (std::size_t i = 0; i + 1 < m; ++i) A.off[i] = -c[i + 1] * inv_h2;
  return A;
}

bool solve_shifted_spd(const BandedSym& A, double diag_shift, double scale, std::span<double> rhs) {
  const std::size_t m = A.size();
  RealVec d(m), l(m > 0 ? m - 1 : 0);
  double prev = diag_shift + scale * A.diag[0];
  if (!(prev > 0.0)) return false;
  d[0] = prev;
  for (std::size_t i = 1; i < m; ++i) {
    const double e = scale * A.off[i - 1];
    l[i - 1] = e / d[i - 1];
    d[i] = diag_shift + scale * A.diag[i] - l[i - 1] * e;
    if (!(d[i] > 0.0)) return false;
  }
  for (std::size_t i = 1; i < m; ++i) rhs[i] -= l[i - 1] * rhs[i - 1];
  for (std::size_t i = 0; i < m; ++i) rhs[i] /= d[i];
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= l[i] * rhs[i + 1];
  return true;
}

void solve_shifted(const BandedSym& A, cplx shift, std::span<cplx> rhs) {
  const std::size_t m = A.size();
  BandMatrix<cplx> M(m, 1, 1);
  for (std::size_t i = 0; i < m; ++i) {
    M(i, i) = shift + A.diag[i];
    if (i + 1 < m) {
      M(i, i + 1) = A.off[i];
      M(i + 1, i) = A.off[i];
    }
  }
  M.factorize();
  M.solve(rhs);
}

namespace {

template <class T>
double sum_sq(std::span<const T> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

template <class T>
double grad_sum_sq(std::span<const T> v) {
  const std::size_t m = v.size();
  if (m == 0) return 0.0;
  double s = std::norm(v[0]) + std::norm(v[m - 1]);
  for (std::size_t i = 0; i + 1 < m; ++i) s += std::norm(v[i + 1] - v[i]);
  return s;
}

}  // namespace

double norm_l2(const Grid1D& g, std::span<const double> v) { return std::sqrt(g.h * sum_sq(v)); }
double norm_l2(const Grid1D& g, std::span<const cplx> v) { return std::sqrt(g.h * sum_sq(v)); }
double norm_grad(const Grid1D& g, std::span<const double> v) {
  return std::sqrt(grad_sum_sq(v) / g.h);
}
double norm_grad(const Grid1D& g, std::span<const cplx> v) {
  return std::sqrt(grad_sum_sq(v) / g.h);
}

cplx inner(const Grid1D& g, std::span<const cplx> u, std::span<const cplx> v) {
  cplx s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return g.h * s;
}

cplx inner_grad(const Grid1D& g, std::span<const cplx> u, std::span<const cplx> v) {
  const std::size_t m = u.size();
  cplx s = std::conj(u[0]) * v[0] + std::conj(u[m - 1]) * v[m - 1];
  for (std::size_t i = 0; i + 1 < m; ++i) s += std::conj(u[i + 1] - u[i]) * (v[i + 1] - v[i]);
  return s / g.h;
}

}  // namespace mfewave
