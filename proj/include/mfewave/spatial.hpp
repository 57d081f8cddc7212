#pragma once

#include <functional>
#include <span>

#include "mfewave/banded.hpp"

namespace mfewave {

/// Uniform grid on (a, b) with m interior unknowns; the boundary nodes carry
/// homogeneous Dirichlet values and are not part of the unknown vector.
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  std::size_t m = 0;
  double h = 0.0;
  RealVec nodes;

  /// Coordinate of the half node between unknowns i-1 and i (i = 0..m).
  double half_node(std::size_t i) const { return a + (static_cast<double>(i) + 0.5) * h; }
};

/// Throws std::invalid_argument for m == 0 or a >= b.
Grid1D build_grid(std::size_t m, double a = 0.0, double b = 1.0);

/// Real symmetric tridiagonal matrix, stored once (diag has m entries,
/// off has m-1 entries for positions (i, i+1) == (i+1, i)).
struct BandedSym {
  RealVec diag;
  RealVec off;

  std::size_t size() const noexcept { return diag.size(); }

  template <class T>
  void apply(std::span<const T> x, std::span<T> y) const {
    const std::size_t m = diag.size();
    for (std::size_t i = 0; i < m; ++i) {
      T acc = diag[i] * x[i];
      if (i > 0) acc += off[i - 1] * x[i - 1];
      if (i + 1 < m) acc += off[i] * x[i + 1];
      y[i] = acc;
    }
  }

  /// y += alpha * A x.
  template <class T, class S>
  void apply_add(S alpha, std::span<const T> x, std::span<T> y) const {
    const std::size_t m = diag.size();
    for (std::size_t i = 0; i < m; ++i) {
      T acc = diag[i] * x[i];
      if (i > 0) acc += off[i - 1] * x[i - 1];
      if (i + 1 < m) acc += off[i] * x[i + 1];
      y[i] += alpha * acc;
    }
  }

  /// Row-major dense copy, for tests and small diagnostics.
  RealVec dense() const;
};

using Coefficient = std::function<double(double)>;

/// Finite-difference discretisation of -d/dx (c(x) d/dx) with Dirichlet
/// rows eliminated; c is sampled at the half nodes.
BandedSym assemble_stiffness(const Grid1D& grid, const Coefficient& coeff);

/// In-place LDL^T solve of (diag_shift*I + scale*A) x = rhs for SPD systems.
/// Returns false (leaving rhs unspecified) when a pivot is not positive.
bool solve_shifted_spd(const BandedSym& A, double diag_shift, double scale, std::span<double> rhs);

/// Solves (shift*I + A) x = rhs for complex shift by banded LU with pivoting.
/// Throws SingularMatrixError on an exactly singular system.
void solve_shifted(const BandedSym& A, cplx shift, std::span<cplx> rhs);

// Discrete norms: ||v||^2 = h sum |v_i|^2, gradients are forward differences
// with the Dirichlet zeros padded at both ends.

double norm_l2(const Grid1D& grid, std::span<const double> v);
double norm_l2(const Grid1D& grid, std::span<const cplx> v);
double norm_grad(const Grid1D& grid, std::span<const double> v);
double norm_grad(const Grid1D& grid, std::span<const cplx> v);

/// h * sum conj(u_i) v_i.
cplx inner(const Grid1D& grid, std::span<const cplx> u, std::span<const cplx> v);
/// h * sum conj(du_i) dv_i over the m+1 forward differences.
cplx inner_grad(const Grid1D& grid, std::span<const cplx> u, std::span<const cplx> v);

}  // namespace mfewave
