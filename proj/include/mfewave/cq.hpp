#pragma once

#include <functional>

#include "mfewave/mfe.hpp"

namespace mfewave {

/// Contour quadrature for trapezoidal convolution quadrature: L points
/// s_l = delta(lambda zeta_l) / tau with zeta_l = exp(2 pi i l / L) and
/// delta(zeta) = 2 (1 - zeta) / (1 + zeta).
///
/// L = oversample * (N + 1); the input sequence is zero padded. The default
/// radius balances the aliasing error (lambda G)^L against the round-off
/// amplification eps lambda^{-N}, where G = exp(growth_rate tau) bounds the
/// per-step growth of the sequence:
///   lambda = eps^(1/((q+1)(N+1))) G^(-q/(q+1)),   q = oversample.
/// For G = 1 this is lambda^L = eps^(q/(q+1)), and q = 1 gives the classical
/// eps^(1/(2N+2)).
struct ContourRule {
  double tau = 0.0;
  std::size_t N = 0;
  std::size_t L = 0;
  double lambda = 0.0;
  CplxVec s;
};

/// Throws std::invalid_argument unless tau > 0, oversample >= 1 and lambda in (0, 1)
/// (lambda <= 0 selects the default).
ContourRule make_contour(double tau, std::size_t N, int oversample = 2, double lambda = 0.0,
                         double growth_rate = 0.0);

/// Trapezoidal generating function 2 (1 - zeta) / (1 + zeta).
cplx trapezoid_delta(cplx zeta);

using ScalarSymbol = std::function<cplx(cplx)>;

/// Scalar convolution weights omega_0..omega_N of K(d_t^tau).
class CqWeights {
 public:
  CqWeights(const ScalarSymbol& symbol, const ContourRule& rule);

  double tau() const noexcept { return tau_; }
  double lambda() const noexcept { return lambda_; }
  const CplxVec& omega() const noexcept { return omega_; }

  /// (K(d_t^tau) g)_n = sum_{j<=n} omega_{n-j} g_j for n = 0..min(N, g.size()-1).
  CplxVec apply(std::span<const cplx> g) const;

 private:
  double tau_;
  double lambda_;
  CplxVec omega_;
};

CqWeights cq_weights(const ScalarSymbol& symbol, double tau, std::size_t N, double lambda = 0.0,
                     int oversample = 2);

/// K(d_t^tau) g by the frequency route (transform, multiply, transform back).
CplxVec cq_apply(const ScalarSymbol& symbol, const ContourRule& rule, std::span<const cplx> g);

struct CqOptions {
  int oversample = 2;
  double lambda = 0.0;
  /// Run the contour-point solves with OpenMP; the serial loop is the reference.
  bool parallel = true;
  /// Optional processing order of the contour points (a permutation of 0..L-1).
  std::vector<std::size_t> order;
  std::size_t stride = 1;
  /// Exponential growth rate of the solution used to place the contour.
  /// Negative: estimate it from a first pass over the default contour and
  /// repeat the solve when growth is detected.
  double growth_rate = -1.0;
};

/// z = (D_K(d_t^tau)^2 + T_A)^{-1} (delta_k0 f): one factorised block solve per
/// contour point, combined by the inverse scaled DFT. w = d_t^tau z, so the
/// result is the same trajectory as the trapezoidal march. Throws
/// ResonanceError-compatible SingularMatrixError when a contour point is singular.
MfeTrajectory cq_solve(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                       const MfeConfig& cfg, double tau, std::size_t N,
                       const CqOptions& options = {});

}  // namespace mfewave
