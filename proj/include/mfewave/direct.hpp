#pragma once

#include <functional>
#include <stdexcept>

#include "mfewave/modulation.hpp"

namespace mfewave {

/// Displacement and velocity at the interior nodes.
struct WaveState {
  RealVec u;
  RealVec v;
  double t = 0.0;
};

/// States at t_n = n * tau for n = 0, stride, 2*stride, ..., N.
struct WaveTrajectory {
  double tau = 0.0;
  std::size_t N = 0;
  std::size_t stride = 1;
  std::vector<WaveState> states;

  double time(std::size_t k) const { return static_cast<double>(k * stride) * tau; }
};

/// Raised when mu(x, t) <= 0 at some half node, which breaks the SPD solve.
class ModulationPositivityError : public std::runtime_error {
 public:
  ModulationPositivityError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

using WaveVisitor = std::function<void(std::size_t n, const WaveState&)>;

/// Trapezoidal rule on (u, v)' = (v, -A(t) u + f) from zero data; calls
/// visit(n, state) for n = 0..N. Each step solves (I + tau^2/4 A(t_{n+1})).
void direct_march(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                  double tau, std::size_t N, const WaveVisitor& visit);

/// direct_march keeping every `stride`-th state (N must be a multiple of stride).
WaveTrajectory direct_solve(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                            double tau, std::size_t N, std::size_t stride = 1);

/// Stiffness A(t) with coefficient mu(., t) sampled at the half nodes.
BandedSym stiffness_at(const Grid1D& grid, const ModulationSpec& spec, double t);

/// 1/2 h sum v^2 + 1/2 h sum_{half nodes} mu(x, t) (du/h)^2.
double energy_of(const WaveState& state, const ModulationSpec& spec, const Grid1D& grid);

/// max_n |E(t_n) - E(0) - Q_n| where Q_n is the trapezoidal time quadrature of
/// (v, f) + 1/2 (d mu/dt |grad u|^2). Requires a stride-1 trajectory.
double energy_identity_residual(const WaveTrajectory& traj, const ModulationSpec& spec,
                                const SourceSpec& src, const Grid1D& grid);

}  // namespace mfewave
