#include "mfewave/direct.hpp"

#include <cmath>

namespace mfewave {

BandedSym stiffness_at(const Grid1D& grid, const ModulationSpec& spec, double t) {
  return assemble_stiffness(grid, [&](double x) { return modulation_eval(spec, x, t, 0); });
}

namespace {

BandedSym positive_stiffness_at(const Grid1D& grid, const ModulationSpec& spec, double t) {
  for (std::size_t i = 0; i <= grid.m; ++i)
    if (!(modulation_eval(spec, grid.half_node(i), t, 0) > 0.0))
      throw ModulationPositivityError(
          "direct solver: mu(x,t) <= 0 at x = " + std::to_string(grid.half_node(i)) +
              ", t = " + std::to_string(t),
          t);
  return stiffness_at(grid, spec, t);
}

}  // namespace

void direct_march(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                  double tau, std::size_t N, const WaveVisitor& visit) {
  if (!(tau > 0.0)) throw std::invalid_argument("direct_solve: tau must be positive");
  if (N == 0) throw std::invalid_argument("direct_solve: N must be at least 1");
  const std::size_t m = grid.m;
  const double q = 0.25 * tau * tau;

  WaveState state{RealVec(m, 0.0), RealVec(m, 0.0), 0.0};
  visit(0, state);

  BandedSym A_now = stiffness_at(grid, spec, 0.0);
  RealVec f_now = source_step(src, grid, tau, 0);
  RealVec Au(m), rhs(m);
  for (std::size_t n = 0; n < N; ++n) {
    const double t_next = static_cast<double>(n + 1) * tau;
    BandedSym A_next = positive_stiffness_at(grid, spec, t_next);
    RealVec f_next = source_step(src, grid, tau, n + 1);

    A_now.apply<double>(state.u, Au);
    for (std::size_t i = 0; i < m; ++i)
      rhs[i] = state.u[i] + tau * state.v[i] + q * (f_next[i] + f_now[i] - Au[i]);
    if (!solve_shifted_spd(A_next, 1.0, q, rhs))
      throw ModulationPositivityError("direct solver: step matrix not SPD", t_next);
    for (std::size_t i = 0; i < m; ++i) {
      state.v[i] = 2.0 * (rhs[i] - state.u[i]) / tau - state.v[i];
      state.u[i] = rhs[i];
    }
    state.t = t_next;
    visit(n + 1, state);
    A_now = std::move(A_next);
    f_now = std::move(f_next);
  }
}

WaveTrajectory direct_solve(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                            double tau, std::size_t N, std::size_t stride) {
  if (stride == 0 || N % stride != 0)
    throw std::invalid_argument("direct_solve: N must be a multiple of stride");
  WaveTrajectory traj;
  traj.tau = tau;
  traj.N = N;
  traj.stride = stride;
  traj.states.reserve(N / stride + 1);
  direct_march(grid, spec, src, tau, N, [&](std::size_t n, const WaveState& s) {
    if (n % stride == 0) traj.states.push_back(s);
  });
  return traj;
}

double energy_of(const WaveState& state, const ModulationSpec& spec, const Grid1D& grid) {
  const std::size_t m = grid.m;
  double kinetic = 0.0;
  for (double v : state.v) kinetic += v * v;
  double potential = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double left = i > 0 ? state.u[i - 1] : 0.0;
    const double right = i < m ? state.u[i] : 0.0;
    const double d = (right - left) / grid.h;
    potential += modulation_eval(spec, grid.half_node(i), state.t, 0) * d * d;
  }
  return 0.5 * grid.h * (kinetic + potential);
}

namespace {

/// (v, f) + 1/2 int d mu/dt |grad u|^2 at one state.
double energy_rate(const WaveState& s, const RealVec& f, const ModulationSpec& spec,
                   const Grid1D& grid) {
  const std::size_t m = grid.m;
  double work = 0.0;
  for (std::size_t i = 0; i < m; ++i) work += s.v[i] * f[i];
  double pump = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double left = i > 0 ? s.u[i - 1] : 0.0;
    const double right = i < m ? s.u[i] : 0.0;
    const double d = (right - left) / grid.h;
    pump += modulation_eval(spec, grid.half_node(i), s.t, 1) * d * d;
  }
  return grid.h * (work + 0.5 * pump);
}

}  // namespace

double energy_identity_residual(const WaveTrajectory& traj, const ModulationSpec& spec,
                                const SourceSpec& src, const Grid1D& grid) {
  if (traj.stride != 1)
    throw std::invalid_argument("energy_identity_residual: needs every time step");
  if (traj.states.empty()) return 0.0;
  const double e0 = energy_of(traj.states[0], spec, grid);
  double rate_prev = energy_rate(traj.states[0], source_step(src, grid, traj.tau, 0), spec, grid);
  double work = 0.0;
  double worst = 0.0;
  for (std::size_t n = 1; n < traj.states.size(); ++n) {
    const double rate = energy_rate(traj.states[n], source_step(src, grid, traj.tau, n), spec, grid);
    work += 0.5 * traj.tau * (rate_prev + rate);
    rate_prev = rate;
    worst = std::max(worst, std::abs(energy_of(traj.states[n], spec, grid) - e0 - work));
  }
  return worst;
}

}  // namespace mfewave
