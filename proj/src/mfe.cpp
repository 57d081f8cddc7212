#include "mfewave/mfe.hpp"

#include <algorithm>
#include <cmath>

namespace mfewave {

void validate_mfe_config(const MfeConfig& cfg, const ModulationSpec& spec) {
  if (cfg.K < 1) throw std::invalid_argument("mfe: K must be at least 1");
  if (cfg.J != spec.J())
    throw std::invalid_argument("mfe: J = " + std::to_string(cfg.J) +
                                " does not match the modulation (J = " +
                                std::to_string(spec.J()) + ")");
}

MfeState::MfeState(int span_, std::size_t m)
    : span(span_),
      z(static_cast<std::size_t>(2 * span_ + 1), CplxVec(m)),
      w(static_cast<std::size_t>(2 * span_ + 1), CplxVec(m)) {}

// ---------------------------------------------------------------------------

CouplingOperator::CouplingOperator(const Grid1D& grid, const ModulationSpec& spec, int span)
    : span_(span), rho_(spec.rho), A0_(assemble_stiffness(grid, spec.mu0.fn)) {
  Ahat_.reserve(spec.muhat.size());
  for (const auto& p : spec.muhat) Ahat_.push_back(assemble_stiffness(grid, p.fn));
}

void CouplingOperator::apply(const std::vector<CplxVec>& z, std::vector<CplxVec>& y) const {
  const int nk = 2 * span_ + 1;
  y.resize(static_cast<std::size_t>(nk));
  for (int kk = 0; kk < nk; ++kk) {
    auto& out = y[static_cast<std::size_t>(kk)];
    out.resize(m());
    A0_.apply<cplx>(z[static_cast<std::size_t>(kk)], out);
    for (std::size_t j = 1; j <= Ahat_.size(); ++j) {
      const int jj = static_cast<int>(j);
      if (kk - jj >= 0) Ahat_[j - 1].apply_add<cplx>(rho_, z[static_cast<std::size_t>(kk - jj)], out);
      if (kk + jj < nk) Ahat_[j - 1].apply_add<cplx>(rho_, z[static_cast<std::size_t>(kk + jj)], out);
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

CplxVec laplace_shifts(const MfeConfig& cfg, double epsilon, cplx s) {
  CplxVec shifts;
  for (int k = -cfg.span(); k <= cfg.span(); ++k) {
    const cplx d = s + cplx(0.0, k / epsilon);
    shifts.push_back(d * d);
  }
  return shifts;
}

}  // namespace

BlockOperator::BlockOperator(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             cplx s)
    : BlockOperator(grid, spec, cfg.span(), laplace_shifts(cfg, spec.epsilon, s)) {}

BlockOperator::BlockOperator(const Grid1D& grid, const ModulationSpec& spec, int span,
                             CplxVec shifts)
    : coupling_(grid, spec, span), shifts_(std::move(shifts)) {
  if (span < 0 || shifts_.size() != static_cast<std::size_t>(2 * span + 1))
    throw std::invalid_argument("BlockOperator: one shift per harmonic required");
  build_and_factorize();
}

void BlockOperator::build_and_factorize() {
  const std::size_t m = coupling_.m();
  const int nk = 2 * span() + 1;
  const std::size_t n = m * static_cast<std::size_t>(nk);
  const int J = static_cast<int>(coupling_.Ahat().size());
  const std::size_t band = std::min(n - 1, static_cast<std::size_t>(nk + J));
  lu_ = BandMatrix<cplx>(n, band, band);
  const auto& A0 = coupling_.A0();
  const double rho = coupling_.rho();
  for (std::size_t i = 0; i < m; ++i) {
    for (int k = -span(); k <= span(); ++k) {
      const std::size_t r = index(i, k);
      lu_(r, r) += shifts_[static_cast<std::size_t>(k + span())] + A0.diag[i];
      if (i > 0) lu_(r, index(i - 1, k)) += A0.off[i - 1];
      if (i + 1 < m) lu_(r, index(i + 1, k)) += A0.off[i];
      for (int j = 1; j <= J; ++j) {
        const auto& Aj = coupling_.Ahat()[static_cast<std::size_t>(j - 1)];
        for (int kc : {k - j, k + j}) {
          if (kc < -span() || kc > span()) continue;
          lu_(r, index(i, kc)) += rho * Aj.diag[i];
          if (i > 0) lu_(r, index(i - 1, kc)) += rho * Aj.off[i - 1];
          if (i + 1 < m) lu_(r, index(i + 1, kc)) += rho * Aj.off[i];
        }
      }
    }
  }
  counter_.fetch_add(1);
  lu_.factorize();
}

void BlockOperator::apply(const std::vector<CplxVec>& z, std::vector<CplxVec>& y) const {
  coupling_.apply(z, y);
  for (std::size_t kk = 0; kk < shifts_.size(); ++kk)
    for (std::size_t i = 0; i < m(); ++i) y[kk][i] += shifts_[kk] * z[kk][i];
}

void BlockOperator::solve(std::vector<CplxVec>& rhs) const {
  CplxVec flat(lu_.size());
  for (int k = -span(); k <= span(); ++k)
    for (std::size_t i = 0; i < m(); ++i)
      flat[index(i, k)] = rhs[static_cast<std::size_t>(k + span())][i];
  lu_.solve(flat);
  for (int k = -span(); k <= span(); ++k)
    for (std::size_t i = 0; i < m(); ++i)
      rhs[static_cast<std::size_t>(k + span())][i] = flat[index(i, k)];
}

BlockOperator assemble_block(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             cplx s) {
  validate_mfe_config(cfg, spec);
  return BlockOperator(grid, spec, cfg, s);
}

// ---------------------------------------------------------------------------

namespace {

void add_source(CplxVec& target, const RealVec& a, const RealVec& b) {
  for (std::size_t i = 0; i < target.size(); ++i) target[i] += a[i] + b[i];
}

/// The step matrices commute with z_k -> conj(z_{-k}), so for real data the
/// exact iterates stay in that subspace; projecting removes the round-off
/// component that the parametric growth would otherwise amplify.
void project_symmetric(std::vector<CplxVec>& z, int span) {
  auto& z0 = z[static_cast<std::size_t>(span)];
  for (auto& v : z0) v = v.real();
  for (int k = 1; k <= span; ++k) {
    auto& zp = z[static_cast<std::size_t>(span + k)];
    auto& zm = z[static_cast<std::size_t>(span - k)];
    for (std::size_t i = 0; i < zp.size(); ++i) {
      const cplx a = 0.5 * (zp[i] + std::conj(zm[i]));
      zp[i] = a;
      zm[i] = std::conj(a);
    }
  }
}

/// Trapezoidal rule on z' = w, w' = -2a w - (a^2 + T) z + f with a = ik/eps.
/// Eliminating w gives, per step,
///   [(2/tau + a)^2 + T] z+ = [4/tau^2 + 4a/tau - a^2 - T] z + 4/tau w + (f+ + f),
///   w+ = 2 (z+ - z)/tau - w.
void march_trapezoidal(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                       const MfeConfig& cfg, double tau, std::size_t N, MfeState state,
                       bool symmetric, const MfeVisitor& visit) {
  const int span = cfg.span();
  const BlockOperator op(grid, spec, cfg, cplx(2.0 / tau, 0.0));
  const auto& T = op.coupling();
  CplxVec carry;
  for (int k = -span; k <= span; ++k) {
    const cplx a(0.0, k / spec.epsilon);
    carry.push_back(4.0 / (tau * tau) + 4.0 * a / tau - a * a);
  }

  visit(0, state);
  RealVec f_now = source_step(src, grid, tau, 0);
  std::vector<CplxVec> Tz, rhs(state.z.size(), CplxVec(grid.m));
  for (std::size_t n = 0; n < N; ++n) {
    RealVec f_next = source_step(src, grid, tau, n + 1);
    T.apply(state.z, Tz);
    for (std::size_t kk = 0; kk < rhs.size(); ++kk)
      for (std::size_t i = 0; i < grid.m; ++i)
        rhs[kk][i] = carry[kk] * state.z[kk][i] - Tz[kk][i] + (4.0 / tau) * state.w[kk][i];
    add_source(rhs[static_cast<std::size_t>(span)], f_next, f_now);
    op.solve(rhs);
    if (symmetric) project_symmetric(rhs, span);
    for (std::size_t kk = 0; kk < rhs.size(); ++kk)
      for (std::size_t i = 0; i < grid.m; ++i) {
        state.w[kk][i] = 2.0 * (rhs[kk][i] - state.z[kk][i]) / tau - state.w[kk][i];
        state.z[kk][i] = rhs[kk][i];
      }
    state.t = static_cast<double>(n + 1) * tau;
    visit(n + 1, state);
    f_now = std::move(f_next);
  }
}

/// (z+ - 2z + z-)/tau^2 + 2a (z+ - z)/tau + a^2 (z+ + z)/2 + T (z+ + z)/2 = d_k0 (f+ + f)/2,
/// started from z^{-1} = z^0 = 0; w is reported as the backward difference.
void march_printed(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                   const MfeConfig& cfg, double tau, std::size_t N, const MfeVisitor& visit) {
  const int span = cfg.span();
  const double t2 = tau * tau;
  CplxVec shifts, carry;
  for (int k = -span; k <= span; ++k) {
    const cplx a(0.0, k / spec.epsilon);
    shifts.push_back(2.0 / t2 + 4.0 * a / tau + a * a);
    carry.push_back(4.0 / t2 + 4.0 * a / tau - a * a);
  }
  const BlockOperator op(grid, spec, span, shifts);
  const auto& T = op.coupling();

  MfeState state(span, grid.m);
  std::vector<CplxVec> prev = state.z;
  visit(0, state);
  RealVec f_now = source_step(src, grid, tau, 0);
  std::vector<CplxVec> Tz, rhs(state.z.size(), CplxVec(grid.m));
  for (std::size_t n = 0; n < N; ++n) {
    RealVec f_next = source_step(src, grid, tau, n + 1);
    T.apply(state.z, Tz);
    for (std::size_t kk = 0; kk < rhs.size(); ++kk)
      for (std::size_t i = 0; i < grid.m; ++i)
        rhs[kk][i] = carry[kk] * state.z[kk][i] - Tz[kk][i] - (2.0 / t2) * prev[kk][i];
    add_source(rhs[static_cast<std::size_t>(span)], f_next, f_now);
    op.solve(rhs);
    project_symmetric(rhs, span);
    prev = state.z;
    for (std::size_t kk = 0; kk < rhs.size(); ++kk)
      for (std::size_t i = 0; i < grid.m; ++i) {
        state.w[kk][i] = (rhs[kk][i] - prev[kk][i]) / tau;
        state.z[kk][i] = rhs[kk][i];
      }
    state.t = static_cast<double>(n + 1) * tau;
    visit(n + 1, state);
    f_now = std::move(f_next);
  }
}

void check_march_args(double tau, std::size_t N) {
  if (!(tau > 0.0)) throw std::invalid_argument("mfe_solve: tau must be positive");
  if (N == 0) throw std::invalid_argument("mfe_solve: N must be at least 1");
}

}  // namespace

void mfe_march(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
               const MfeConfig& cfg, double tau, std::size_t N, const MfeVisitor& visit,
               MfeScheme scheme) {
  validate_mfe_config(cfg, spec);
  check_march_args(tau, N);
  if (scheme == MfeScheme::printed) {
    march_printed(grid, spec, src, cfg, tau, N, visit);
    return;
  }
  march_trapezoidal(grid, spec, src, cfg, tau, N, MfeState(cfg.span(), grid.m), true, visit);
}

void mfe_march_from(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                    const MfeConfig& cfg, double tau, std::size_t N, MfeState initial,
                    const MfeVisitor& visit) {
  validate_mfe_config(cfg, spec);
  check_march_args(tau, N);
  if (initial.span != cfg.span() || initial.z.size() != static_cast<std::size_t>(cfg.harmonics()))
    throw std::invalid_argument("mfe_march_from: initial state does not match the truncation");
  initial.t = 0.0;
  const bool symmetric = symmetry_defect(initial) == 0.0;
  march_trapezoidal(grid, spec, src, cfg, tau, N, std::move(initial), symmetric, visit);
}

MfeTrajectory mfe_solve(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                        const MfeConfig& cfg, double tau, std::size_t N,
                        const MfeOptions& options) {
  if (options.stride == 0 || N % options.stride != 0)
    throw std::invalid_argument("mfe_solve: N must be a multiple of stride");
  MfeTrajectory traj;
  traj.tau = tau;
  traj.N = N;
  traj.stride = options.stride;
  traj.states.reserve(N / options.stride + 1);
  mfe_march(
      grid, spec, src, cfg, tau, N,
      [&](std::size_t n, const MfeState& s) {
        if (n % options.stride == 0) traj.states.push_back(s);
      },
      options.scheme);
  return traj;
}

// ---------------------------------------------------------------------------

Reconstruction reconstruct(const MfeState& state, const ModulationSpec& spec) {
  const std::size_t m = state.z.empty() ? 0 : state.z[0].size();
  CplxVec sum(m);
  for (int k = -state.span; k <= state.span; ++k) {
    const double phase = k * state.t / spec.epsilon;
    const cplx e(std::cos(phase), std::sin(phase));
    const auto& zk = state.zk(k);
    for (std::size_t i = 0; i < m; ++i) sum[i] += zk[i] * e;
  }
  Reconstruction r;
  r.u.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.u[i] = sum[i].real();
    r.imag_max = std::max(r.imag_max, std::abs(sum[i].imag()));
  }
  return r;
}

double symmetry_defect(const MfeState& state) {
  double top = 0.0, defect = 0.0;
  for (int k = -state.span; k <= state.span; ++k) {
    const auto& a = state.zk(k);
    const auto& b = state.zk(-k);
    double nk = 0.0, dk = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      nk += std::norm(a[i]);
      dk += std::norm(b[i] - std::conj(a[i]));
    }
    top = std::max(top, nk);
    defect = std::max(defect, dk);
  }
  return top > 0.0 ? std::sqrt(defect / top) : 0.0;
}

double mfe_invariant(const MfeState& state, const Grid1D& grid, const CouplingOperator& T,
                     double epsilon) {
  std::vector<CplxVec> Tz;
  T.apply(state.z, Tz);
  double e = 0.0;
  for (int k = -state.span; k <= state.span; ++k) {
    const auto kk = static_cast<std::size_t>(k + state.span);
    const double kin = norm_l2(grid, std::span<const cplx>(state.w[kk]));
    const double pot = norm_l2(grid, std::span<const cplx>(state.z[kk]));
    e += kin * kin - (k * k) / (epsilon * epsilon) * pot * pot;
    e += inner(grid, state.z[kk], Tz[kk]).real();
  }
  return e;
}

double mfe_invariant(const MfeState& state, const Grid1D& grid, const ModulationSpec& spec) {
  return mfe_invariant(state, grid, CouplingOperator(grid, spec, state.span), spec.epsilon);
}

CoefficientNorms::CoefficientNorms(const Grid1D& grid, int span)
    : h_(grid.h), span_(span), sums_(static_cast<std::size_t>(span + 1), 0.0) {}

void CoefficientNorms::add(const MfeState& state) {
  for (int k = 0; k <= span_; ++k) {
    double s = 0.0;
    for (const auto& v : state.zk(k)) s += std::norm(v);
    sums_[static_cast<std::size_t>(k)] += h_ * s;
  }
}

RealVec CoefficientNorms::norms() const {
  RealVec out(sums_.size());
  std::transform(sums_.begin(), sums_.end(), out.begin(), [](double s) { return std::sqrt(s); });
  return out;
}

RealVec coefficient_norms(const MfeTrajectory& traj, const Grid1D& grid) {
  if (traj.states.empty()) return {};
  CoefficientNorms acc(grid, traj.states.front().span);
  for (const auto& s : traj.states) acc.add(s);
  return acc.norms();
}

double remainder_norm(const MfeTrajectory& mfe_traj, const WaveTrajectory& ref_traj,
                      const ModulationSpec& spec, const Grid1D& grid) {
  const double ref_dt = ref_traj.tau * static_cast<double>(ref_traj.stride);
  double worst = 0.0;
  for (std::size_t q = 0; q < mfe_traj.states.size(); ++q) {
    const double t = mfe_traj.time(q);
    const double r = t / ref_dt;
    const auto idx = static_cast<std::size_t>(std::llround(r));
    if (std::abs(r - static_cast<double>(idx)) > 1e-9 * std::max(1.0, r) ||
        idx >= ref_traj.states.size())
      throw std::invalid_argument("remainder_norm: reference grid does not contain t = " +
                                  std::to_string(t));
    const auto u = reconstruct(mfe_traj.states[q], spec).u;
    const auto& ref = ref_traj.states[idx].u;
    if (ref.size() != u.size()) throw std::invalid_argument("remainder_norm: spatial mismatch");
    RealVec e(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) e[i] = u[i] - ref[i];
    worst = std::max(worst, norm_l2(grid, std::span<const double>(e)));
  }
  return worst;
}

}  // namespace mfewave
