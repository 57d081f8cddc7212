#include "mfewave/cq.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace mfewave {

namespace {

std::mutex plan_mutex;  // FFTW planning is not thread safe

/// In-place DFT of `howmany` interleaved series of length L, element l of
/// series j at data[l * howmany + j]. sign = FFTW_BACKWARD computes
/// sum_n x_n exp(+2 pi i l n / L).
void dft_columns(CplxVec& data, std::size_t L, std::size_t howmany, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  const int n = static_cast<int>(L);
  const int hm = static_cast<int>(howmany);
  fftw_plan plan;
  {
    std::lock_guard lock(plan_mutex);
    plan = fftw_plan_many_dft(1, &n, hm, ptr, nullptr, hm, 1, ptr, nullptr, hm, 1, sign,
                              FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(plan_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace

cplx trapezoid_delta(cplx zeta) { return 2.0 * (1.0 - zeta) / (1.0 + zeta); }

ContourRule make_contour(double tau, std::size_t N, int oversample, double lambda,
                         double growth_rate) {
  if (!(tau > 0.0)) throw std::invalid_argument("contour: tau must be positive");
  if (oversample < 1) throw std::invalid_argument("contour: oversample must be >= 1");
  ContourRule r;
  r.tau = tau;
  r.N = N;
  r.L = static_cast<std::size_t>(oversample) * (N + 1);
  if (lambda <= 0.0) {
    const double q = oversample;
    const double eps = std::numeric_limits<double>::epsilon();
    const double n1 = static_cast<double>(N + 1);
    lambda = std::pow(eps, 1.0 / ((q + 1.0) * n1)) *
             std::exp(-std::max(growth_rate, 0.0) * tau * q / (q + 1.0));
  }
  if (!(lambda < 1.0)) throw std::invalid_argument("contour: lambda must lie in (0, 1)");
  r.lambda = lambda;
  r.s.resize(r.L);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t l = 0; l < r.L; ++l) {
    const double phi = two_pi * static_cast<double>(l) / static_cast<double>(r.L);
    r.s[l] = trapezoid_delta(lambda * cplx(std::cos(phi), std::sin(phi))) / tau;
  }
  return r;
}

CqWeights::CqWeights(const ScalarSymbol& symbol, const ContourRule& rule)
    : tau_(rule.tau), lambda_(rule.lambda) {
  CplxVec k(rule.L);
  for (std::size_t l = 0; l < rule.L; ++l) k[l] = symbol(rule.s[l]);
  dft_columns(k, rule.L, 1, FFTW_FORWARD);
  omega_.resize(rule.N + 1);
  const double inv_l = 1.0 / static_cast<double>(rule.L);
  for (std::size_t j = 0; j <= rule.N; ++j)
    omega_[j] = k[j] * inv_l * std::pow(rule.lambda, -static_cast<double>(j));
}

CplxVec CqWeights::apply(std::span<const cplx> g) const {
  const std::size_t n_out = std::min(omega_.size(), g.size());
  CplxVec out(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    cplx acc{};
    for (std::size_t j = 0; j <= n; ++j) acc += omega_[n - j] * g[j];
    out[n] = acc;
  }
  return out;
}

CqWeights cq_weights(const ScalarSymbol& symbol, double tau, std::size_t N, double lambda,
                     int oversample) {
  return CqWeights(symbol, make_contour(tau, N, oversample, lambda));
}

CplxVec cq_apply(const ScalarSymbol& symbol, const ContourRule& rule, std::span<const cplx> g) {
  const std::size_t n_in = std::min(g.size(), rule.N + 1);
  CplxVec data(rule.L);
  double scale = 1.0;
  for (std::size_t n = 0; n < n_in; ++n, scale *= rule.lambda) data[n] = scale * g[n];
  dft_columns(data, rule.L, 1, FFTW_BACKWARD);
  for (std::size_t l = 0; l < rule.L; ++l) data[l] *= symbol(rule.s[l]);
  dft_columns(data, rule.L, 1, FFTW_FORWARD);
  CplxVec out(n_in);
  const double inv_l = 1.0 / static_cast<double>(rule.L);
  for (std::size_t n = 0; n < n_in; ++n)
    out[n] = data[n] * inv_l * std::pow(rule.lambda, -static_cast<double>(n));
  return out;
}

namespace {

MfeTrajectory cq_solve_on(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                          const MfeConfig& cfg, const ContourRule& rule, std::size_t stride,
                          const CqOptions& options) {
  const double tau = rule.tau;
  const std::size_t N = rule.N;
  const std::size_t L = rule.L;
  const std::size_t m = grid.m;
  const int span = cfg.span();
  const auto nk = static_cast<std::size_t>(cfg.harmonics());
  const std::size_t block = nk * m;

  std::vector<std::size_t> order = options.order;
  if (order.empty()) {
    order.resize(L);
    for (std::size_t l = 0; l < L; ++l) order[l] = l;
  }
  {
    std::vector<char> seen(L, 0);
    for (auto l : order)
      if (l >= L || seen[l]++) throw std::invalid_argument("cq_solve: order must permute the contour");
    if (order.size() != L) throw std::invalid_argument("cq_solve: order must permute the contour");
  }

  CplxVec F(L * m);
  double scale = 1.0;
  for (std::size_t n = 0; n <= N; ++n, scale *= rule.lambda) {
    const auto f = source_step(src, grid, tau, n);
    for (std::size_t i = 0; i < m; ++i) F[n * m + i] = scale * f[i];
  }
  dft_columns(F, L, m, FFTW_BACKWARD);

  CplxVec Z(L * block), W(L * block);
  auto solve_point = [&](std::size_t l) {
    std::vector<CplxVec> rhs(nk, CplxVec(m));
    std::copy(F.begin() + static_cast<std::ptrdiff_t>(l * m),
              F.begin() + static_cast<std::ptrdiff_t>((l + 1) * m),
              rhs[static_cast<std::size_t>(span)].begin());
    const BlockOperator op(grid, spec, cfg, rule.s[l]);
    op.solve(rhs);
    for (std::size_t kk = 0; kk < nk; ++kk)
      for (std::size_t i = 0; i < m; ++i) {
        Z[l * block + kk * m + i] = rhs[kk][i];
        W[l * block + kk * m + i] = rule.s[l] * rhs[kk][i];
      }
  };

  if (options.parallel) {
    const auto count = static_cast<std::ptrdiff_t>(L);
    bool failed = false;
    std::string message;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t q = 0; q < count; ++q) {
      try {
        solve_point(order[static_cast<std::size_t>(q)]);
      } catch (const std::exception& e) {
#pragma omp critical
        {
          failed = true;
          message = e.what();
        }
      }
    }
    if (failed) throw SingularMatrixError("cq_solve: " + message, 0);
  } else {
    for (std::size_t q = 0; q < L; ++q) solve_point(order[q]);
  }

  dft_columns(Z, L, block, FFTW_FORWARD);
  dft_columns(W, L, block, FFTW_FORWARD);

  MfeTrajectory traj;
  traj.tau = tau;
  traj.N = N;
  traj.stride = stride;
  const double inv_l = 1.0 / static_cast<double>(L);
  for (std::size_t n = 0; n <= N; n += stride) {
    const double unscale = inv_l * std::pow(rule.lambda, -static_cast<double>(n));
    MfeState s(span, m);
    s.t = static_cast<double>(n) * tau;
    for (std::size_t kk = 0; kk < nk; ++kk)
      for (std::size_t i = 0; i < m; ++i) {
        s.z[kk][i] = Z[n * block + kk * m + i] * unscale;
        s.w[kk][i] = W[n * block + kk * m + i] * unscale;
      }
    traj.states.push_back(std::move(s));
  }
  return traj;
}

}  // namespace

namespace {

double harmonic_norm(const CplxVec& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

/// Largest exponential rate over the harmonics across the last quarter of the run.
double estimate_growth(const MfeTrajectory& traj) {
  const std::size_t N = traj.states.size() - 1;
  const std::size_t lag = std::max<std::size_t>(1, N / 4);
  const auto& late = traj.states[N];
  const auto& early = traj.states[N - lag];
  double rate = 0.0;
  for (std::size_t kk = 0; kk < late.z.size(); ++kk) {
    const double a = harmonic_norm(early.z[kk]);
    const double b = harmonic_norm(late.z[kk]);
    if (a > 0.0 && b > a) rate = std::max(rate, std::log(b / a) / (static_cast<double>(lag) * traj.tau));
  }
  return rate;
}

}  // namespace

MfeTrajectory cq_solve(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                       const MfeConfig& cfg, double tau, std::size_t N, const CqOptions& options) {
  validate_mfe_config(cfg, spec);
  if (N == 0) throw std::invalid_argument("cq_solve: N must be at least 1");
  if (options.stride == 0 || N % options.stride != 0)
    throw std::invalid_argument("cq_solve: N must be a multiple of stride");
  if (options.lambda > 0.0 || options.growth_rate >= 0.0) {
    const auto rule = make_contour(tau, N, options.oversample, options.lambda,
                                   std::max(options.growth_rate, 0.0));
    return cq_solve_on(grid, spec, src, cfg, rule, options.stride, options);
  }
  // First pass on the default contour, full resolution for the growth estimate.
  auto first = cq_solve_on(grid, spec, src, cfg, make_contour(tau, N, options.oversample), 1,
                           options);
  const double rate = estimate_growth(first);
  if (rate > 0.0) {
    const auto rule = make_contour(tau, N, options.oversample, 0.0, rate);
    return cq_solve_on(grid, spec, src, cfg, rule, options.stride, options);
  }
  if (options.stride == 1) return first;
  MfeTrajectory out;
  out.tau = tau;
  out.N = N;
  out.stride = options.stride;
  for (std::size_t n = 0; n <= N; n += options.stride) out.states.push_back(first.states[n]);
  return out;
}

}  // namespace mfewave
