#include "mfewave/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mfewave {

BandedSym laplacian(const Grid1D& grid) {
  return assemble_stiffness(grid, [](double) { return 1.0; });
}

CplxVec helmholtz_apply(const Grid1D& grid, cplx s, std::span<const cplx> g) {
  CplxVec w(g.begin(), g.end());
  try {
    solve_shifted(laplacian(grid), s * s, w);
  } catch (const SingularMatrixError&) {
    throw ResonanceError("helmholtz_apply: singular resolvent", s);
  }
  return w;
}

double well_posedness_threshold(const ModulationSpec& spec) {
  return 4.0 * spec.rho / spec.epsilon;
}

namespace {

double block_l2_sq(const Grid1D& grid, const std::vector<CplxVec>& z) {
  double s = 0.0;
  for (const auto& v : z) {
    const double n = norm_l2(grid, std::span<const cplx>(v));
    s += n * n;
  }
  return s;
}

double block_grad_sq(const Grid1D& grid, const std::vector<CplxVec>& z) {
  double s = 0.0;
  for (const auto& v : z) {
    const double n = norm_grad(grid, std::span<const cplx>(v));
    s += n * n;
  }
  return s;
}

/// D_K(s) z, i.e. (s + ik/eps) z_k.
std::vector<CplxVec> apply_d(const std::vector<CplxVec>& z, int span, double epsilon, cplx s) {
  auto out = z;
  for (int k = -span; k <= span; ++k) {
    const cplx d = s + cplx(0.0, k / epsilon);
    for (auto& x : out[static_cast<std::size_t>(k + span)]) x *= d;
  }
  return out;
}

CplxVec random_vec(std::mt19937_64& gen, std::size_t m) {
  std::normal_distribution<double> nd;
  CplxVec v(m);
  for (auto& x : v) x = cplx(nd(gen), nd(gen));
  return v;
}

cplx random_s(std::mt19937_64& gen, const SampleBox& box) {
  std::uniform_real_distribution<double> re(0.0, 1.0), im(-box.im_max, box.im_max);
  // re_min excluded
  const double r = box.re_max - (box.re_max - box.re_min) * re(gen);
  return {r, im(gen)};
}

void record(SuiteResult& r, double lhs, double rhs) {
  ++r.samples;
  const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
  r.worst_ratio = std::max(r.worst_ratio, ratio);
  // tolerate round-off in the comparison
  if (lhs > rhs * (1.0 + 1e-10)) ++r.failures;
}

}  // namespace

LaplaceSolveResult laplace_solve(const Grid1D& grid, const ModulationSpec& spec,
                                 const MfeConfig& cfg, cplx s, std::span<const cplx> fhat) {
  validate_mfe_config(cfg, spec);
  if (fhat.size() != grid.m) throw std::invalid_argument("laplace_solve: fhat has wrong length");
  const int span = cfg.span();
  LaplaceSolveResult r;
  r.s = s;
  r.admissible = s.real() > well_posedness_threshold(spec);
  r.zhat.assign(static_cast<std::size_t>(cfg.harmonics()), CplxVec(grid.m));
  r.zhat[static_cast<std::size_t>(span)].assign(fhat.begin(), fhat.end());
  try {
    const BlockOperator op(grid, spec, cfg, s);
    op.solve(r.zhat);
  } catch (const SingularMatrixError& e) {
    std::ostringstream os;
    os << "laplace_solve: singular block system at s = " << s.real() << (s.imag() < 0 ? "" : "+")
       << s.imag() << "i (row " << e.row() << ")";
    throw ResonanceError(os.str(), s);
  }
  for (const auto& v : r.zhat) r.grad_norms.push_back(norm_grad(grid, std::span<const cplx>(v)));
  const double d2 = block_l2_sq(grid, apply_d(r.zhat, span, spec.epsilon, s));
  r.d_norm = std::sqrt(d2);
  r.lhs = d2 + block_grad_sq(grid, r.zhat);
  const double fn = norm_l2(grid, fhat);
  r.bound = 4.0 / (s.real() * s.real()) * fn * fn;
  r.bound_ok = r.lhs <= r.bound * (1.0 + 1e-10);
  return r;
}

DecayReport decay_diagnostic(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             cplx s, std::span<const cplx> fhat) {
  const auto sol = laplace_solve(grid, spec, cfg, s, fhat);
  DecayReport rep;
  rep.s = s;
  rep.admissible = sol.admissible;
  const double re = s.real();
  const double base = 2.0 * cfg.K * spec.rho / (spec.epsilon * re) + 2.0 * spec.rho * std::abs(s) / re;
  const double lead = 2.0 / re * norm_l2(grid, fhat);
  const int span = cfg.span();
  for (int k = 0; k <= span; ++k) {
    DecayRow row;
    row.k = k;
    row.norm = std::max(sol.grad_norms[static_cast<std::size_t>(span + k)],
                        sol.grad_norms[static_cast<std::size_t>(span - k)]);
    row.bound = std::pow(base, k) * lead;
    row.ok = row.norm <= row.bound * (1.0 + 1e-10);
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<SuiteResult> resolvent_suite(const Grid1D& grid, std::size_t samples,
                                         std::uint64_t seed, const SampleBox& box) {
  std::mt19937_64 gen(seed);
  const auto A = laplacian(grid);
  std::vector<SuiteResult> out(5);
  out[0].name = "resolvent L2<-L2";
  out[1].name = "resolvent H1<-L2";
  out[2].name = "resolvent-laplacian H1<-H1";
  out[3].name = "resolvent-laplacian L2<-H1";
  out[4].name = "resolvent-laplacian L2<-L2";
  for (std::size_t q = 0; q < samples; ++q) {
    const cplx s = random_s(gen, box);
    const auto g = random_vec(gen, grid.m);
    const double re = s.real(), as = std::abs(s);
    const double g0 = norm_l2(grid, std::span<const cplx>(g));
    const double g1 = norm_grad(grid, std::span<const cplx>(g));

    const auto w = helmholtz_apply(grid, s, g);
    record(out[0], norm_l2(grid, std::span<const cplx>(w)), g0 / (as * re));
    record(out[1], norm_grad(grid, std::span<const cplx>(w)), g0 / (std::sqrt(2.0) * re));

    CplxVec Ag(grid.m);
    A.apply<cplx>(g, Ag);
    const auto v = helmholtz_apply(grid, s, Ag);
    record(out[2], norm_grad(grid, std::span<const cplx>(v)), as / re * g1);
    record(out[3], norm_l2(grid, std::span<const cplx>(v)), g1 / (std::sqrt(2.0) * re));
    record(out[4], norm_l2(grid, std::span<const cplx>(v)), as / re * g0);
  }
  return out;
}

SuiteResult coercivity_suite(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             std::size_t samples, std::uint64_t seed, SampleBox box) {
  validate_mfe_config(cfg, spec);
  box.re_min = std::max(box.re_min, well_posedness_threshold(spec));
  if (box.re_max <= box.re_min) box.re_max = 2.0 * box.re_min + 1.0;
  std::mt19937_64 gen(seed);
  const int span = cfg.span();
  const CouplingOperator T(grid, spec, span);
  SuiteResult r;
  r.name = "coercivity";
  std::vector<CplxVec> z(static_cast<std::size_t>(cfg.harmonics())), Tz;
  for (std::size_t q = 0; q < samples; ++q) {
    const cplx s = random_s(gen, box);
    for (auto& v : z) v = random_vec(gen, grid.m);
    const auto Dz = apply_d(z, span, spec.epsilon, s);
    const auto DDz = apply_d(Dz, span, spec.epsilon, s);
    T.apply(z, Tz);
    double form = 0.0;
    for (std::size_t kk = 0; kk < z.size(); ++kk) {
      CplxVec rhs(grid.m);
      for (std::size_t i = 0; i < grid.m; ++i) rhs[i] = DDz[kk][i] + Tz[kk][i];
      form += inner(grid, Dz[kk], rhs).real();
    }
    const double lower = 0.5 * s.real() * (block_l2_sq(grid, Dz) + block_grad_sq(grid, z));
    // lhs/rhs oriented so that failures mean lower > form
    record(r, lower, form);
  }
  return r;
}

SuiteResult well_posedness_suite(const Grid1D& grid, const ModulationSpec& spec,
                                 const MfeConfig& cfg, std::size_t samples, std::uint64_t seed,
                                 SampleBox box) {
  box.re_min = std::max(box.re_min, well_posedness_threshold(spec));
  if (box.re_max <= box.re_min) box.re_max = 2.0 * box.re_min + 1.0;
  std::mt19937_64 gen(seed);
  SuiteResult r;
  r.name = "well-posedness";
  for (std::size_t q = 0; q < samples; ++q) {
    const cplx s = random_s(gen, box);
    const auto f = random_vec(gen, grid.m);
    const auto sol = laplace_solve(grid, spec, cfg, s, f);
    record(r, sol.lhs, sol.bound);
  }
  return r;
}

double neumann_defect(const Grid1D& grid, double epsilon, double rho, cplx s,
                      std::span<const cplx> fhat) {
  const auto spec = cosine_modulation(epsilon, rho);
  const auto sol = laplace_solve(grid, spec, MfeConfig{1, 1}, s, fhat);
  const auto A = laplacian(grid);
  const auto r0 = helmholtz_apply(grid, s, fhat);
  CplxVec Ar0(grid.m);
  A.apply<cplx>(r0, Ar0);
  double worst = 0.0;
  for (int k : {-1, 1}) {
    auto approx = helmholtz_apply(grid, s + cplx(0.0, k / epsilon), Ar0);
    const auto& z = sol.zhat[static_cast<std::size_t>(k + 1)];
    CplxVec e(grid.m);
    for (std::size_t i = 0; i < grid.m; ++i) e[i] = z[i] + rho * approx[i];
    worst = std::max(worst, norm_l2(grid, std::span<const cplx>(e)));
  }
  return worst;
}

double conjugation_defect(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                          cplx s, std::span<const cplx> fhat) {
  CplxVec fc(fhat.begin(), fhat.end());
  for (auto& x : fc) x = std::conj(x);
  const auto a = laplace_solve(grid, spec, cfg, s, fhat);
  const auto b = laplace_solve(grid, spec, cfg, std::conj(s), fc);
  const std::size_t nk = a.zhat.size();
  double top = 0.0, defect = 0.0;
  for (std::size_t kk = 0; kk < nk; ++kk) {
    CplxVec e(grid.m);
    for (std::size_t i = 0; i < grid.m; ++i) e[i] = b.zhat[kk][i] - std::conj(a.zhat[nk - 1 - kk][i]);
    defect = std::max(defect, norm_l2(grid, std::span<const cplx>(e)));
    top = std::max(top, norm_l2(grid, std::span<const cplx>(a.zhat[kk])));
  }
  return top > 0.0 ? defect / top : 0.0;
}

}  // namespace mfewave
