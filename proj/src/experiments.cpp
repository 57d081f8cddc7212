#include "mfewave/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace mfewave {

const Table& ExperimentResult::table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return t;
  throw std::out_of_range("no table '" + name + "'");
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) return std::nan("");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

double fitted_ratio(const std::vector<double>& norms) {
  std::vector<double> k, v;
  for (std::size_t i = 0; i < norms.size(); ++i)
    if (norms[i] > 0.0) {
      k.push_back(static_cast<double>(i));
      v.push_back(std::log(norms[i]));
    }
  if (k.size() < 2) return 0.0;
  const double n = static_cast<double>(k.size());
  double mk = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) mk += k[i], mv += v[i];
  mk /= n;
  mv /= n;
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    a += (k[i] - mk) * (v[i] - mv);
    b += (k[i] - mk) * (k[i] - mk);
  }
  return std::exp(a / b);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for num_threads(std::max(workers, 1)) schedule(dynamic) if (workers > 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void ErrAccumulator::add(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = a[i] - b[i];
    s += e * e;
  }
  sum += h * s;
  ++samples;
}

double invariant_scale(const MfeState& s, const Grid1D& grid, double invariant, double epsilon) {
  double kinetic = 0.0, shifted = 0.0;
  for (int k = -s.span; k <= s.span; ++k) {
    const double wn = norm_l2(grid, std::span<const cplx>(s.wk(k)));
    const double zn = norm_l2(grid, std::span<const cplx>(s.zk(k)));
    kinetic += wn * wn;
    shifted += static_cast<double>(k * k) / (epsilon * epsilon) * zn * zn;
  }
  const double coupling = invariant - kinetic + shifted;
  return std::max(kinetic + shifted + std::abs(coupling), std::abs(invariant));
}

MfeState invariant_initial_state(const Grid1D& grid, int span) {
  MfeState s(span, grid.m);
  for (std::size_t i = 0; i < grid.m; ++i) {
    const double x = grid.nodes[i];
    const double d0 = (x - 0.5) / 0.1, d1 = (x - 0.4) / 0.1;
    s.zk(0)[i] = std::exp(-d0 * d0);
    if (span >= 1) {
      s.zk(1)[i] = cplx(0.05, 0.1) * std::exp(-d1 * d1);
      s.zk(-1)[i] = std::conj(s.zk(1)[i]);
    }
  }
  return s;
}

namespace {

/// Maps library exceptions of the numerics onto NumericalFailure.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const ResonanceError& e) {
    std::ostringstream os;
    os << e.what() << " [s = " << format_complex(e.s()) << "]";
    throw NumericalFailure(os.str());
  } catch (const ModulationPositivityError& e) {
    throw NumericalFailure(std::string(e.what()) + " [t = " + format_double(e.time()) + "]");
  } catch (const SingularMatrixError& e) {
    throw NumericalFailure(std::string(e.what()) + " [row " + std::to_string(e.row()) + "]");
  }
}

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericalFailure(what + " is not finite");
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

CplxVec smooth_profile(const Grid1D& grid) {
  CplxVec f(grid.m);
  for (std::size_t i = 0; i < grid.m; ++i) {
    const double d = grid.nodes[i] - 0.5;
    f[i] = std::exp(-100.0 * d * d);
  }
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentResult run_convergence(const ExperimentConfig& cfg) {
  return guarded([&] {
    const auto grid = config_grid(cfg);
    const auto spec = config_modulation(cfg, cfg.epsilon, cfg.rho);
    const auto src = config_source(cfg);
    const MfeConfig mcfg{cfg.mfe_K, spec.J()};
    const double T = cfg.time_T;
    const std::size_t max_n = *std::max_element(cfg.sweep_N.begin(), cfg.sweep_N.end());
    if (cfg.reference_N % max_n != 0)
      throw ConfigError("the largest swept N must divide reference.N");
    const std::size_t ref_stride = cfg.reference_N / max_n;

    // reference fields on the finest swept grid; coarser grids are subsets
    std::vector<RealVec> ref;
    ref.reserve(max_n + 1);
    mfe_march(grid, spec, src, mcfg, T / static_cast<double>(cfg.reference_N), cfg.reference_N,
              [&](std::size_t n, const MfeState& s) {
                if (n % ref_stride == 0) ref.push_back(reconstruct(s, spec).u);
              });

    const std::size_t P = cfg.sweep_N.size();
    std::vector<ErrAccumulator> err_direct(P), err_mfe(P);
    parallel_for(P, cfg.workers, [&](std::size_t p) {
      const std::size_t N = cfg.sweep_N[p];
      if (max_n % N != 0) throw ConfigError("every swept N must divide the largest swept N");
      const std::size_t r = max_n / N;
      const double tau = T / static_cast<double>(N);
      err_direct[p].h = err_mfe[p].h = grid.h;
      mfe_march(grid, spec, src, mcfg, tau, N, [&](std::size_t n, const MfeState& s) {
        err_mfe[p].add(reconstruct(s, spec).u, ref[n * r]);
      });
      direct_march(grid, spec, src, tau, N, [&](std::size_t n, const WaveState& s) {
        err_direct[p].add(s.u, ref[n * r]);
      });
    });

    ExperimentResult res;
    Table t{"err", {"N", "tau", "err_direct", "err_mfe", "err_direct_rms", "err_mfe_rms"}, {}};
    std::vector<double> taus, ed, em;
    for (std::size_t p = 0; p < P; ++p) {
      const std::size_t N = cfg.sweep_N[p];
      const double tau = T / static_cast<double>(N);
      require_finite(err_mfe[p].err(), "MFE error");
      t.add_row({cell(N), cell(tau), cell(err_direct[p].err()), cell(err_mfe[p].err()),
                 cell(err_direct[p].rms()), cell(err_mfe[p].rms())});
      taus.push_back(tau);
      ed.push_back(err_direct[p].rms());
      em.push_back(err_mfe[p].rms());
    }
    res.tables.push_back(std::move(t));
    res.notes.emplace_back("err", "err_* = (sum_n h sum_i e_ni^2)^(1/2) over the run's own time grid");
    res.notes.emplace_back("err", "err_*_rms = err_* / sqrt(N+1), added for comparisons across tau");
    res.summary.push_back("fitted order (rms) MFE " + fixed(loglog_slope(taus, em)) + ", direct " +
                          fixed(loglog_slope(taus, ed)));

    if (!cfg.sweep_K.empty()) {
      // remainder of the truncated expansion against a fine direct solve
      const std::size_t N = cfg.reference_N;
      const double tau = T / static_cast<double>(N);
      const std::size_t out = std::max<std::size_t>(1, N / 256);
      const auto direct = direct_solve(grid, spec, src, tau, N, out);
      Table rt{"remainder", {"K", "remainder"}, {}};
      std::vector<double> rem(cfg.sweep_K.size());
      parallel_for(cfg.sweep_K.size(), cfg.workers, [&](std::size_t q) {
        MfeOptions o;
        o.stride = out;
        const auto traj = mfe_solve(grid, spec, src, MfeConfig{cfg.sweep_K[q], spec.J()}, tau, N, o);
        rem[q] = remainder_norm(traj, direct, spec, grid);
      });
      for (std::size_t q = 0; q < rem.size(); ++q) rt.add_row({cell(cfg.sweep_K[q]), cell(rem[q])});
      res.tables.push_back(std::move(rt));
    }

    if (cfg.emit_svg) {
      LinePlot plot{"ERR against step size", "tau", "ERR / sqrt(N+1)", true, true,
                    {{"direct", taus, ed}, {"MFE", taus, em}}};
      res.figures.emplace_back("err", render_svg(plot));
    }
    return res;
  });
}

// ---------------------------------------------------------------------------

ExperimentResult run_decay(const ExperimentConfig& cfg) {
  return guarded([&] {
    const auto grid = config_grid(cfg);
    const auto src = config_source(cfg);
    const std::size_t N = cfg.steps();
    const double tau = cfg.tau();
    struct Point {
      double eps, rho;
      RealVec norms;
    };
    std::vector<Point> pts;
    for (double e : cfg.sweep_epsilon)
      for (double r : cfg.sweep_rho) pts.push_back({e, r, {}});
    parallel_for(pts.size(), cfg.workers, [&](std::size_t p) {
      const auto spec = config_modulation(cfg, pts[p].eps, pts[p].rho);
      const MfeConfig mcfg{cfg.mfe_K, spec.J()};
      CoefficientNorms acc(grid, mcfg.span());
      mfe_march(grid, spec, src, mcfg, tau, N, [&](std::size_t, const MfeState& s) { acc.add(s); });
      pts[p].norms = acc.norms();
    });

    ExperimentResult res;
    Table t{"norms", {"epsilon", "rho", "k", "norm", "reference"}, {}};
    LinePlot plot{"Space-time norms of the coefficients", "k", "norm", false, true, {}};
    for (const auto& pt : pts) {
      Series se{"eps=" + format_double(pt.eps) + " rho=" + format_double(pt.rho), {}, {}};
      for (std::size_t k = 0; k < pt.norms.size(); ++k) {
        require_finite(pt.norms[k], "coefficient norm");
        const double ref = pt.norms[0] * std::pow(pt.rho * pt.eps, static_cast<double>(k));
        t.add_row({cell(pt.eps), cell(pt.rho), cell(k), cell(pt.norms[k]), cell(ref)});
        se.x.push_back(static_cast<double>(k));
        se.y.push_back(pt.norms[k]);
      }
      res.summary.push_back("eps " + format_double(pt.eps) + " rho " + format_double(pt.rho) +
                            ": fitted ratio " + fixed(fitted_ratio(pt.norms)) + " (rho*eps " +
                            fixed(pt.rho * pt.eps) + ")");
      plot.series.push_back(std::move(se));
    }
    res.tables.push_back(std::move(t));
    res.notes.emplace_back("norms", "norm = (sum_n h sum_i |z_k|^2)^(1/2); reference = norm_0 (rho eps)^k");
    if (cfg.emit_svg) res.figures.emplace_back("norms", render_svg(plot));
    return res;
  });
}

// ---------------------------------------------------------------------------

ExperimentResult run_energy(const ExperimentConfig& cfg) {
  return guarded([&] {
    const auto grid = config_grid(cfg);
    const auto src = config_source(cfg);
    const auto spec = config_modulation(cfg, cfg.epsilon, cfg.rho);
    const MfeConfig mcfg{cfg.mfe_K, spec.J()};
    const std::size_t N = cfg.steps();
    const double tau = cfg.tau();
    ExperimentResult res;

    // energy and invariant time series at the configured rho
    {
      RealVec energy(N + 1), invariant(N + 1);
      const CouplingOperator T(grid, spec, mcfg.span());
      direct_march(grid, spec, src, tau, N, [&](std::size_t n, const WaveState& s) {
        energy[n] = energy_of(s, spec, grid);
      });
      mfe_march(grid, spec, src, mcfg, tau, N, [&](std::size_t n, const MfeState& s) {
        invariant[n] = mfe_invariant(s, grid, T, spec.epsilon);
      });
      Table t{"series", {"t", "energy_direct", "invariant_mfe"}, {}};
      for (std::size_t n = 0; n <= N; ++n)
        t.add_row({cell(static_cast<double>(n) * tau), cell(energy[n]), cell(invariant[n])});
      res.tables.push_back(std::move(t));
      if (cfg.emit_svg) {
        Series se{"energy (direct)", {}, energy};
        for (std::size_t n = 0; n <= N; ++n) se.x.push_back(static_cast<double>(n) * tau);
        res.figures.emplace_back(
            "series", render_svg(LinePlot{"Energy of the direct solution", "t", "E", false, false,
                                          {se}}));
      }
    }

    // post-source energy change over the rho sweep
    {
      const auto off = static_cast<std::size_t>(std::llround(cfg.energy_t_off / tau));
      const std::size_t R = cfg.sweep_rho.size();
      RealVec c_mu(R), e_off(R), e_end(R);
      parallel_for(R, cfg.workers, [&](std::size_t q) {
        const auto sp = config_modulation(cfg, cfg.epsilon, cfg.sweep_rho[q]);
        c_mu[q] = energy_growth_constant(sp, grid);
        direct_march(grid, sp, src, tau, N, [&](std::size_t n, const WaveState& s) {
          if (n == off) e_off[q] = energy_of(s, sp, grid);
          if (n == N) e_end[q] = energy_of(s, sp, grid);
        });
      });
      Table t{"rho_sweep",
              {"rho", "c_mu_prime", "energy_t_off", "energy_T", "change", "relative_change"},
              {}};
      for (std::size_t q = 0; q < R; ++q) {
        const double change = std::abs(e_end[q] - e_off[q]);
        require_finite(change, "energy change");
        t.add_row({cell(cfg.sweep_rho[q]), cell(c_mu[q]), cell(e_off[q]), cell(e_end[q]),
                   cell(change), cell(e_off[q] > 0.0 ? change / e_off[q] : 0.0)});
      }
      res.tables.push_back(std::move(t));
      res.notes.emplace_back("rho_sweep", "change = |E(T) - E(t_off)| of the direct solution");
      res.notes.emplace_back("rho_sweep", "t_off = " + format_double(static_cast<double>(off) * tau));
    }

    // step-size sweep: energy-identity residual and invariant drift
    {
      const std::size_t P = cfg.sweep_N.size();
      RealVec residual(P), drift(P), scaled(P);
      SourceSpec none;
      none.kind = SourceKind::zero;
      parallel_for(P, cfg.workers, [&](std::size_t p) {
        const std::size_t n_steps = cfg.sweep_N[p];
        const double h_t = cfg.time_T / static_cast<double>(n_steps);
        const auto traj = direct_solve(grid, spec, src, h_t, n_steps, 1);
        residual[p] = energy_identity_residual(traj, spec, src, grid);
        const CouplingOperator T(grid, spec, mcfg.span());
        double e0 = 0.0, worst = 0.0, worst_scaled = 0.0;
        mfe_march_from(grid, spec, none, mcfg, h_t, n_steps,
                       invariant_initial_state(grid, mcfg.span()),
                       [&](std::size_t n, const MfeState& s) {
                         const double e = mfe_invariant(s, grid, T, spec.epsilon);
                         if (n == 0) e0 = e;
                         worst = std::max(worst, std::abs(e - e0));
                         worst_scaled = std::max(worst_scaled, std::abs(e - e0) / invariant_scale(s, grid, e, spec.epsilon));
                       });
        drift[p] = e0 != 0.0 ? worst / std::abs(e0) : worst;
        scaled[p] = worst_scaled;
      });
      Table t{"tau_sweep", {"N", "tau", "identity_residual", "invariant_drift", "invariant_drift_scaled"}, {}};
      for (std::size_t p = 0; p < P; ++p)
        t.add_row({cell(cfg.sweep_N[p]), cell(cfg.time_T / static_cast<double>(cfg.sweep_N[p])),
                   cell(residual[p]), cell(drift[p]), cell(scaled[p])});
      res.tables.push_back(std::move(t));
      res.notes.emplace_back("tau_sweep",
                             "identity_residual = max_n |E_n - E_0 - Q_n| with Q_n the trapezoidal "
                             "quadrature of (v,f) + 1/2 dmu/dt |grad u|^2");
      res.notes.emplace_back("tau_sweep",
                             "invariant_drift = max_n |I_n - I_0| / |I_0| of the coupled system, f = 0");
      res.notes.emplace_back("tau_sweep",
                             "invariant_drift_scaled = max_n |I_n - I_0| / S_n, S_n = sum_k ||w_k||^2 + "
                             "k^2/eps^2 ||z_k||^2 + |Re <z, T z>| (round-off scale of the indefinite form)");
    }
    return res;
  });
}

// ---------------------------------------------------------------------------

ExperimentResult run_visualize(const ExperimentConfig& cfg) {
  return guarded([&] {
    const auto grid = config_grid(cfg);
    const auto src = config_source(cfg);
    const auto spec = config_modulation(cfg, cfg.epsilon, cfg.rho);
    const MfeConfig mcfg{cfg.mfe_K, spec.J()};
    const std::size_t N = cfg.steps();
    const double tau = cfg.tau();
    const std::size_t m = grid.m;
    const std::size_t cols = N + 1;
    const auto nk = static_cast<std::size_t>(mcfg.span() + 1);
    std::vector<double> u(m * cols);
    std::vector<std::vector<double>> z(nk, std::vector<double>(m * cols));
    mfe_march(grid, spec, src, mcfg, tau, N, [&](std::size_t n, const MfeState& s) {
      const auto r = reconstruct(s, spec);
      for (std::size_t i = 0; i < m; ++i) u[i * cols + n] = r.u[i];
      for (std::size_t k = 0; k < nk; ++k) {
        const auto& zk = s.zk(static_cast<int>(k));
        for (std::size_t i = 0; i < m; ++i) z[k][i * cols + n] = std::abs(zk[i]);
      }
    });

    std::vector<std::string> columns{"x"};
    for (std::size_t n = 0; n < cols; ++n) columns.push_back("t=" + cell(static_cast<double>(n) * tau));
    auto matrix_table = [&](const std::string& name, const std::vector<double>& v) {
      Table t{name, columns, {}};
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::string> row{cell(grid.nodes[i])};
        for (std::size_t n = 0; n < cols; ++n) row.push_back(cell(v[i * cols + n]));
        t.add_row(std::move(row));
      }
      return t;
    };
    ExperimentResult res;
    res.tables.push_back(matrix_table("u", u));
    for (std::size_t k = 0; k < nk; ++k) res.tables.push_back(matrix_table("abs_z" + std::to_string(k), z[k]));
    res.notes.emplace_back("u", "rows: spatial nodes, columns: time steps");

    if (cfg.emit_svg) {
      auto heat = [&](const std::string& title, const std::vector<double>& v) {
        // transpose: time along y, space along x
        Heatmap h{title, "x", "t", cols, m, std::vector<double>(m * cols), grid.a, grid.b, 0.0,
                  cfg.time_T};
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t n = 0; n < cols; ++n) h.values[n * m + i] = v[i * cols + n];
        return render_svg(h);
      };
      res.figures.emplace_back("u", heat("Reconstructed solution u(x,t)", u));
      for (std::size_t k = 0; k < nk; ++k)
        res.figures.emplace_back("abs_z" + std::to_string(k),
                                 heat("|z_" + std::to_string(k) + "(x,t)|", z[k]));
    }
    return res;
  });
}

// ---------------------------------------------------------------------------

ExperimentResult run_laplace_diag(const ExperimentConfig& cfg) {
  return guarded([&] {
    const auto grid = config_grid(cfg);
    const auto spec = config_modulation(cfg, cfg.epsilon, cfg.rho);
    const MfeConfig mcfg{cfg.mfe_K, spec.J()};
    const auto fhat = smooth_profile(grid);
    ExperimentResult res;

    const std::size_t S = cfg.laplace_s.size();
    std::vector<LaplaceSolveResult> sols(S);
    std::vector<DecayReport> decays(S);
    parallel_for(S, cfg.workers, [&](std::size_t q) {
      sols[q] = laplace_solve(grid, spec, mcfg, cfg.laplace_s[q], fhat);
      decays[q] = decay_diagnostic(grid, spec, mcfg, cfg.laplace_s[q], fhat);
    });
    Table wp{"well_posedness", {"s_re", "s_im", "admissible", "lhs", "bound", "status"}, {}};
    Table dc{"decay", {"s_re", "s_im", "admissible", "k", "norm", "bound", "status"}, {}};
    for (std::size_t q = 0; q < S; ++q) {
      const cplx s = cfg.laplace_s[q];
      wp.add_row({cell(s.real()), cell(s.imag()), cell(static_cast<int>(sols[q].admissible)),
                  cell(sols[q].lhs), cell(sols[q].bound), cell(sols[q].bound_ok)});
      for (const auto& row : decays[q].rows)
        dc.add_row({cell(s.real()), cell(s.imag()), cell(static_cast<int>(decays[q].admissible)),
                    cell(row.k), cell(row.norm), cell(row.bound), cell(row.ok)});
    }
    res.tables.push_back(std::move(wp));
    res.tables.push_back(std::move(dc));
    res.notes.emplace_back("well_posedness", "lhs = ||D_K(s) z||^2 + ||grad z||^2, bound = 4/(Re s)^2 ||f||^2");
    res.notes.emplace_back("decay", "norm = ||grad z_k||, bound = (2K rho/(eps Re s) + 2 rho |s|/Re s)^k 2/Re s ||f||");

    std::vector<SuiteResult> suites = resolvent_suite(grid, cfg.laplace_samples, cfg.laplace_seed);
    suites.push_back(coercivity_suite(grid, spec, mcfg, cfg.laplace_samples, cfg.laplace_seed + 1));
    suites.push_back(well_posedness_suite(grid, spec, mcfg, cfg.laplace_samples, cfg.laplace_seed + 2));
    Table st{"suites", {"suite", "samples", "failures", "worst_ratio", "status"}, {}};
    for (const auto& s : suites) {
      st.add_row({s.name, cell(s.samples), cell(s.failures), cell(s.worst_ratio), cell(s.passed())});
      res.summary.push_back(s.name + ": " + (s.passed() ? "pass" : "FAIL") + " (" +
                            std::to_string(s.failures) + "/" + std::to_string(s.samples) +
                            " failures, worst ratio " + fixed(s.worst_ratio) + ")");
    }
    res.tables.push_back(std::move(st));
    res.notes.emplace_back("suites", "worst_ratio = max lhs/rhs of the checked inequality");

    Table nt{"neumann", {"s_re", "s_im", "rho", "defect"}, {}};
    const std::vector<double> rhos =
        cfg.sweep_rho.empty() ? std::vector<double>{0.1, 0.05, 0.025} : cfg.sweep_rho;
    for (const cplx s : cfg.laplace_s)
      for (double r : rhos)
        nt.add_row({cell(s.real()), cell(s.imag()), cell(r), cell(neumann_defect(grid, cfg.epsilon, r, s, fhat))});
    res.tables.push_back(std::move(nt));
    res.notes.emplace_back("neumann", "defect = max_{k=+-1} ||z_k - rho R(s+ik/eps) Delta R(s) f|| for K = 1");
    return res;
  });
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::convergence: return run_convergence(cfg);
    case Experiment::decay: return run_decay(cfg);
    case Experiment::energy: return run_energy(cfg);
    case Experiment::visualize: return run_visualize(cfg);
    case Experiment::laplace_diag: return run_laplace_diag(cfg);
  }
  throw ConfigError("unknown experiment");
}

HeaderEntries table_header(const ExperimentConfig& cfg, const ExperimentResult& result,
                           const Table& table) {
  HeaderEntries h{{"mfewave", kVersion}};
  for (auto& e : config_entries(cfg)) h.push_back(e);
  h.emplace_back("table", table.name);
  for (const auto& [name, note] : result.notes)
    if (name == table.name) h.emplace_back("note", note);
  return h;
}

std::vector<std::string> write_result(const ExperimentConfig& cfg, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + cfg.output_dir + "'");
  const std::string stem = std::string(to_string(cfg.experiment));
  std::vector<std::string> paths;
  for (const auto& t : result.tables) {
    const auto path = (fs::path(cfg.output_dir) / (stem + "_" + t.name + ".csv")).string();
    write_csv(path, table_header(cfg, result, t), t);
    paths.push_back(path);
  }
  if (cfg.emit_svg)
    for (const auto& [name, svg] : result.figures) {
      const auto path = (fs::path(cfg.output_dir) / (stem + "_" + name + ".svg")).string();
      write_text(path, svg);
      paths.push_back(path);
    }
  return paths;
}

}  // namespace mfewave
