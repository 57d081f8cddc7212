// Serial reference vs OpenMP kernels: contour-point solves of cq_solve and
// the independent runs of a convergence sweep.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "mfewave/experiments.hpp"

using namespace mfewave;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

double max_diff(const MfeTrajectory& a, const MfeTrajectory& b) {
  double d = 0.0;
  for (std::size_t n = 0; n < a.states.size(); ++n)
    for (std::size_t k = 0; k < a.states[n].z.size(); ++k)
      for (std::size_t i = 0; i < a.states[n].z[k].size(); ++i)
        d = std::max(d, std::abs(a.states[n].z[k][i] - b.states[n].z[k][i]));
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t m = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 400;
  const std::size_t N = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 256;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
  const int threads = omp_get_max_threads();

  const auto grid = build_grid(m);
  const auto spec = cosine_modulation(0.04, 0.1);
  SourceSpec src;
  const MfeConfig cfg{3, 1};
  const double tau = 5.0 / static_cast<double>(N);

  std::printf("threads %d, m %zu, N %zu, best of %d\n", threads, m, N, reps);
  std::printf("%-24s %12s %12s %9s %12s\n", "kernel", "serial_s", "parallel_s", "speedup", "max_diff");

  MfeTrajectory serial, parallel;
  CqOptions so;
  so.parallel = false;
  so.growth_rate = 0.0;
  CqOptions po = so;
  po.parallel = true;
  const double ts = seconds([&] { serial = cq_solve(grid, spec, src, cfg, tau, N, so); }, reps);
  const double tp = seconds([&] { parallel = cq_solve(grid, spec, src, cfg, tau, N, po); }, reps);
  std::printf("%-24s %12.4f %12.4f %9.2f %12.3e\n", "cq_solve contour", ts, tp, ts / tp,
              max_diff(serial, parallel));

  auto ec = default_config(Experiment::convergence);
  ec.grid_m = m;
  ec.sweep_N = {32, 64, 128, 256};
  ec.reference_N = 1024;
  ec.rho = 0.1;
  std::string a, b;
  ec.workers = 1;
  const double ss = seconds([&] { a = render_csv({}, run_convergence(ec).table("err")); }, reps);
  ec.workers = threads;
  const double sp = seconds([&] { b = render_csv({}, run_convergence(ec).table("err")); }, reps);
  std::printf("%-24s %12.4f %12.4f %9.2f %12s\n", "convergence sweep", ss, sp, ss / sp,
              a == b ? "identical" : "DIFFERENT");
  return a == b ? 0 : 1;
}
