#pragma once

#include <cmath>
#include <exception>
#include <functional>

#include "mfewave/config.hpp"
#include "mfewave/cq.hpp"
#include "mfewave/laplace.hpp"
#include "mfewave/report.hpp"

namespace mfewave {

/// Raised for failures of the numerics (CLI exit code 2).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentResult {
  std::vector<Table> tables;
  /// Extra header lines per table name (notes on derived columns).
  std::vector<std::pair<std::string, std::string>> notes;
  /// (file stem, SVG document)
  std::vector<std::pair<std::string, std::string>> figures;
  /// Human-readable lines for the diagnostic stream.
  std::vector<std::string> summary;

  const Table& table(const std::string& name) const;
};

ExperimentResult run_convergence(const ExperimentConfig& cfg);
ExperimentResult run_decay(const ExperimentConfig& cfg);
ExperimentResult run_energy(const ExperimentConfig& cfg);
ExperimentResult run_visualize(const ExperimentConfig& cfg);
ExperimentResult run_laplace_diag(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Header block of a table: version, resolved configuration, table name, notes.
HeaderEntries table_header(const ExperimentConfig& cfg, const ExperimentResult& result,
                           const Table& table);

/// Writes <dir>/<experiment>_<table>.csv (and SVGs when enabled); returns the paths.
std::vector<std::string> write_result(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// exp of the least-squares slope of log(norm_k) against k over positive entries.
double fitted_ratio(const std::vector<double>& norms);

/// Runs body(i) for i in [0, n) on up to `workers` threads. Exceptions are
/// collected per index and the one with the smallest index is rethrown, so
/// failures are reported deterministically.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

/// ERR = (sum_n h sum_i e_{n,i}^2)^{1/2} of a run against a reference.
struct ErrAccumulator {
  double h = 0.0;
  double sum = 0.0;
  std::size_t samples = 0;

  void add(std::span<const double> a, std::span<const double> b);
  double err() const { return std::sqrt(sum); }
  /// ERR / sqrt(number of time samples).
  double rms() const { return samples ? std::sqrt(sum / static_cast<double>(samples)) : 0.0; }
};

/// Magnitude of the terms of the invariant at a state, the scale of its
/// round-off: sum_k ||w_k||^2 + k^2/eps^2 ||z_k||^2 + |Re <z, T z>|.
double invariant_scale(const MfeState& state, const Grid1D& grid, double invariant, double epsilon);

/// Deterministic initial data for the f = 0 invariant study: a real bump in
/// z_0 and a conjugate pair in z_{+-1}, zero velocities.
MfeState invariant_initial_state(const Grid1D& grid, int span);

}  // namespace mfewave
