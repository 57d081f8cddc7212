#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfewave/modulation.hpp"

namespace mfewave {

inline constexpr const char* kVersion = "1.0.0";

/// Raised for malformed or inconsistent configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { convergence, decay, energy, visualize, laplace_diag };

const char* to_string(Experiment e);
/// Throws ConfigError for unknown names.
Experiment experiment_from_string(const std::string& name);

struct ExperimentConfig {
  Experiment experiment = Experiment::convergence;

  std::size_t grid_m = 1000;
  double grid_a = 0.0;
  double grid_b = 1.0;

  double epsilon = 0.04;
  double rho = 0.4;
  std::string mu0 = "constant:1";
  std::vector<std::string> muhat{"constant:1"};

  SourceKind source_kind = SourceKind::smooth_balanced;
  double source_t0 = 1.0;

  int mfe_K = 3;

  double time_T = 5.0;
  std::optional<std::size_t> time_N;
  std::optional<double> time_tau;
  std::size_t reference_N = 16384;

  std::vector<std::size_t> sweep_N;
  std::vector<double> sweep_epsilon;
  std::vector<double> sweep_rho;
  std::vector<int> sweep_K;

  /// Source-off time for the post-source energy change.
  double energy_t_off = 3.0;

  std::vector<cplx> laplace_s;
  std::size_t laplace_samples = 100;
  std::uint64_t laplace_seed = 1;

  std::string output_dir = ".";
  bool emit_svg = false;
  int workers = 1;

  /// Number of time steps, from time.N or T / time.tau.
  std::size_t steps() const;
  double tau() const { return time_T / static_cast<double>(steps()); }
};

/// Defaults of one experiment.
ExperimentConfig default_config(Experiment e);

/// Parses `key = value` lines (`#` comments, blank lines ignored) into a map;
/// later keys override earlier ones. Throws ConfigError.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies entries to cfg. Throws ConfigError for unknown keys or bad values.
void apply_entries(ExperimentConfig& cfg, const std::map<std::string, std::string>& entries);

/// defaults(e) + file entries + overrides, validated.
ExperimentConfig resolve_config(Experiment e, const std::map<std::string, std::string>& file,
                                const std::map<std::string, std::string>& overrides);

/// Throws ConfigError on inconsistent settings.
void validate_config(const ExperimentConfig& cfg);

/// Every key with its resolved value, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// Model objects built from the configuration (throws ConfigError).
Grid1D config_grid(const ExperimentConfig& cfg);
ModulationSpec config_modulation(const ExperimentConfig& cfg, double epsilon, double rho);
SourceSpec config_source(const ExperimentConfig& cfg);

std::string format_double(double v);
std::string format_complex(cplx v);
/// "a", "a+bi", "a-bi", "bi". Throws ConfigError.
cplx parse_complex(const std::string& text);

}  // namespace mfewave
