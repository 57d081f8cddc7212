#pragma once

#include <string>
#include <vector>

#include "mfewave/spatial.hpp"

namespace mfewave {

/// A named spatial coefficient profile. The textual form round-trips through
/// configuration files:
///   constant:c
///   affine:a0,a1                      a0 + a1*x
///   bump:base,amp,center,width        base + amp*exp(-((x-center)/width)^2)
///   table:v0,v1,...,vn                piecewise linear on n+1 uniform points of [a,b]
struct Profile {
  std::string text;
  Coefficient fn;

  double operator()(double x) const { return fn(x); }

  static Profile constant(double c);
  /// Throws std::invalid_argument on malformed text.
  static Profile parse(const std::string& text, double a = 0.0, double b = 1.0);
};

/// mu(x, t) = mu0(x) + 2 rho sum_{j=1..J} muhat_j(x) cos(j t / epsilon).
struct ModulationSpec {
  double epsilon = 0.04;
  double rho = 0.4;
  Profile mu0 = Profile::constant(1.0);
  std::vector<Profile> muhat{Profile::constant(1.0)};
  /// Bounds on mu0; filled by validate_modulation when left at zero.
  double c_mu = 0.0;
  double C_mu = 0.0;

  int J() const noexcept { return static_cast<int>(muhat.size()); }
};

/// mu = 1 + 2 rho cos(t/epsilon).
ModulationSpec cosine_modulation(double epsilon, double rho);

/// Checks epsilon > 0, rho >= 0, J >= 1 and c_mu <= mu0 <= C_mu with c_mu > 0 at
/// nodes and half nodes. Missing bounds are filled from the samples.
/// Throws std::invalid_argument.
void validate_modulation(ModulationSpec& spec, const Grid1D& grid);

/// mu(x,t) for deriv = 0, d mu/dt for deriv = 1.
double modulation_eval(const ModulationSpec& spec, double x, double t, int deriv = 0);

/// Smallest sampled value of mu(x,t) over the half nodes and one period.
double modulation_min(const ModulationSpec& spec, const Grid1D& grid, std::size_t samples = 512);

/// Growth constant of the energy estimate,
///   C = 1/(pi eps) * int_0^{2pi} max_x (d_theta mu)_+ / mu dtheta,
/// by composite midpoint rule with `intervals` subintervals.
double energy_growth_constant(const ModulationSpec& spec, const Grid1D& grid,
                              std::size_t intervals = 10000);

enum class SourceKind { smooth_balanced, low_regularity_step, zero, custom };

const char* to_string(SourceKind kind);
/// Throws std::invalid_argument for unknown names (custom is API-only).
SourceKind source_kind_from_string(const std::string& name);

struct SourceSpec {
  SourceKind kind = SourceKind::smooth_balanced;
  double t0 = 1.0;
  double spatial_width = 100.0;
  double center = 0.5;
  double temporal_width = 10.0;
  double offset = 0.1;
  /// Whether the spatial support is taken as interior (decay diagnostics only).
  bool interior_support = true;
  std::function<double(double, double)> custom;
};

double source_eval(const SourceSpec& src, double x, double t);

/// f(., t) at the interior nodes.
RealVec sample_source(const SourceSpec& src, const Grid1D& grid, double t);

/// Discrete source sequence used by every time integrator: f(., n tau) for
/// n >= 1 and exactly zero for n = 0 (the data are assumed to vanish initially).
RealVec source_step(const SourceSpec& src, const Grid1D& grid, double tau, std::size_t n);

/// Time after which |f| stays below `threshold` (smooth_balanced and
/// low_regularity_step); 0 for the zero source.
double source_off_time(const SourceSpec& src, double threshold);

}  // namespace mfewave
