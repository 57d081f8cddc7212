#include "mfewave/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mfewave {

namespace {

std::vector<double> parse_numbers(const std::string& list, const std::string& context) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("profile '" + context + "': bad number '" + item + "'");
    }
  }
  return out;
}

}  // namespace

Profile Profile::constant(double c) {
  std::ostringstream os;
  os.precision(17);
  os << "constant:" << c;
  return Profile{os.str(), [c](double) { return c; }};
}

Profile Profile::parse(const std::string& text, double a, double b) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("profile '" + text + "': expected <kind>:<values>");
  const std::string kind = text.substr(0, colon);
  const auto v = parse_numbers(text.substr(colon + 1), text);
  auto want = [&](std::size_t n) {
    if (v.size() != n)
      throw std::invalid_argument("profile '" + text + "': expected " + std::to_string(n) +
                                  " values");
  };
  if (kind == "constant") {
    want(1);
    const double c = v[0];
    return Profile{text, [c](double) { return c; }};
  }
  if (kind == "affine") {
    want(2);
    const double c0 = v[0], c1 = v[1];
    return Profile{text, [c0, c1](double x) { return c0 + c1 * x; }};
  }
  if (kind == "bump") {
    want(4);
    const double base = v[0], amp = v[1], mid = v[2], w = v[3];
    if (!(w > 0.0)) throw std::invalid_argument("profile '" + text + "': width must be positive");
    return Profile{text, [=](double x) {
                     const double r = (x - mid) / w;
                     return base + amp * std::exp(-r * r);
                   }};
  }
  if (kind == "table") {
    if (v.size() < 2) throw std::invalid_argument("profile '" + text + "': need >= 2 samples");
    const double step = (b - a) / static_cast<double>(v.size() - 1);
    return Profile{text, [v, a, step](double x) {
                     const double r = std::clamp((x - a) / step, 0.0,
                                                 static_cast<double>(v.size() - 1));
                     const auto i = std::min(static_cast<std::size_t>(r), v.size() - 2);
                     const double w = r - static_cast<double>(i);
                     return (1.0 - w) * v[i] + w * v[i + 1];
                   }};
  }
  throw std::invalid_argument("profile '" + text + "': unknown kind '" + kind + "'");
}

ModulationSpec cosine_modulation(double epsilon, double rho) {
  ModulationSpec s;
  s.epsilon = epsilon;
  s.rho = rho;
  return s;
}

void validate_modulation(ModulationSpec& spec, const Grid1D& grid) {
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("modulation: epsilon must be positive");
  if (!(spec.rho >= 0.0)) throw std::invalid_argument("modulation: rho must be non-negative");
  if (spec.muhat.empty()) throw std::invalid_argument("modulation: J must be at least 1");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto visit = [&](double x) {
    const double v = spec.mu0(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (double x : grid.nodes) visit(x);
  for (std::size_t i = 0; i <= grid.m; ++i) visit(grid.half_node(i));
  if (spec.c_mu == 0.0) spec.c_mu = lo;
  if (spec.C_mu == 0.0) spec.C_mu = hi;
  if (!(spec.c_mu > 0.0)) throw std::invalid_argument("modulation: mu0 must be bounded away from 0");
  if (lo < spec.c_mu || hi > spec.C_mu)
    throw std::invalid_argument("modulation: mu0 violates c_mu <= mu0 <= C_mu");
}

double modulation_eval(const ModulationSpec& spec, double x, double t, int deriv) {
  const double theta = t / spec.epsilon;
  double acc = 0.0;
  if (deriv == 0) {
    for (int j = 1; j <= spec.J(); ++j) acc += spec.muhat[j - 1](x) * std::cos(j * theta);
    return spec.mu0(x) + 2.0 * spec.rho * acc;
  }
  if (deriv != 1) throw std::invalid_argument("modulation_eval: deriv must be 0 or 1");
  for (int j = 1; j <= spec.J(); ++j) acc += j * spec.muhat[j - 1](x) * std::sin(j * theta);
  return -2.0 * spec.rho / spec.epsilon * acc;
}

double modulation_min(const ModulationSpec& spec, const Grid1D& grid, std::size_t samples) {
  double lo = std::numeric_limits<double>::infinity();
  const double period = 2.0 * std::numbers::pi * spec.epsilon;
  for (std::size_t q = 0; q < samples; ++q) {
    const double t = period * static_cast<double>(q) / static_cast<double>(samples);
    for (std::size_t i = 0; i <= grid.m; ++i)
      lo = std::min(lo, modulation_eval(spec, grid.half_node(i), t, 0));
  }
  return lo;
}

double energy_growth_constant(const ModulationSpec& spec, const Grid1D& grid,
                              std::size_t intervals) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double dtheta = two_pi / static_cast<double>(intervals);
  double integral = 0.0;
  for (std::size_t q = 0; q < intervals; ++q) {
    const double t = spec.epsilon * (static_cast<double>(q) + 0.5) * dtheta;
    double worst = 0.0;
    for (std::size_t i = 0; i <= grid.m; ++i) {
      const double x = grid.half_node(i);
      // derivative with respect to the fast variable theta = t/eps
      const double dmu = spec.epsilon * modulation_eval(spec, x, t, 1);
      if (dmu > 0.0) worst = std::max(worst, dmu / modulation_eval(spec, x, t, 0));
    }
    integral += worst * dtheta;
  }
  return integral / (std::numbers::pi * spec.epsilon);
}

const char* to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::smooth_balanced: return "smooth_balanced";
    case SourceKind::low_regularity_step: return "low_regularity_step";
    case SourceKind::zero: return "zero";
    case SourceKind::custom: return "custom";
  }
  return "unknown";
}

SourceKind source_kind_from_string(const std::string& name) {
  if (name == "smooth_balanced") return SourceKind::smooth_balanced;
  if (name == "low_regularity_step") return SourceKind::low_regularity_step;
  if (name == "zero") return SourceKind::zero;
  throw std::invalid_argument("unknown source kind '" + name + "'");
}

double source_eval(const SourceSpec& src, double x, double t) {
  switch (src.kind) {
    case SourceKind::smooth_balanced: {
      auto g = [&](double tt) {
        const double dx = x - src.center;
        return std::exp(-src.spatial_width * dx * dx - src.temporal_width * tt * tt);
      };
      return g(t - src.t0) - g(t - src.t0 - src.offset);
    }
    case SourceKind::low_regularity_step: {
      if (x < 0.25 || x > 0.75) return 0.0;
      const double dt = t - src.t0;
      return std::exp(-src.temporal_width * dt * dt);
    }
    case SourceKind::zero: return 0.0;
    case SourceKind::custom: return src.custom ? src.custom(x, t) : 0.0;
  }
  return 0.0;
}

RealVec sample_source(const SourceSpec& src, const Grid1D& grid, double t) {
  RealVec f(grid.m);
  for (std::size_t i = 0; i < grid.m; ++i) f[i] = source_eval(src, grid.nodes[i], t);
  return f;
}

RealVec source_step(const SourceSpec& src, const Grid1D& grid, double tau, std::size_t n) {
  if (n == 0) return RealVec(grid.m, 0.0);
  return sample_source(src, grid, static_cast<double>(n) * tau);
}

double source_off_time(const SourceSpec& src, double threshold) {
  const double width = std::sqrt(std::log(1.0 / threshold) / src.temporal_width);
  switch (src.kind) {
    case SourceKind::smooth_balanced: return src.t0 + src.offset + width;
    case SourceKind::low_regularity_step: return src.t0 + width;
    case SourceKind::zero: return 0.0;
    case SourceKind::custom: break;
  }
  throw std::invalid_argument("source_off_time: not available for custom sources");
}

}  // namespace mfewave
