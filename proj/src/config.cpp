#include "mfewave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mfewave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out))
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end)
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const auto n = to_int(key, v);
  if (n < 0) throw ConfigError(key + ": must be non-negative");
  return static_cast<std::size_t>(n);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& v, F convert) {
  std::vector<T> out;
  for (const auto& item : split(v, ',')) out.push_back(static_cast<T>(convert(key, item)));
  return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx v) {
  std::string out = format_double(v.real());
  if (v.imag() != 0.0) out += (v.imag() < 0.0 ? "" : "+") + format_double(v.imag()) + "i";
  return out;
}

cplx parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty complex number");
  if (t.back() != 'i') return {to_double("complex", t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos) {
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, to_double("complex", body)};
  }
  std::string im = body.substr(cut);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im = im.substr(1);
  return {to_double("complex", body.substr(0, cut)), to_double("complex", im)};
}

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::convergence: return "convergence";
    case Experiment::decay: return "decay";
    case Experiment::energy: return "energy";
    case Experiment::visualize: return "visualize";
    case Experiment::laplace_diag: return "laplace-diag";
  }
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::convergence, Experiment::decay, Experiment::energy,
                 Experiment::visualize, Experiment::laplace_diag})
    if (name == to_string(e)) return e;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::size_t ExperimentConfig::steps() const {
  if (time_N) return *time_N;
  if (!time_tau) throw ConfigError("one of time.N / time.tau is required");
  const double n = time_T / *time_tau;
  const double r = std::round(n);
  if (r < 1.0 || std::abs(n - r) > 1e-9 * r)
    throw ConfigError("time.tau must divide time.T into an integer number of steps");
  return static_cast<std::size_t>(r);
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::convergence:
      c.grid_m = 1000;
      c.mfe_K = 3;
      c.time_T = 5.0;
      c.time_N = 1024;
      c.sweep_N = {32, 64, 128, 256, 512, 1024};
      break;
    case Experiment::decay:
      c.grid_m = 1000;
      c.mfe_K = 10;
      c.time_T = 4.0;
      c.time_N = 1024;
      c.sweep_epsilon = {0.1, 0.05, 0.025};
      c.sweep_rho = {0.4, 0.2, 0.1};
      break;
    case Experiment::energy:
      c.grid_m = 500;
      c.mfe_K = 3;
      c.time_T = 4.0;
      c.time_N = 4096;
      c.sweep_N = {256, 512, 1024, 2048};
      c.sweep_rho = {0.4, 0.2, 0.1};
      break;
    case Experiment::visualize:
      c.grid_m = 500;
      c.mfe_K = 3;
      c.time_T = 4.0;
      c.time_N = 256;
      break;
    case Experiment::laplace_diag:
      c.grid_m = 200;
      c.rho = 0.05;
      c.mfe_K = 4;
      c.time_T = 4.0;
      c.time_N = 256;
      c.laplace_s = {{2.0, 0.0}, {6.0, 0.0}, {8.0, 5.0}, {12.0, -20.0}, {20.0, 40.0}};
      break;
  }
  return c;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_entries(ExperimentConfig& c, const std::map<std::string, std::string>& entries) {
  if (entries.count("time.N") && entries.count("time.tau"))
    throw ConfigError("give exactly one of time.N / time.tau");
  for (const auto& [key, v] : entries) {
    if (key == "grid.m") c.grid_m = to_count(key, v);
    else if (key == "grid.a") c.grid_a = to_double(key, v);
    else if (key == "grid.b") c.grid_b = to_double(key, v);
    else if (key == "modulation.epsilon") c.epsilon = to_double(key, v);
    else if (key == "modulation.rho") c.rho = to_double(key, v);
    else if (key == "modulation.mu0") c.mu0 = v;
    else if (key == "modulation.muhat") c.muhat = split(v, ';');
    else if (key == "source.kind") {
      try {
        c.source_kind = source_kind_from_string(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("source.kind: ") + e.what());
      }
    } else if (key == "source.t0") c.source_t0 = to_double(key, v);
    else if (key == "mfe.K") c.mfe_K = static_cast<int>(to_int(key, v));
    else if (key == "time.T") c.time_T = to_double(key, v);
    else if (key == "time.N") {
      c.time_N = to_count(key, v);
      c.time_tau.reset();
    } else if (key == "time.tau") {
      c.time_tau = to_double(key, v);
      c.time_N.reset();
    } else if (key == "reference.N") c.reference_N = to_count(key, v);
    else if (key == "sweep.N") c.sweep_N = to_list<std::size_t>(key, v, to_count);
    else if (key == "sweep.tau") {
      // converted to step counts against time.T during validation
      c.sweep_N.clear();
      for (double tau : to_list<double>(key, v, to_double)) {
        const double n = std::round(c.time_T / tau);
        if (!(tau > 0.0) || std::abs(c.time_T / tau - n) > 1e-9 * n)
          throw ConfigError("sweep.tau: each tau must divide time.T");
        c.sweep_N.push_back(static_cast<std::size_t>(n));
      }
    } else if (key == "sweep.epsilon") c.sweep_epsilon = to_list<double>(key, v, to_double);
    else if (key == "sweep.rho") c.sweep_rho = to_list<double>(key, v, to_double);
    else if (key == "sweep.K") c.sweep_K = to_list<int>(key, v, to_int);
    else if (key == "energy.t_off") c.energy_t_off = to_double(key, v);
    else if (key == "laplace.s") {
      c.laplace_s.clear();
      for (const auto& item : split(v, ',')) c.laplace_s.push_back(parse_complex(item));
    } else if (key == "laplace.samples") c.laplace_samples = to_count(key, v);
    else if (key == "laplace.seed") c.laplace_seed = to_count(key, v);
    else if (key == "output.dir") c.output_dir = v;
    else if (key == "output.svg") c.emit_svg = to_bool(key, v);
    else if (key == "workers") c.workers = static_cast<int>(to_int(key, v));
    else throw ConfigError("unknown key '" + key + "'");
  }
}

ExperimentConfig resolve_config(Experiment e, const std::map<std::string, std::string>& file,
                                const std::map<std::string, std::string>& overrides) {
  auto merged = file;
  for (const auto& [k, v] : overrides) {
    // a time.N/time.tau override replaces the other form from the file
    if (k == "time.N") merged.erase("time.tau");
    if (k == "time.tau") merged.erase("time.N");
    merged[k] = v;
  }
  // time.T must be known before sweep.tau is converted
  auto cfg = default_config(e);
  if (auto it = merged.find("time.T"); it != merged.end()) apply_entries(cfg, {*it});
  apply_entries(cfg, merged);
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& c) {
  if (c.grid_m == 0) throw ConfigError("grid.m must be positive");
  if (!(c.grid_a < c.grid_b)) throw ConfigError("grid.a must be smaller than grid.b");
  if (!(c.epsilon > 0.0)) throw ConfigError("modulation.epsilon must be positive");
  if (!(c.rho >= 0.0)) throw ConfigError("modulation.rho must be non-negative");
  if (c.muhat.empty()) throw ConfigError("modulation.muhat needs at least one profile");
  if (c.mfe_K < 1) throw ConfigError("mfe.K must be at least 1");
  if (!(c.time_T > 0.0)) throw ConfigError("time.T must be positive");
  if (c.steps() == 0) throw ConfigError("time.N must be positive");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  for (double e : c.sweep_epsilon)
    if (!(e > 0.0)) throw ConfigError("sweep.epsilon entries must be positive");
  for (double r : c.sweep_rho)
    if (!(r >= 0.0)) throw ConfigError("sweep.rho entries must be non-negative");
  for (int k : c.sweep_K)
    if (k < 1) throw ConfigError("sweep.K entries must be at least 1");
  for (auto n : c.sweep_N)
    if (n == 0) throw ConfigError("sweep.N entries must be positive");
  switch (c.experiment) {
    case Experiment::convergence:
      if (c.sweep_N.empty()) throw ConfigError("convergence needs sweep.N or sweep.tau");
      for (auto n : c.sweep_N) {
        if (n >= c.reference_N) throw ConfigError("reference.N must exceed every swept N");
        if (c.reference_N % n != 0) throw ConfigError("every swept N must divide reference.N");
      }
      break;
    case Experiment::decay:
      if (c.sweep_epsilon.empty() || c.sweep_rho.empty())
        throw ConfigError("decay needs sweep.epsilon and sweep.rho");
      break;
    case Experiment::energy:
      if (c.sweep_rho.empty() || c.sweep_N.empty())
        throw ConfigError("energy needs sweep.rho and sweep.N");
      if (!(c.energy_t_off > 0.0 && c.energy_t_off < c.time_T))
        throw ConfigError("energy.t_off must lie in (0, time.T)");
      break;
    case Experiment::visualize: break;
    case Experiment::laplace_diag:
      if (c.laplace_s.empty()) throw ConfigError("laplace-diag needs laplace.s");
      for (auto s : c.laplace_s)
        if (!(s.real() > 0.0)) throw ConfigError("laplace.s entries need Re s > 0");
      break;
  }
  // profile syntax and positivity
  const auto g = config_grid(c);
  (void)config_modulation(c, c.epsilon, c.rho);
  (void)g;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
  auto d = [](double v) { return format_double(v); };
  auto n = [](auto v) { return std::to_string(v); };
  std::vector<std::pair<std::string, std::string>> out{
      {"experiment", to_string(c.experiment)},
      {"grid.m", n(c.grid_m)},
      {"grid.a", d(c.grid_a)},
      {"grid.b", d(c.grid_b)},
      {"modulation.epsilon", d(c.epsilon)},
      {"modulation.rho", d(c.rho)},
      {"modulation.mu0", c.mu0},
      {"modulation.muhat", join(c.muhat, [](const std::string& s) { return s; }, ";")},
      {"source.kind", to_string(c.source_kind)},
      {"source.t0", d(c.source_t0)},
      {"mfe.K", n(c.mfe_K)},
      {"time.T", d(c.time_T)},
  };
  if (c.time_N) out.emplace_back("time.N", n(*c.time_N));
  if (c.time_tau) out.emplace_back("time.tau", d(*c.time_tau));
  out.emplace_back("reference.N", n(c.reference_N));
  out.emplace_back("sweep.N", join(c.sweep_N, n));
  out.emplace_back("sweep.epsilon", join(c.sweep_epsilon, d));
  out.emplace_back("sweep.rho", join(c.sweep_rho, d));
  out.emplace_back("sweep.K", join(c.sweep_K, n));
  out.emplace_back("energy.t_off", d(c.energy_t_off));
  out.emplace_back("laplace.s", join(c.laplace_s, format_complex));
  out.emplace_back("laplace.samples", n(c.laplace_samples));
  out.emplace_back("laplace.seed", n(c.laplace_seed));
  out.emplace_back("output.dir", c.output_dir);
  out.emplace_back("output.svg", c.emit_svg ? "true" : "false");
  out.emplace_back("workers", n(c.workers));
  return out;
}

Grid1D config_grid(const ExperimentConfig& c) {
  try {
    return build_grid(c.grid_m, c.grid_a, c.grid_b);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ModulationSpec config_modulation(const ExperimentConfig& c, double epsilon, double rho) {
  try {
    ModulationSpec s;
    s.epsilon = epsilon;
    s.rho = rho;
    s.mu0 = Profile::parse(c.mu0, c.grid_a, c.grid_b);
    s.muhat.clear();
    for (const auto& p : c.muhat) s.muhat.push_back(Profile::parse(p, c.grid_a, c.grid_b));
    const auto g = config_grid(c);
    validate_modulation(s, g);
    return s;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SourceSpec config_source(const ExperimentConfig& c) {
  SourceSpec s;
  s.kind = c.source_kind;
  s.t0 = c.source_t0;
  return s;
}

}  // namespace mfewave
