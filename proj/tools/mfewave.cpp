// mfewave: experiment harness for the modulated wave solvers.
#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "mfewave/experiments.hpp"

namespace {

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw mfewave::ConfigError("override '" + item + "' is not of the form key=value");
    std::string key = item.substr(0, eq);
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    out[key] = item.substr(eq + 1);
  }
  return out;
}

void print_defaults(std::ostream& os) {
  using namespace mfewave;
  for (auto e : {Experiment::convergence, Experiment::decay, Experiment::energy,
                 Experiment::visualize, Experiment::laplace_diag}) {
    os << "[" << to_string(e) << "]\n";
    for (const auto& [k, v] : config_entries(default_config(e))) os << k << " = " << v << "\n";
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modulated Fourier expansion solver for time-modulated 1D waves"};
  app.set_version_flag("--version", std::string(mfewave::kVersion));
  app.require_subcommand(1, 1);

  std::string config_path, out_dir;
  int workers = 0;
  bool svg = false;
  std::vector<std::string> overrides;

  std::vector<CLI::App*> runs;
  for (const char* name : {"convergence", "decay", "energy", "visualize", "laplace-diag"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "structured-text config file (key = value)");
    sub->add_option("--out", out_dir, "output directory for CSV/SVG");
    sub->add_option("--workers", workers, "worker threads for independent runs")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--svg", svg, "also emit SVG figures");
    sub->add_option("overrides", overrides, "key=value overrides of config entries");
    runs.push_back(sub);
  }
  auto* defaults = app.add_subcommand("defaults", "print the default configuration of every experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (defaults->parsed()) {
    print_defaults(std::cout);
    return 0;
  }

  mfewave::ExperimentConfig cfg;
  try {
    const auto* sub = app.get_subcommands().front();
    const auto e = mfewave::experiment_from_string(sub->get_name());
    std::map<std::string, std::string> file;
    if (!config_path.empty()) file = mfewave::read_config_file(config_path);
    auto over = parse_overrides(overrides);
    if (!out_dir.empty()) over["output.dir"] = out_dir;
    if (workers > 0) over["workers"] = std::to_string(workers);
    if (svg) over["output.svg"] = "true";
    cfg = mfewave::resolve_config(e, file, over);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    const auto result = mfewave::run_experiment(cfg);
    for (const auto& line : result.summary) std::cerr << line << "\n";
    for (const auto& path : mfewave::write_result(cfg, result)) std::cerr << "wrote " << path << "\n";
  } catch (const mfewave::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const mfewave::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
