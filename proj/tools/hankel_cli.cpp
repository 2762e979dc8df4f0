#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace hankel;
using namespace hankel::cli;

namespace {

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::string> backend;
  unsigned jobs = 1;
};

void add_flags(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config, "Experiment configuration (JSON)")->required();
  sub->add_option("--out", flags.out, "Directory for the JSON report and CSV files");
  sub->add_option("--backend", flags.backend, "rational | bigfloat:<bits> | f64");
  sub->add_option("--jobs", flags.jobs, "Worker threads over grid points")->check(CLI::PositiveNumber);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

int run(const std::string& command, const Flags& flags) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(flags.config, command, flags.backend);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  CommandOutput out;
  try {
    if (command == "classify") {
      out = cmd_classify(cfg);
    } else if (command == "spectrum") {
      out = cmd_spectrum(cfg, flags.jobs);
    } else if (command == "extremal") {
      out = cmd_extremal(cfg);
    } else {
      out = cmd_bench(cfg);
    }
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated (rank-N perturbation identity needs removed points in (-1, 1)): "
              << e.what() << "\n";
    return 2;
  } catch (const UnsupportedBackendError& e) {
    std::cerr << "unsupported backend: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    fs::create_directories(flags.out);
    write_file(fs::path(flags.out) / cfg.json_name, out.report.dump(2) + "\n");
    if (!out.csv.empty()) write_file(fs::path(flags.out) / cfg.csv_name, out.csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << out.table;
  return out.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hankel operators of Hamburger moment sequences"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : {"classify", "spectrum", "extremal", "bench"}) {
    add_flags(app.add_subcommand(name, std::string(name) + " experiment"), flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(app.get_subcommands().front()->get_name(), flags);
}
