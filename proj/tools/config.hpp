#ifndef HANKEL_TOOLS_CONFIG_HPP
#define HANKEL_TOOLS_CONFIG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hankel/io.hpp"

namespace hankel::cli {

/// Invalid configuration; the command exits with status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::string command;
  io::Json raw;
  std::optional<MomentFamily> family;
  Backend backend = Backend::f64();
  std::size_t n = 16;
  std::vector<std::size_t> n_grid;
  std::size_t trace_terms = 0;
  PrecisionPolicy precision;
  ClassifyTolerances tolerances;
  std::size_t plateau_window = 4;
  double plateau_threshold = 0.5;
  std::vector<std::size_t> remove;
  std::size_t kernel_rows = 0;
  std::size_t bench_vectors = 10;
  std::size_t bench_repeats = 3;
  unsigned long long seed = 12345;
  std::string json_name = "report.json";
  std::string csv_name = "profile.csv";
};

/// Validates `j` against the experiment schema for `command` and fills the
/// config. `backend_override` comes from --backend and wins over the file.
ExperimentConfig parse_config(const io::Json& j, const std::string& command,
                              const std::optional<std::string>& backend_override);

ExperimentConfig load_config(const std::string& path, const std::string& command,
                             const std::optional<std::string>& backend_override);

}  // namespace hankel::cli

#endif  // HANKEL_TOOLS_CONFIG_HPP
