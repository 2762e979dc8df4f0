#ifndef HANKEL_TOOLS_COMMANDS_HPP
#define HANKEL_TOOLS_COMMANDS_HPP

#include <string>

#include "config.hpp"

namespace hankel::cli {

inline constexpr const char* kVersion = "0.1.0";

struct CommandOutput {
  /// RunReport: config echo, version, results, timings, precision.
  io::Json report;
  /// Human-readable table for stdout.
  std::string table;
  /// Optional CSV payload (written to ExperimentConfig::csv_name).
  std::string csv;
  /// Non-zero when a check inside the command failed.
  int status = 0;
};

CommandOutput cmd_classify(const ExperimentConfig& cfg);
CommandOutput cmd_spectrum(const ExperimentConfig& cfg, unsigned jobs);
CommandOutput cmd_extremal(const ExperimentConfig& cfg);
CommandOutput cmd_bench(const ExperimentConfig& cfg);

}  // namespace hankel::cli

#endif  // HANKEL_TOOLS_COMMANDS_HPP
