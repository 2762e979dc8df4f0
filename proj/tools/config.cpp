#include "config.hpp"

#include <fstream>
#include <map>
#include <set>

namespace hankel::cli {

namespace {

using io::Json;

// Top-level keys accepted by each command; mirrors schemas/experiment_config.schema.json.
const std::map<std::string, std::set<std::string>> kCommandKeys = {
    {"classify", {"command", "family", "backend", "N", "trace_terms", "tolerances", "outputs"}},
    {"spectrum", {"command", "family", "backend", "N_grid", "precision", "plateau", "outputs"}},
    {"extremal", {"command", "family", "backend", "N", "remove", "kernel_rows", "outputs"}},
    {"bench", {"command", "family", "backend", "N_grid", "vectors", "repeats", "seed", "outputs"}},
};

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

std::size_t positive(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ConfigError(what + " must be a positive integer");
  return j.get<std::size_t>();
}

std::size_t non_negative(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

std::vector<std::size_t> grid(const Json& j) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(positive(x, "N_grid entry"));
  } else if (j.is_object()) {
    check_keys(j, {"start", "stop", "step"}, "N_grid");
    if (!j.contains("start") || !j.contains("stop")) throw ConfigError("N_grid: start and stop are required");
    const std::size_t start = positive(j["start"], "N_grid.start");
    const std::size_t stop = positive(j["stop"], "N_grid.stop");
    const std::size_t step = j.contains("step") ? positive(j["step"], "N_grid.step") : 1;
    for (std::size_t n = start; n <= stop; n += step) out.push_back(n);
  } else {
    throw ConfigError("N_grid must be an array or {start, stop, step}");
  }
  if (out.empty()) throw ConfigError("N_grid is empty");
  return out;
}

Backend backend_from(const std::string& text) {
  try {
    return Backend::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("backend: ") + e.what());
  }
}

std::string file_name(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  const std::string name = j.get<std::string>();
  if (name.empty() || name.find('/') != std::string::npos) {
    throw ConfigError(what + " must be a plain file name");
  }
  return name;
}

}  // namespace

ExperimentConfig parse_config(const Json& j, const std::string& command,
                              const std::optional<std::string>& backend_override) {
  const auto keys = kCommandKeys.find(command);
  if (keys == kCommandKeys.end()) throw ConfigError("unknown command \"" + command + "\"");
  check_keys(j, keys->second, "config");

  ExperimentConfig cfg;
  cfg.command = command;
  cfg.raw = j;
  if (j.contains("command") && j["command"] != command) {
    throw ConfigError("config is for command " + j["command"].dump() + ", not \"" + command + "\"");
  }
  if (!j.contains("family")) throw ConfigError("config: missing \"family\"");
  try {
    cfg.family = io::family_from_json(j["family"]);
  } catch (const io::FormatError& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const EmptyMeasureError& e) {
    throw ConfigError(e.what());
  }

  std::optional<std::string> backend_text;
  if (j["family"].contains("backend")) {
    if (!j["family"]["backend"].is_string()) throw ConfigError("family.backend must be a string");
    backend_text = j["family"]["backend"].get<std::string>();
  }
  if (j.contains("backend")) {
    if (!j["backend"].is_string()) throw ConfigError("backend must be a string");
    backend_text = j["backend"].get<std::string>();
  }
  if (backend_override) backend_text = backend_override;
  if (backend_text) cfg.backend = backend_from(*backend_text);

  if (j.contains("N")) cfg.n = positive(j["N"], "N");
  if (command == "classify" && cfg.n < 2) throw ConfigError("classify needs N >= 2");
  if (j.contains("trace_terms")) cfg.trace_terms = non_negative(j["trace_terms"], "trace_terms");

  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    check_keys(t, {"o1_yes_below", "o1_no_above", "big_o_yes_below", "big_o_no_above", "ell1_yes_below",
                   "ell1_no_above"},
               "tolerances");
    auto set = [&](const char* key, double& field) {
      if (t.contains(key)) field = number(t[key], std::string("tolerances.") + key);
    };
    set("o1_yes_below", cfg.tolerances.o1_yes_below);
    set("o1_no_above", cfg.tolerances.o1_no_above);
    set("big_o_yes_below", cfg.tolerances.big_o_yes_below);
    set("big_o_no_above", cfg.tolerances.big_o_no_above);
    set("ell1_yes_below", cfg.tolerances.ell1_yes_below);
    set("ell1_no_above", cfg.tolerances.ell1_no_above);
  }

  if (command == "spectrum") {
    if (!j.contains("N_grid")) throw ConfigError("spectrum: missing \"N_grid\"");
    cfg.n_grid = grid(j["N_grid"]);
  } else if (command == "bench") {
    cfg.n_grid = j.contains("N_grid") ? grid(j["N_grid"]) : std::vector<std::size_t>{8, 64, 512, 4096};
  }

  if (j.contains("precision")) {
    const Json& p = j["precision"];
    check_keys(p, {"mode", "backend", "lambda_min", "lambda_max", "hs_norm", "agreement_bits"}, "precision");
    if (p.contains("mode")) {
      if (p["mode"] == "ladder") {
        cfg.precision.mode = PrecisionPolicy::Mode::ladder;
      } else if (p["mode"] == "fixed") {
        cfg.precision.mode = PrecisionPolicy::Mode::fixed;
      } else {
        throw ConfigError("precision.mode must be \"ladder\" or \"fixed\"");
      }
    }
    if (p.contains("backend")) {
      if (!p["backend"].is_string()) throw ConfigError("precision.backend must be a string");
      cfg.precision.backend = backend_from(p["backend"].get<std::string>());
    }
    for (const char* flag : {"lambda_min", "lambda_max", "hs_norm"}) {
      if (p.contains(flag) && !p[flag].is_boolean()) throw ConfigError(std::string("precision.") + flag + " must be boolean");
    }
    if (p.contains("lambda_min")) cfg.precision.lambda_min = p["lambda_min"].get<bool>();
    if (p.contains("lambda_max")) cfg.precision.lambda_max = p["lambda_max"].get<bool>();
    if (p.contains("hs_norm")) cfg.precision.hs_norm = p["hs_norm"].get<bool>();
    if (p.contains("agreement_bits")) {
      cfg.precision.agreement_bits = static_cast<int>(positive(p["agreement_bits"], "precision.agreement_bits"));
    }
  }
  if (command == "spectrum" && backend_override) {
    cfg.precision.mode = PrecisionPolicy::Mode::fixed;
    cfg.precision.backend = cfg.backend;
  }
  if (command == "spectrum" && cfg.precision.mode == PrecisionPolicy::Mode::fixed &&
      cfg.precision.backend.kind == Backend::Kind::rational) {
    throw ConfigError("spectrum needs a floating backend");
  }

  if (j.contains("plateau")) {
    const Json& p = j["plateau"];
    check_keys(p, {"window", "threshold"}, "plateau");
    if (p.contains("window")) cfg.plateau_window = positive(p["window"], "plateau.window");
    if (p.contains("threshold")) cfg.plateau_threshold = number(p["threshold"], "plateau.threshold");
  }

  if (command == "extremal") {
    if (!cfg.family->get_if<Discrete>()) throw ConfigError("extremal needs a discrete family");
    const std::size_t m = cfg.family->get_if<Discrete>()->measure.size();
    if (!j.contains("N")) cfg.n = m;
    if (j.contains("remove")) {
      if (!j["remove"].is_array()) throw ConfigError("remove must be an array of indices");
      std::set<std::size_t> seen;
      for (const auto& x : j["remove"]) {
        const std::size_t i = non_negative(x, "remove entry");
        if (i >= m) throw ConfigError("remove index " + std::to_string(i) + " out of range for " + std::to_string(m) + " points");
        if (!seen.insert(i).second) throw ConfigError("remove index " + std::to_string(i) + " repeated");
        cfg.remove.push_back(i);
      }
    }
    if (j.contains("kernel_rows")) cfg.kernel_rows = non_negative(j["kernel_rows"], "kernel_rows");
  }

  if (command == "bench") {
    if (cfg.backend.kind != Backend::Kind::f64) throw ConfigError("bench compares against the FFT path, which is f64 only");
    if (j.contains("vectors")) cfg.bench_vectors = positive(j["vectors"], "vectors");
    if (j.contains("repeats")) cfg.bench_repeats = positive(j["repeats"], "repeats");
    if (j.contains("seed")) cfg.seed = non_negative(j["seed"], "seed");
  }

  if (j.contains("outputs")) {
    const Json& o = j["outputs"];
    check_keys(o, {"json", "csv"}, "outputs");
    if (o.contains("json")) cfg.json_name = file_name(o["json"], "outputs.json");
    if (o.contains("csv")) cfg.csv_name = file_name(o["csv"], "outputs.csv");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::string& command,
                             const std::optional<std::string>& backend_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j, command, backend_override);
}

}  // namespace hankel::cli
