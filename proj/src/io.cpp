#include "hankel/io.hpp"

#include <cmath>
#include <set>

namespace hankel::io {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw FormatError(where + ": unknown key \"" + key + "\"");
  }
}

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::vector<Rational> rational_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return nullptr;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return parse_rational(format_double(j.get<double>()));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad rational: ") + e.what());
  }
  throw FormatError("expected a number or a \"p/q\" string, got " + j.dump());
}

DiscreteMeasure measure_from_json(const Json& j) {
  reject_unknown(j, {"points", "weights"}, "measure");
  return DiscreteMeasure(rational_list(require(j, "points", "measure"), "points"),
                         rational_list(require(j, "weights", "measure"), "weights"));
}

Json to_json(const DiscreteMeasure& mu) {
  Json out;
  out["points"] = Json::array();
  out["weights"] = Json::array();
  for (const auto& x : mu.points()) out["points"].push_back(to_string(x));
  for (const auto& c : mu.weights()) out["weights"].push_back(to_string(c));
  return out;
}

MomentFamily family_from_json(const Json& j) {
  reject_unknown(j, {"family", "params", "backend"}, "family");
  const Json& tag_json = require(j, "family", "family");
  if (!tag_json.is_string()) throw FormatError("family: \"family\" must be a string");
  const std::string tag = tag_json.get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  auto param = [&](const std::string& key) { return rational_from_json(require(params, key, tag)); };
  if (tag == "power_log") {
    reject_unknown(params, {"c"}, tag);
    return PowerLog{param("c")};
  }
  if (tag == "gegenbauer") {
    reject_unknown(params, {"lambda"}, tag);
    return Gegenbauer{param("lambda")};
  }
  if (tag == "log_normal") {
    reject_unknown(params, {"sigma"}, tag);
    return LogNormal{param("sigma")};
  }
  if (tag == "gaussian") {
    reject_unknown(params, {}, tag);
    return Gaussian{};
  }
  if (tag == "discrete") {
    return Discrete{measure_from_json(params)};
  }
  if (tag == "explicit") {
    reject_unknown(params, {"values"}, tag);
    return Explicit{rational_list(require(params, "values", tag), "values")};
  }
  throw FormatError("unknown family \"" + tag + "\"");
}

Json to_json(const MomentFamily& family) {
  Json out;
  out["family"] = family.tag();
  Json params = Json::object();
  if (const auto* p = family.get_if<PowerLog>()) params["c"] = to_string(p->c);
  if (const auto* g = family.get_if<Gegenbauer>()) params["lambda"] = to_string(g->lambda);
  if (const auto* ln = family.get_if<LogNormal>()) params["sigma"] = to_string(ln->sigma);
  if (const auto* d = family.get_if<Discrete>()) params = to_json(d->measure);
  if (const auto* e = family.get_if<Explicit>()) {
    params["values"] = Json::array();
    for (const auto& v : e->values) params["values"].push_back(to_string(v));
  }
  out["params"] = params;
  return out;
}

Json to_json(const TrendVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.verdict);
  out["heuristic"] = v.heuristic;
  out["basis"] = v.basis;
  if (v.heuristic) out["window"] = {v.window_begin, v.window_end};
  return out;
}

Json to_json(const TrendFit& fit) {
  Json out;
  out["verdict"] = fit.verdict == Verdict::yes ? "bounded-trend"
                   : fit.verdict == Verdict::no ? "divergent-trend"
                                                : "inconclusive";
  out["heuristic"] = fit.heuristic;
  out["slope"] = number_or_null(fit.slope);
  out["grid"] = fit.grid;
  Json values = Json::array();
  for (double v : fit.values) values.push_back(number_or_null(v));
  out["values"] = values;
  return out;
}

Json to_json(const SpectralProfile& profile) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < profile.n_grid.size(); ++i) {
    Json row;
    row["N"] = profile.n_grid[i];
    row["lambda_min"] = number_or_null(profile.lambda_min[i]);
    row["lambda_max"] = number_or_null(profile.lambda_max[i]);
    row["hs_norm_B"] = number_or_null(profile.hs_norm_B[i]);
    row["trace_partial"] = number_or_null(profile.trace_partial[i]);
    row["precision_bits"] = profile.precision_bits[i];
    if (!profile.ok(i)) row["error"] = profile.errors[i];
    rows.push_back(std::move(row));
  }
  Json out;
  out["rows"] = rows;
  out["interlacing_ok"] = profile.interlacing_ok;
  return out;
}

Json to_json(const PlateauVerdict& v) {
  Json out;
  out["verdict"] = to_string(v.kind);
  out["ratio"] = number_or_null(v.ratio);
  out["n_first"] = v.n_first;
  out["n_last"] = v.n_last;
  out["window"] = v.window;
  out["threshold"] = v.threshold;
  out["heuristic"] = true;
  return out;
}

Json to_json(const PerturbationReport& report) {
  Json out;
  out["banner"] = report.banner;
  Json removed = Json::array();
  for (std::size_t j = 0; j < report.removed_points.size(); ++j) {
    removed.push_back({{"point", to_string(report.removed_points[j])},
                       {"weight", to_string(report.removed_weights[j])},
                       {"coefficient", to_string(report.coefficients[j])}});
  }
  out["removed"] = removed;
  out["removed_count"] = report.removed_count;
  out["deviation"] = to_string(report.deviation);
  out["h"] = to_json(report.h);
  out["h_tilde"] = to_json(report.h_tilde);
  out["correction"] = to_json(report.correction);
  return out;
}

Json to_json(const KernelReport& report) {
  Json out;
  out["banner"] = report.banner;
  out["dimension"] = report.dimension;
  out["rows"] = report.rows;
  Json rs = Json::array();
  for (const auto& r : report.residuals) {
    rs.push_back({{"point", to_string(r.point)},
                  {"removed", r.removed},
                  {"squared_norm", to_string(r.squared_norm)},
                  {"norm", r.norm}});
  }
  out["residuals"] = rs;
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_profile_csv(std::ostream& os, const SpectralProfile& profile) {
  auto num = [](double x) {
    if (std::isnan(x)) return std::string();
    if (std::isinf(x)) return std::string(x > 0 ? "inf" : "-inf");
    return format_double(x);
  };
  os << "N,lambda_min,lambda_max,hs_norm_B,trace_partial,precision_bits,error\n";
  for (std::size_t i = 0; i < profile.n_grid.size(); ++i) {
    os << profile.n_grid[i] << ',' << num(profile.lambda_min[i]) << ',' << num(profile.lambda_max[i]) << ','
       << num(profile.hs_norm_B[i]) << ',' << num(profile.trace_partial[i]) << ','
       << profile.precision_bits[i] << ',' << csv_field(profile.errors[i]) << '\n';
  }
}

}  // namespace hankel::io
