#ifndef HANKEL_IO_HPP
#define HANKEL_IO_HPP

#include <ostream>
#include <string>

#include <json.hpp>

#include "hankel/extremal.hpp"

namespace hankel::io {

using Json = nlohmann::ordered_json;

/// Thrown for structurally invalid JSON input (wrong types, unknown keys).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Accepts a string ("p/q", decimal) or a JSON number.
Rational rational_from_json(const Json& j);

template <ScalarType S>
Json to_json(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x;
  } else {
    return format_scalar(x);
  }
}

template <ScalarType S>
Json to_json(const Vector<S>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

template <ScalarType S>
Json to_json(const Matrix<S>& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

/// {"points": [...], "weights": [...]}
DiscreteMeasure measure_from_json(const Json& j);
Json to_json(const DiscreteMeasure& mu);

/// {"family": tag, "params": {...}}; an optional "backend" key is ignored here.
MomentFamily family_from_json(const Json& j);
Json to_json(const MomentFamily& family);

Json to_json(const TrendVerdict& v);
Json to_json(const TrendFit& fit);
Json to_json(const SpectralProfile& profile);
Json to_json(const PlateauVerdict& v);
Json to_json(const PerturbationReport& report);
Json to_json(const KernelReport& report);

template <ScalarType S>
Json to_json(const Classification<S>& c) {
  Json out;
  out["positive_definite_up_to"] = c.positive_definite_up_to;
  out["tested_dimension"] = c.tested_dimension;
  out["is_o1"] = to_json(c.is_o1);
  out["is_O_1_over_n"] = to_json(c.is_O_1_over_n);
  out["is_O_1_over_n"]["sup_n_mn"] = c.sup_n_mn;
  out["is_ell1"] = to_json(c.is_ell1);
  if (c.ell1_tail_bound) {
    out["is_ell1"]["tail_bound"] = *c.ell1_tail_bound;
    out["is_ell1"]["tail_bound_rigorous"] = c.tail_bound_rigorous;
  }
  out["fitted_exponent"] = c.fitted_exponent;
  out["trace_terms"] = c.trace_terms;
  out["trace_partial"] = to_json(c.trace_partial);
  return out;
}

/// Profile as CSV: N,lambda_min,lambda_max,hs_norm_B,trace_partial,precision_bits,error.
void write_profile_csv(std::ostream& os, const SpectralProfile& profile);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace hankel::io

#endif  // HANKEL_IO_HPP
