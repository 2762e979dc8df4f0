#ifndef HANKEL_SCALAR_HPP
#define HANKEL_SCALAR_HPP

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

#include "hankel/bigfloat.hpp"
#include "hankel/errors.hpp"
#include "hankel/rational.hpp"

namespace hankel {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Scalar types that admit square roots (every backend except exact rationals).
template <typename T>
concept FloatScalar = std::same_as<T, double> || std::same_as<T, BigFloat>;

template <typename T>
concept ScalarType = FloatScalar<T> || std::same_as<T, Rational>;

/// Runtime selection of the numeric backend.
struct Backend {
  enum class Kind { rational, bigfloat, f64 };

  Kind kind = Kind::f64;
  int bits = 53;

  static Backend rational() { return {Kind::rational, 0}; }
  static Backend bigfloat(int bits);
  static Backend f64() { return {Kind::f64, 53}; }

  /// Accepts "rational", "bigfloat:<bits>" and "f64".
  static Backend parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const Backend&, const Backend&) = default;
};

/// Calls f(std::type_identity<S>{}) with S the scalar type matching the
/// backend; big-float calls run inside a PrecisionScope at the backend's bits.
template <typename F>
decltype(auto) visit_backend(const Backend& backend, F&& f) {
  switch (backend.kind) {
    case Backend::Kind::rational:
      return std::forward<F>(f)(std::type_identity<Rational>{});
    case Backend::Kind::bigfloat: {
      PrecisionScope scope(backend.bits);
      return std::forward<F>(f)(std::type_identity<BigFloat>{});
    }
    case Backend::Kind::f64:
      break;
  }
  return std::forward<F>(f)(std::type_identity<double>{});
}

template <ScalarType S>
Backend backend_of(const S& sample = S{}) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Backend::rational();
  } else if constexpr (std::is_same_v<S, BigFloat>) {
    return Backend::bigfloat(sample.precision());
  } else {
    return Backend::f64();
  }
}

/// Exact conversion of a rational into the target scalar (rounded for floats).
template <ScalarType S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<S, BigFloat>) {
    return BigFloat(q);
  } else {
    return q.convert_to<double>();
  }
}

template <ScalarType S>
double to_double(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x;
  } else if constexpr (std::is_same_v<S, BigFloat>) {
    return x.to_double();
  } else {
    return x.template convert_to<double>();
  }
}

template <ScalarType S>
S abs_value(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return std::abs(x);
  } else if constexpr (std::is_same_v<S, BigFloat>) {
    return abs(x);
  } else {
    return x < 0 ? Rational(-x) : x;
  }
}

template <ScalarType S>
bool is_finite_value(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return std::isfinite(x);
  } else if constexpr (std::is_same_v<S, BigFloat>) {
    return isfinite(x);
  } else {
    return true;
  }
}

/// Shortest round-trip decimal for doubles.
std::string format_double(double x);

/// Text form used by CSV and JSON: "p/q" for rationals, shortest round-trip
/// for doubles, 20 significant digits for big-floats.
std::string format_scalar(const Rational& x);
std::string format_scalar(double x);
std::string format_scalar(const BigFloat& x);

template <ScalarType S>
S parse_scalar(std::string_view text) {
  if constexpr (std::is_same_v<S, Rational>) {
    return parse_rational(text);
  } else if constexpr (std::is_same_v<S, BigFloat>) {
    if (text.find('/') != std::string_view::npos) return BigFloat(parse_rational(text));
    return BigFloat(text);
  } else {
    if (text.find('/') != std::string_view::npos) return to_double(parse_rational(text));
    return std::stod(std::string(text));
  }
}

/// Sum with compensation for doubles (Neumaier); plain accumulation elsewhere.
template <ScalarType S>
class Accumulator {
 public:
  void add(const S& x) {
    if constexpr (std::is_same_v<S, double>) {
      const double t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
      sum_ = t;
    } else {
      sum_ += x;
    }
  }
  S value() const {
    if constexpr (std::is_same_v<S, double>) {
      return sum_ + comp_;
    } else {
      return sum_;
    }
  }

 private:
  S sum_ = S(0);
  S comp_ = S(0);
};

}  // namespace hankel

#endif  // HANKEL_SCALAR_HPP
