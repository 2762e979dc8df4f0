#ifndef HANKEL_MOMENTS_HPP
#define HANKEL_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hankel/detail/ldlt.hpp"
#include "hankel/discrete_measure.hpp"
#include "hankel/errors.hpp"
#include "hankel/scalar.hpp"

namespace hankel {

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// m_n = 1/(n+1)^c: moments of the log-density on (0,1); c = 1 is the Hilbert matrix.
struct PowerLog {
  Rational c;
  friend bool operator==(const PowerLog&, const PowerLog&) = default;
};

/// Symmetric density proportional to (1-x^2)^(lambda-1/2) on (-1,1):
/// m_{2k} = (1/2)_k / (lambda+1)_k, odd moments zero. lambda = 1/2 is uniform.
struct Gegenbauer {
  Rational lambda;
  friend bool operator==(const Gegenbauer&, const Gegenbauer&) = default;
};

struct Discrete {
  DiscreteMeasure measure;
  friend bool operator==(const Discrete&, const Discrete&) = default;
};

/// m_n = exp(n^2 sigma^2 / 2); indeterminate.
struct LogNormal {
  Rational sigma;
  friend bool operator==(const LogNormal&, const LogNormal&) = default;
};

/// Standard normal: m_{2k} = (2k-1)!!, odd moments zero; determinate.
struct Gaussian {
  friend bool operator==(const Gaussian&, const Gaussian&) = default;
};

/// Tabulated moments m_0 .. m_{size-1}.
struct Explicit {
  std::vector<Rational> values;
  friend bool operator==(const Explicit&, const Explicit&) = default;
};

class MomentFamily {
 public:
  using Variant = std::variant<PowerLog, Gegenbauer, Discrete, LogNormal, Gaussian, Explicit>;

  /// Validates parameter ranges; throws DomainError.
  MomentFamily(Variant v);  // NOLINT: implicit by design of the family literals
  template <typename T>
    requires(std::is_constructible_v<Variant, T> && !std::is_same_v<std::decay_t<T>, Variant>)
  MomentFamily(T&& v)  // NOLINT
      : MomentFamily(Variant(std::forward<T>(v))) {}

  static MomentFamily hilbert() { return PowerLog{Rational(1)}; }
  static MomentFamily uniform() { return Gegenbauer{Rational(1, 2)}; }

  const Variant& variant() const noexcept { return variant_; }
  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&variant_);
  }

  /// JSON tag: power_log, gegenbauer, discrete, log_normal, gaussian, explicit.
  std::string tag() const;
  /// True when every odd moment vanishes by construction.
  bool symmetric() const;
  /// True when the rational backend can represent every moment exactly.
  bool exact_rational() const;

  friend bool operator==(const MomentFamily&, const MomentFamily&) = default;

 private:
  Variant variant_;
};

namespace detail {

/// m_n of the base family, exact. Throws PrecisionError when the moment is irrational.
Rational rational_moment(const MomentFamily& family, std::size_t n, const Rational* previous_even);

}  // namespace detail

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// Lazily materialized moments of a family in scalar type S, optionally
/// weighted by (1-x^2)^order (order 1 gives the moments of d nu = (1-x^2) d mu).
///
/// Copies share the append-only cache; materialization is guarded, so
/// concurrent readers are safe. Big-float sequences remember the context
/// precision at construction and always materialize at that precision.
template <ScalarType S>
class MomentSequence {
 public:
  explicit MomentSequence(MomentFamily family, int weight_order = 0)
      : state_(std::make_shared<State>(std::move(family), weight_order)) {
    if constexpr (std::is_same_v<S, BigFloat>) state_->precision = BigFloat::context_precision();
    if constexpr (std::is_same_v<S, Rational>) {
      if (!state_->family.exact_rational()) {
        throw PrecisionError(state_->family.tag() + " moments are irrational for these parameters",
                             "bigfloat:256");
      }
    }
  }

  const MomentFamily& family() const noexcept { return state_->family; }
  int weight_order() const noexcept { return state_->weight_order; }
  /// Bits of the big-float cache (53 for double, 0 for rational).
  int precision_bits() const noexcept {
    if constexpr (std::is_same_v<S, BigFloat>) return state_->precision;
    if constexpr (std::is_same_v<S, double>) return 53;
    return 0;
  }

  S operator()(std::size_t n) const {
    const std::size_t order = static_cast<std::size_t>(state_->weight_order);
    ensure(n + 2 * order);
    std::lock_guard lock(state_->mutex);
    if (order == 0) return state_->cache[n];
    // (1-x^2)^r expands to sum_j (-1)^j C(r,j) x^{2j}.
    S acc = S(0);
    long binom = 1;
    for (std::size_t j = 0; j <= order; ++j) {
      const S term = S(binom) * state_->cache[n + 2 * j];
      acc = (j % 2 == 0) ? S(acc + term) : S(acc - term);
      binom = binom * static_cast<long>(order - j) / static_cast<long>(j + 1);
    }
    return acc;
  }

  /// m_0 .. m_{count-1} as a vector.
  Vector<S> head(std::size_t count) const {
    Vector<S> out(static_cast<Eigen::Index>(count));
    if (count == 0) return out;
    ensure(count - 1 + 2 * static_cast<std::size_t>(state_->weight_order));
    for (std::size_t n = 0; n < count; ++n) out(static_cast<Eigen::Index>(n)) = (*this)(n);
    return out;
  }

  /// Materializes base moments through index n (idempotent).
  void ensure(std::size_t n) const;

  std::size_t materialized() const {
    std::lock_guard lock(state_->mutex);
    return state_->cache.size();
  }

 private:
  struct State {
    State(MomentFamily f, int order) : family(std::move(f)), weight_order(order) {
      if (order < 0) throw DomainError("weight order must be non-negative");
    }
    MomentFamily family;
    int weight_order;
    int precision = 0;
    mutable std::mutex mutex;
    std::vector<S> cache;
    std::vector<Rational> exact_even;  // running Pochhammer / double factorial products
  };

  S compute(std::size_t n) const;

  std::shared_ptr<State> state_;
};

template <ScalarType S>
S moment(const MomentSequence<S>& ms, std::size_t n) {
  return ms(n);
}

/// nu_n = m_n - m_{n+2}: the moments of (1-x^2) d mu.
template <ScalarType S>
MomentSequence<S> nu_moments(const MomentSequence<S>& ms) {
  std::optional<PrecisionScope> scope;
  if constexpr (std::is_same_v<S, BigFloat>) scope.emplace(ms.precision_bits());
  return MomentSequence<S>(ms.family(), ms.weight_order() + 1);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class Verdict { yes, no, inconclusive };

std::string to_string(Verdict v);

/// One decay verdict and the evidence it rests on.
struct TrendVerdict {
  Verdict verdict = Verdict::inconclusive;
  /// False when the verdict follows from the family's known closed form.
  bool heuristic = true;
  std::string basis;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
};

/// Thresholds for the heuristic (window-evidence) path, on the fitted
/// power-law exponent s of the even moments m_{2k} ~ (2k+1)^s.
struct ClassifyTolerances {
  double o1_yes_below = -0.1;
  double o1_no_above = -0.02;
  double big_o_yes_below = -0.95;
  double big_o_no_above = -0.8;
  double ell1_yes_below = -1.2;
  double ell1_no_above = -1.02;
};

struct ClassifyOptions {
  std::size_t dimension = 16;
  /// K for trace_partial = sum_{k<K} m_{2k}; 0 means `dimension`.
  std::size_t trace_terms = 0;
  ClassifyTolerances tolerances{};
};

template <ScalarType S>
struct Classification {
  std::size_t positive_definite_up_to = 0;
  std::size_t tested_dimension = 0;
  TrendVerdict is_o1;
  TrendVerdict is_O_1_over_n;
  TrendVerdict is_ell1;
  /// sup_{1 <= n <= 2N-2} n |m_n|.
  double sup_n_mn = 0.0;
  /// Fitted exponent of the even moments over the window (heuristic evidence).
  double fitted_exponent = 0.0;
  /// Upper bound (analytic families) or estimate (heuristic) for sum_{k>=K} m_{2k}.
  std::optional<double> ell1_tail_bound;
  bool tail_bound_rigorous = false;
  std::size_t trace_terms = 0;
  S trace_partial = S(0);
};

namespace detail {

struct DecayEvidence {
  TrendVerdict o1, big_o, ell1;
  double exponent = 0.0;
};

/// Verdicts from the closed form when available, otherwise from the fitted
/// exponent of the even moments over [window_begin, window_end].
DecayEvidence decay_verdicts(const MomentFamily& family, int weight_order,
                             const std::vector<double>& even_moments, std::size_t window_begin,
                             std::size_t window_end, const ClassifyTolerances& tol);

/// Tail bound for sum_{k >= K} m_{2k} when the family is summable.
std::optional<std::pair<double, bool>> ell1_tail(const MomentFamily& family, int weight_order,
                                                 std::size_t trace_terms, double last_even_moment,
                                                 double exponent);

void enforce_monotone(TrendVerdict& o1, TrendVerdict& big_o, TrendVerdict& ell1);

}  // namespace detail

/// Positivity, decay and trace evidence for a moment sequence truncated at N.
/// A non-positive-definite sequence is reported in positive_definite_up_to,
/// never thrown.
template <ScalarType S>
Classification<S> classify(const MomentSequence<S>& ms, const ClassifyOptions& options) {
  if (options.dimension < 2) throw DomainError("classify needs a truncation N >= 2");
  const std::size_t n = options.dimension;
  Classification<S> out;
  out.tested_dimension = n;

  bool moments_ok = true;
  try {
    ms.ensure(2 * n - 2);
  } catch (const MissingDataError&) {
    moments_ok = false;
  }

  const std::size_t available = moments_ok ? 2 * n - 1 : ms.materialized();
  if (available == 0) throw MissingDataError("no moments available to classify");
  const std::size_t dim = std::min(n, (available + 1) / 2);

  Matrix<S> h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = ms(k + l);
  out.positive_definite_up_to = detail::unit_ldlt(h).pivots_ok;

  std::vector<double> even;
  for (std::size_t k = 0; 2 * k < 2 * dim - 1; ++k) even.push_back(to_double(ms(2 * k)));
  for (std::size_t j = 1; j < 2 * dim - 1; ++j) {
    out.sup_n_mn = std::max(out.sup_n_mn, static_cast<double>(j) * std::abs(to_double(ms(j))));
  }

  auto evidence = detail::decay_verdicts(ms.family(), ms.weight_order(), even, 0, 2 * dim - 2,
                                         options.tolerances);
  out.is_o1 = evidence.o1;
  out.is_O_1_over_n = evidence.big_o;
  out.is_ell1 = evidence.ell1;
  out.fitted_exponent = evidence.exponent;

  out.trace_terms = options.trace_terms == 0 ? n : options.trace_terms;
  Accumulator<S> trace;
  for (std::size_t k = 0; k < out.trace_terms; ++k) trace.add(ms(2 * k));
  out.trace_partial = trace.value();

  if (out.is_ell1.verdict == Verdict::yes) {
    double next_even = 0.0;
    try {
      next_even = to_double(ms(2 * out.trace_terms));
    } catch (const MissingDataError&) {
      next_even = to_double(ms(2 * out.trace_terms - 2));
    }
    if (auto tail = detail::ell1_tail(ms.family(), ms.weight_order(), out.trace_terms, next_even,
                                      evidence.exponent)) {
      out.ell1_tail_bound = tail->first;
      out.tail_bound_rigorous = tail->second;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

template <ScalarType S>
void MomentSequence<S>::ensure(std::size_t n) const {
  std::lock_guard lock(state_->mutex);
  if (state_->cache.size() > n) return;
  std::optional<PrecisionScope> scope;
  if constexpr (std::is_same_v<S, BigFloat>) scope.emplace(state_->precision);
  while (state_->cache.size() <= n) {
    const std::size_t index = state_->cache.size();
    state_->cache.push_back(compute(index));
  }
}

template <ScalarType S>
S MomentSequence<S>::compute(std::size_t n) const {
  const MomentFamily& family = state_->family;
  // Exact families go through the rational closed form; the running product
  // for even moments is kept so that materialization stays linear.
  if (family.exact_rational()) {
    const Rational* previous = nullptr;
    if (n % 2 == 0 && n >= 2 && state_->exact_even.size() == n / 2) previous = &state_->exact_even.back();
    Rational q = detail::rational_moment(family, n, previous);
    if (n % 2 == 0 && state_->exact_even.size() == n / 2) state_->exact_even.push_back(q);
    if constexpr (std::is_same_v<S, Rational>) {
      return q;
    } else {
      return from_rational<S>(q);
    }
  }
  if constexpr (std::is_same_v<S, Rational>) {
    throw PrecisionError(family.tag() + " moment is irrational", "bigfloat:256");
  } else {
    const auto np1 = static_cast<long>(n + 1);
    if (const auto* p = family.get_if<PowerLog>()) {
      if constexpr (std::is_same_v<S, double>) {
        return std::pow(static_cast<double>(np1), -to_double(p->c));
      } else {
        return pow(BigFloat(np1), -BigFloat(p->c));
      }
    }
    if (const auto* ln = family.get_if<LogNormal>()) {
      const S sigma = from_rational<S>(ln->sigma);
      const auto nn = static_cast<long>(n);
      S e = S(nn) * S(nn) * sigma * sigma / S(2);
      S value;
      if constexpr (std::is_same_v<S, double>) {
        value = std::exp(e);
      } else {
        value = exp(e);
      }
      if (!is_finite_value(value)) {
        throw PrecisionError("log_normal moment m_" + std::to_string(n) + " overflows machine range",
                             "bigfloat:" + std::to_string(std::max(256, static_cast<int>(n * n) * 2)));
      }
      return value;
    }
  }
  throw DomainError("unsupported moment family " + family.tag());
}

}  // namespace hankel

#endif  // HANKEL_MOMENTS_HPP
