#ifndef HANKEL_TESTS_SUPPORT_HPP
#define HANKEL_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hankel/extremal.hpp"

namespace hankel::testing {

/// Fixed-seed generators for the property suites.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20240611) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// p/q with q <= max_den, strictly inside (-1, 1).
  Rational open_unit(long max_den = 12) {
    const long q = integer(2, max_den);
    const long p = integer(-(q - 1), q - 1);
    return Rational(p, q);
  }

  Rational positive(long max_num = 9, long max_den = 9) {
    return Rational(integer(1, max_num), integer(1, max_den));
  }

  /// Measure with `m` distinct points in (-1, 1).
  DiscreteMeasure measure(std::size_t m) {
    std::set<Rational> seen;
    std::vector<Rational> points, weights;
    while (points.size() < m) {
      const Rational x = open_unit();
      if (!seen.insert(x).second) continue;
      points.push_back(x);
      weights.push_back(positive());
    }
    return DiscreteMeasure(points, weights);
  }

  DiscreteMeasure measure_up_to(std::size_t max_m) {
    return measure(static_cast<std::size_t>(integer(1, static_cast<long>(max_m))));
  }

  /// Random non-empty proper subset of 0..m-1 (empty when m == 1).
  std::vector<std::size_t> subset(std::size_t m, bool allow_empty = true) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i) {
      if (integer(0, 1) == 1) out.push_back(i);
    }
    if (out.size() == m) out.pop_back();
    if (!allow_empty && out.empty() && m > 1) out.push_back(static_cast<std::size_t>(integer(0, static_cast<long>(m) - 1)));
    return out;
  }

  Vector<double> vector(std::size_t n) {
    Vector<double> v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = uniform(-1, 1);
    return v;
  }

  Vector<Rational> rational_vector(std::size_t n) {
    Vector<Rational> v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Rational(integer(-9, 9), integer(1, 7));
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Vector<Rational> rational_vec(std::initializer_list<Rational> xs) {
  Vector<Rational> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Vector<double> double_vec(std::initializer_list<double> xs) {
  Vector<double> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// e_k of length n.
template <ScalarType S>
Vector<S> unit(std::size_t n, std::size_t k) {
  Vector<S> v = Vector<S>::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(k)) = S(1);
  return v;
}

/// v_k = e_k - e_{k+2} of length n.
template <ScalarType S>
Vector<S> v_k(std::size_t n, std::size_t k) {
  Vector<S> v = unit<S>(n, k);
  v(static_cast<Eigen::Index>(k + 2)) = S(-1);
  return v;
}

inline DiscreteMeasure three_point() {
  return DiscreteMeasure({Rational(-1, 2), Rational(0), Rational(1, 2)},
                         {Rational(1, 4), Rational(1, 2), Rational(1, 4)});
}

}  // namespace hankel::testing

#endif  // HANKEL_TESTS_SUPPORT_HPP
