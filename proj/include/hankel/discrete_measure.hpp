#ifndef HANKEL_DISCRETE_MEASURE_HPP
#define HANKEL_DISCRETE_MEASURE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "hankel/rational.hpp"

namespace hankel {

/// Finitely supported positive measure sum_i c_i delta_{x_i} with rational data.
/// Points are kept strictly increasing; weights are strictly positive.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Sorts by point; throws DomainError on repeated points, non-positive
  /// weights or mismatched lengths.
  DiscreteMeasure(std::vector<Rational> points, std::vector<Rational> weights);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Rational>& points() const noexcept { return points_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }

  /// Index of the support point equal to x, or size() if x is not a support point.
  std::size_t find(const Rational& x) const;

  /// m_n = sum_i c_i x_i^n, exact.
  Rational moment(std::size_t n) const;

  /// Largest |x_i| (0 for the empty measure).
  Rational max_abs_point() const;

  DiscreteMeasure scaled(const Rational& factor) const;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<Rational> points_;
  std::vector<Rational> weights_;
};

}  // namespace hankel

#endif  // HANKEL_DISCRETE_MEASURE_HPP
