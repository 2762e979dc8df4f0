#ifndef HANKEL_ORTHOPOLY_HPP
#define HANKEL_ORTHOPOLY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hankel/detail/ldlt.hpp"
#include "hankel/hankel_core.hpp"

namespace hankel {

/// Orthonormal-polynomial change of basis for an N x N Hankel truncation.
///
/// Stored square-root free: H = U^t D U with U unit upper triangular and D
/// the positive pivots. Then C = D^{1/2} U and B = C^{-1} = U^{-1} D^{-1/2};
/// column n of B holds the coefficients of P_n, column n of C expands x^n in
/// the P_k. The monic polynomials Q_n = sqrt(d_n) P_n have coefficient
/// columns in U^{-1} and stay exact under the rational backend.
template <ScalarType S>
struct TriangularPair {
  Matrix<S> unit_upper;
  Vector<S> pivots;
  Matrix<S> unit_upper_inverse;

  std::size_t dimension() const { return static_cast<std::size_t>(pivots.size()); }

  Matrix<S> C() const
    requires FloatScalar<S>
  {
    return pivots.cwiseSqrt().asDiagonal() * unit_upper;
  }
  Matrix<S> B() const
    requires FloatScalar<S>
  {
    return unit_upper_inverse * pivots.cwiseSqrt().cwiseInverse().asDiagonal();
  }
  /// U^t D U.
  Matrix<S> reconstruct() const { return unit_upper.transpose() * pivots.asDiagonal() * unit_upper; }
};

template <ScalarType S>
TriangularPair<S> factor(const Matrix<S>& h) {
  auto ldlt = detail::unit_ldlt(h);
  if (!ldlt.complete()) {
    const std::size_t failed = ldlt.pivots_ok + 1;
    throw PositivityError("Hankel truncation is not positive definite: pivot " + std::to_string(failed) +
                              " is not positive" +
                              (is_exact_v<S> ? "" : " (working precision may be exhausted)"),
                          failed, !is_exact_v<S>);
  }
  TriangularPair<S> tp;
  tp.unit_upper = std::move(ldlt.unit_upper);
  tp.pivots = std::move(ldlt.pivots);
  tp.unit_upper_inverse = detail::unit_upper_inverse(tp.unit_upper);
  return tp;
}

template <ScalarType S>
TriangularPair<S> factor(const MomentSequence<S>& ms, std::size_t n) {
  return factor(build(ms, n));
}

/// Starting bits of the precision ladder for an N x N truncation whose
/// largest moment is about 2^magnitude_bits.
int ladder_start_bits(std::size_t n, long magnitude_bits = 0);

/// Binary exponent of the largest |m_j|, j <= 2N-2.
long moment_magnitude_bits(const MomentFamily& family, std::size_t n);

template <ScalarType S>
struct LadderResult {
  TriangularPair<S> pair;
  int bits = 0;
};

/// Big-float factorization starting at ladder_start_bits(N), doubling on
/// pivot failure up to BigFloat::kMaxPrecision. Fails with PositivityError
/// (precision_suspected = false) when the cap is hit.
LadderResult<BigFloat> factor_ladder(const MomentFamily& family, std::size_t n);

/// Q_0(x) .. Q_{N-1}(x): the monic orthogonal polynomials.
template <ScalarType S>
Vector<S> monic_values(const TriangularPair<S>& tp, const S& x) {
  const auto n = static_cast<Eigen::Index>(tp.dimension());
  Vector<S> powers(n);
  S p = S(1);
  for (Eigen::Index j = 0; j < n; ++j) {
    powers(j) = p;
    p = p * x;
  }
  return tp.unit_upper_inverse.transpose() * powers;
}

/// P_0(x) .. P_{N-1}(x).
template <FloatScalar S>
Vector<S> eval_polys(const TriangularPair<S>& tp, const S& x) {
  return monic_values(tp, x).cwiseQuotient(tp.pivots.cwiseSqrt());
}

/// sum_{k<=n} c_{k,n} P_k(x) for every n; equals (x^n) identically.
/// Evaluated as U^t Q(x), which is the same sum without square roots.
template <ScalarType S>
Vector<S> monomials_from_polys(const TriangularPair<S>& tp, const S& x) {
  return tp.unit_upper.transpose() * monic_values(tp, x);
}

template <ScalarType S>
struct PFunction {
  /// sum_{n <= n_max} P_n(z)^2 (exact under the rational backend).
  S sum_of_squares = S(0);
  /// P_{n_max}(z)^2.
  S last_increment = S(0);

  S value() const
    requires FloatScalar<S>
  {
    using std::sqrt;
    return sqrt(sum_of_squares);
  }
};

template <ScalarType S>
PFunction<S> p_function(const TriangularPair<S>& tp, const S& z, std::size_t n_max) {
  if (n_max >= tp.dimension()) throw DomainError("p_function: n_max must be below N");
  const Vector<S> q = monic_values(tp, z);
  PFunction<S> out;
  for (std::size_t k = 0; k <= n_max; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    const S inc = q(i) * q(i) / tp.pivots(i);
    out.sum_of_squares += inc;
    out.last_increment = inc;
  }
  return out;
}

/// x P_n = beta_{n+1} P_{n+1} + alpha_n P_n + beta_n P_{n-1}.
/// alpha has N-1 entries (alpha_0 .. alpha_{N-2}); beta_squared holds
/// beta_1^2 .. beta_{N-1}^2, so beta_squared[n-1] = d_n / d_{n-1}.
template <ScalarType S>
struct RecurrenceCoeffs {
  std::vector<S> alpha;
  std::vector<S> beta_squared;

  std::vector<S> beta() const
    requires FloatScalar<S>
  {
    using std::sqrt;
    std::vector<S> out;
    for (const auto& b2 : beta_squared) out.push_back(sqrt(b2));
    return out;
  }
};

template <ScalarType S>
RecurrenceCoeffs<S> recurrence(const TriangularPair<S>& tp) {
  const auto n = static_cast<Eigen::Index>(tp.dimension());
  if (n < 3) throw DomainError("recurrence: N must be at least 3");
  const Matrix<S>& w = tp.unit_upper_inverse;
  RecurrenceCoeffs<S> out;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    // Subleading coefficient of the monic Q_{k+1} = (x - alpha_k) Q_k - b_k Q_{k-1}.
    const S previous = k == 0 ? S(0) : S(w(k - 1, k));
    out.alpha.push_back(previous - w(k, k + 1));
  }
  for (Eigen::Index k = 1; k < n; ++k) out.beta_squared.push_back(tp.pivots(k) / tp.pivots(k - 1));
  return out;
}

/// P_0(x) .. P_{count-1}(x) rebuilt from the recurrence, with P_0 = 1/sqrt(m_0).
template <FloatScalar S>
Vector<S> polys_from_recurrence(const RecurrenceCoeffs<S>& rc, const S& m0, const S& x,
                                std::size_t count) {
  using std::sqrt;
  const std::vector<S> beta = rc.beta();
  if (count > rc.alpha.size() + 1) throw DomainError("polys_from_recurrence: too few coefficients");
  Vector<S> p(static_cast<Eigen::Index>(count));
  if (count == 0) return p;
  p(0) = S(1) / sqrt(m0);
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    S next = (x - rc.alpha[k]) * p(i);
    if (k > 0) next -= beta[k - 1] * p(i - 1);
    p(i + 1) = next / beta[k];
  }
  return p;
}

}  // namespace hankel

#endif  // HANKEL_ORTHOPOLY_HPP
