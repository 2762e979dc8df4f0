#ifndef HANKEL_DETAIL_LDLT_HPP
#define HANKEL_DETAIL_LDLT_HPP

#include <cstddef>

#include "hankel/scalar.hpp"

namespace hankel::detail {

/// Square-root-free factorization H = U^t diag(d) U, U unit upper triangular.
/// `pivots_ok` counts the leading pivots that came out strictly positive; the
/// factorization stops at the first failure, leaving the rest of U and d zero.
template <ScalarType S>
struct UnitLdlt {
  Matrix<S> unit_upper;
  Vector<S> pivots;
  std::size_t pivots_ok = 0;

  bool complete() const { return pivots_ok == static_cast<std::size_t>(pivots.size()); }
};

template <ScalarType S>
UnitLdlt<S> unit_ldlt(const Matrix<S>& h) {
  const Eigen::Index n = h.rows();
  UnitLdlt<S> out;
  out.unit_upper = Matrix<S>::Zero(n, n);
  out.pivots = Vector<S>::Zero(n);
  // scaled(k, j) = U(k, j) * d_k, kept to halve the multiplications.
  Matrix<S> scaled = Matrix<S>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    S d = h(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= scaled(k, j) * out.unit_upper(k, j);
    if (!(d > 0) || !is_finite_value(d)) return out;
    out.pivots(j) = d;
    out.unit_upper(j, j) = S(1);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      S v = h(j, i);
      for (Eigen::Index k = 0; k < j; ++k) v -= scaled(k, j) * out.unit_upper(k, i);
      out.unit_upper(j, i) = v / d;
      scaled(j, i) = v;
    }
    ++out.pivots_ok;
  }
  return out;
}

/// Inverse of a unit upper triangular matrix by back substitution, column by column.
template <ScalarType S>
Matrix<S> unit_upper_inverse(const Matrix<S>& u) {
  const Eigen::Index n = u.rows();
  Matrix<S> inv = Matrix<S>::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    inv(col, col) = S(1);
    for (Eigen::Index row = col - 1; row >= 0; --row) {
      S acc = S(0);
      for (Eigen::Index k = row + 1; k <= col; ++k) acc -= u(row, k) * inv(k, col);
      inv(row, col) = acc;
    }
  }
  return inv;
}

}  // namespace hankel::detail

#endif  // HANKEL_DETAIL_LDLT_HPP
