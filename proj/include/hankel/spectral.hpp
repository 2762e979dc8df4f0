#ifndef HANKEL_SPECTRAL_HPP
#define HANKEL_SPECTRAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hankel/orthopoly.hpp"

namespace hankel {

/// Which extremes to compute and at what precision.
struct PrecisionPolicy {
  enum class Mode { ladder, fixed };
  Mode mode = Mode::ladder;
  /// Used when mode == fixed.
  Backend backend = Backend::f64();
  bool lambda_min = true;
  bool lambda_max = true;
  bool hs_norm = true;
  /// Relative agreement (as a power of two) required between precision p and 2p.
  int agreement_bits = 40;
  /// Worker threads over grid points; results are ordered by grid index.
  unsigned jobs = 1;
};

/// Extremes of each truncation over a grid of N. Missing values are NaN and
/// carry an entry in `errors`.
struct SpectralProfile {
  std::vector<std::size_t> n_grid;
  std::vector<double> lambda_min;
  std::vector<double> lambda_max;
  std::vector<double> hs_norm_B;
  std::vector<double> trace_partial;
  std::vector<int> precision_bits;
  std::vector<std::string> errors;
  /// lambda_min non-increasing and lambda_max non-decreasing over the successful points.
  bool interlacing_ok = true;

  bool ok(std::size_t i) const { return errors[i].empty(); }
};

SpectralProfile lambda_profile(const MomentFamily& family, const std::vector<std::size_t>& n_grid,
                               const PrecisionPolicy& policy = {});

namespace detail {

/// Householder reduction of a symmetric matrix to tridiagonal form.
void tridiagonalize(Matrix<BigFloat> a, Vector<BigFloat>& diag, Vector<BigFloat>& offdiag);

}  // namespace detail

/// Eigenvalue extremes of a symmetric positive definite matrix by
/// tridiagonalization and Sturm bisection to relative width 2^-(bits/2).
struct Extremes {
  BigFloat lambda_min;
  BigFloat lambda_max;
};
Extremes sturm_extremes(const Matrix<BigFloat>& h, const BigFloat& min_lower, const BigFloat& min_upper,
                        bool want_min, bool want_max);

/// Number of eigenvalues of the tridiagonal (diag, offdiag) below x.
std::size_t sturm_count(const Vector<BigFloat>& diag, const Vector<BigFloat>& offdiag, const BigFloat& x);

enum class PlateauKind { determinate_like, indeterminate_like, inconclusive };

std::string to_string(PlateauKind kind);

struct PlateauVerdict {
  PlateauKind kind = PlateauKind::inconclusive;
  double ratio = 0.0;
  std::size_t n_first = 0;
  std::size_t n_last = 0;
  std::size_t window = 0;
  double threshold = 0.0;
};

/// Compares lambda_min at the last successful grid point with the one `window`
/// grid points earlier.
PlateauVerdict plateau_verdict(const SpectralProfile& profile, std::size_t window = 4,
                               double ratio_threshold = 0.5);

template <ScalarType S>
struct XiVector {
  S t;
  /// xi = B p(t).
  Vector<S> xi;
  /// Monic values Q_k(t); p(t) = Q(t) / sqrt(d).
  Vector<S> monic;
  /// max |U xi - Q(t)/d|: the square-root-free form of C xi = p(t).
  S residual;
  bool outside_unit_interval = false;
};

template <ScalarType S>
XiVector<S> xi_vector(const TriangularPair<S>& tp, const S& t) {
  XiVector<S> out;
  out.t = t;
  out.outside_unit_interval = !(abs_value(t) < S(1));
  out.monic = monic_values(tp, t);
  const Vector<S> scaled = out.monic.cwiseQuotient(tp.pivots);
  out.xi = tp.unit_upper_inverse * scaled;
  const Vector<S> r = tp.unit_upper * out.xi - scaled;
  out.residual = r.size() == 0 ? S(0) : S(r.cwiseAbs().maxCoeff());
  return out;
}

template <ScalarType S>
struct HXiReport {
  /// C^t C xi(t) - (t^n)_{n<N}.
  Vector<S> residual;
  S max_abs;
};

template <ScalarType S>
HXiReport<S> h_xi_identity(const TriangularPair<S>& tp, const S& t) {
  const XiVector<S> x = xi_vector(tp, t);
  const auto n = static_cast<Eigen::Index>(tp.dimension());
  Vector<S> powers(n);
  S p = S(1);
  for (Eigen::Index j = 0; j < n; ++j) {
    powers(j) = p;
    p = p * t;
  }
  HXiReport<S> out;
  out.residual = tp.unit_upper.transpose() * (tp.pivots.asDiagonal() * (tp.unit_upper * x.xi)) - powers;
  out.max_abs = n == 0 ? S(0) : S(out.residual.cwiseAbs().maxCoeff());
  return out;
}

/// A_N = B B^t against H_N. Report only: the deviation carries no pass/fail meaning.
template <ScalarType S>
struct AMatrixReport {
  Matrix<S> a;
  Matrix<S> product;
  S deviation;
  static constexpr const char* label = "experiment";
};

template <ScalarType S>
AMatrixReport<S> a_matrix_experiment(const TriangularPair<S>& tp, const MomentSequence<S>& ms) {
  const std::size_t n = tp.dimension();
  AMatrixReport<S> out;
  out.a = tp.unit_upper_inverse * tp.pivots.cwiseInverse().asDiagonal() *
          tp.unit_upper_inverse.transpose();
  out.product = out.a * build(ms, n);
  const auto dim = static_cast<Eigen::Index>(n);
  out.deviation = (out.product - Matrix<S>::Identity(dim, dim)).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace hankel

#endif  // HANKEL_SPECTRAL_HPP
