#ifndef HANKEL_EXTREMAL_HPP
#define HANKEL_EXTREMAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hankel/spectral.hpp"

namespace hankel {

/// Every report from this module concerns a finitely supported measure.
inline constexpr const char* kFiniteSurrogate = "finite surrogate";

/// mu with the masses at the given indices deleted.
DiscreteMeasure remove_masses(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices);

/// mu plus new point masses (inverse of remove_masses); new points must not
/// coincide with existing ones.
DiscreteMeasure add_masses(const DiscreteMeasure& mu, const std::vector<Rational>& points,
                           const std::vector<Rational>& weights);

Matrix<Rational> hankel_matrix(const DiscreteMeasure& mu, std::size_t n);

struct PerturbationReport {
  std::vector<Rational> removed_points;
  std::vector<Rational> removed_weights;
  /// c_j / (1 - x_j^2) for each removed point.
  std::vector<Rational> coefficients;
  Matrix<Rational> h;
  Matrix<Rational> h_tilde;
  /// sum_j c_j/(1-x_j^2) v_j v_j^t, v_j = sqrt(1-x_j^2) (x_j^k); entries are rational.
  Matrix<Rational> correction;
  /// max |H - (H~ + correction)|.
  Rational deviation;
  /// Number of removed masses (metadata only).
  std::size_t removed_count = 0;
  std::string banner = kFiniteSurrogate;
};

/// Checks H_N(mu) = H_N(mu~) + sum_j (1-x_j^2)^{-1} c_j v_j v_j^t entrywise.
/// Throws HypothesisError when a removed point has |x_j| >= 1.
PerturbationReport perturbation_check(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices,
                                      std::size_t n);

/// sum_{k<M} Q_k(x) Q_k(y) / d_k = sum_k P_k(x) P_k(y) with M = #points.
Rational cd_kernel(const DiscreteMeasure& mu, const Rational& x, const Rational& y);

struct KernelResidual {
  Rational point;
  bool removed = false;
  /// |H~ xi_N(x)|^2 over the first `rows` coordinates.
  Rational squared_norm;
  double norm = 0.0;
};

struct KernelReport {
  std::size_t dimension = 0;
  std::size_t rows = 0;
  std::vector<KernelResidual> residuals;
  std::string banner = kFiniteSurrogate;
};

/// For every support point x_i: xi_N(x_i) from the N x N factorization of mu,
/// tested against H~ restricted to `rows` x N (rows >= N; 0 means N).
KernelReport kernel_vector_check(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices,
                                 std::size_t n, std::size_t rows = 0);

/// g minus its component along the rows (x_j^k)_{k<len g} for the given points,
/// so that sum_k g_k x_j^k = 0 for every x_j.
Vector<Rational> project_out_points(const Vector<Rational>& g, const std::vector<Rational>& points);

}  // namespace hankel

#endif  // HANKEL_EXTREMAL_HPP
