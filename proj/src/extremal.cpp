#include "hankel/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hankel {

namespace {

Rational power(const Rational& x, std::size_t n) {
  Rational p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= x;
  return p;
}

std::set<std::size_t> checked_indices(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices) {
  std::set<std::size_t> out;
  for (std::size_t i : indices) {
    if (i >= mu.size()) {
      throw DomainError("removal index " + std::to_string(i) + " out of range for " +
                        std::to_string(mu.size()) + " points");
    }
    if (!out.insert(i).second) throw DomainError("removal index " + std::to_string(i) + " repeated");
  }
  return out;
}

}  // namespace

DiscreteMeasure remove_masses(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices) {
  const auto drop = checked_indices(mu, indices);
  if (drop.size() == mu.size()) throw EmptyMeasureError("removing every point leaves the zero measure");
  std::vector<Rational> points, weights;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (drop.count(i)) continue;
    points.push_back(mu.points()[i]);
    weights.push_back(mu.weights()[i]);
  }
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure add_masses(const DiscreteMeasure& mu, const std::vector<Rational>& points,
                           const std::vector<Rational>& weights) {
  std::vector<Rational> p = mu.points(), w = mu.weights();
  p.insert(p.end(), points.begin(), points.end());
  w.insert(w.end(), weights.begin(), weights.end());
  return DiscreteMeasure(std::move(p), std::move(w));
}

Matrix<Rational> hankel_matrix(const DiscreteMeasure& mu, std::size_t n) {
  return build(MomentSequence<Rational>(Discrete{mu}), n);
}

PerturbationReport perturbation_check(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices,
                                      std::size_t n) {
  if (n < 1) throw DomainError("perturbation_check: N must be at least 1");
  const auto drop = checked_indices(mu, indices);
  PerturbationReport report;
  for (std::size_t i : drop) {
    const Rational& x = mu.points()[i];
    if (!(x * x < 1)) {
      throw HypothesisError("removed point " + to_string(x) + " is outside (-1, 1)");
    }
    report.removed_points.push_back(x);
    report.removed_weights.push_back(mu.weights()[i]);
    report.coefficients.push_back(mu.weights()[i] / (1 - x * x));
  }
  report.removed_count = drop.size();
  report.h = hankel_matrix(mu, n);
  const auto dim = static_cast<Eigen::Index>(n);
  if (drop.size() == mu.size()) {
    report.h_tilde = Matrix<Rational>::Zero(dim, dim);
  } else {
    report.h_tilde = hankel_matrix(remove_masses(mu, indices), n);
  }
  report.correction = Matrix<Rational>::Zero(dim, dim);
  for (std::size_t j = 0; j < report.removed_points.size(); ++j) {
    const Rational& x = report.removed_points[j];
    const Rational s2 = 1 - x * x;
    for (Eigen::Index k = 0; k < dim; ++k)
      for (Eigen::Index l = 0; l < dim; ++l) {
        // v_k v_l = (1 - x^2) x^{k+l}
        const Rational vv = s2 * power(x, static_cast<std::size_t>(k + l));
        report.correction(k, l) += report.coefficients[j] * vv;
      }
  }
  report.deviation = (report.h - report.h_tilde - report.correction).cwiseAbs().maxCoeff();
  return report;
}

Rational cd_kernel(const DiscreteMeasure& mu, const Rational& x, const Rational& y) {
  if (mu.empty()) throw EmptyMeasureError("cd_kernel needs a non-empty measure");
  const TriangularPair<Rational> tp = factor(hankel_matrix(mu, mu.size()));
  const Vector<Rational> qx = monic_values(tp, x);
  const Vector<Rational> qy = monic_values(tp, y);
  Rational sum = 0;
  for (Eigen::Index k = 0; k < qx.size(); ++k) sum += qx(k) * qy(k) / tp.pivots(k);
  return sum;
}

KernelReport kernel_vector_check(const DiscreteMeasure& mu, const std::vector<std::size_t>& indices,
                                 std::size_t n, std::size_t rows) {
  const auto drop = checked_indices(mu, indices);
  for (std::size_t i : drop) {
    const Rational& x = mu.points()[i];
    if (!(x * x < 1)) throw HypothesisError("removed point " + to_string(x) + " is outside (-1, 1)");
  }
  if (rows == 0) rows = n;
  if (rows < n) throw DomainError("kernel_vector_check: rows must be at least N");
  const TriangularPair<Rational> tp = factor(hankel_matrix(mu, n));

  MomentSequence<Rational> tilde = drop.size() == mu.size()
                                       ? MomentSequence<Rational>(Explicit{std::vector<Rational>(rows + n, 0)})
                                       : MomentSequence<Rational>(Discrete{remove_masses(mu, indices)});
  KernelReport report;
  report.dimension = n;
  report.rows = rows;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const XiVector<Rational> xi = xi_vector(tp, mu.points()[i]);
    const Vector<Rational> r = matvec_naive(tilde, xi.xi, rows);
    KernelResidual kr;
    kr.point = mu.points()[i];
    kr.removed = drop.count(i) > 0;
    kr.squared_norm = squared_norm(r);
    kr.norm = std::sqrt(kr.squared_norm.convert_to<double>());
    report.residuals.push_back(kr);
  }
  return report;
}

Vector<Rational> project_out_points(const Vector<Rational>& g, const std::vector<Rational>& points) {
  if (points.empty()) return g;
  const auto len = g.size();
  const auto m = static_cast<Eigen::Index>(points.size());
  if (m > len) throw DomainError("project_out_points: more points than coefficients");
  Matrix<Rational> v(m, len);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < len; ++k) v(j, k) = power(points[static_cast<std::size_t>(j)], static_cast<std::size_t>(k));
  const Matrix<Rational> gram = v * v.transpose();
  const TriangularPair<Rational> tp = factor(gram);
  const Vector<Rational> coeffs = tp.unit_upper_inverse * tp.pivots.cwiseInverse().asDiagonal() *
                                  (tp.unit_upper_inverse.transpose() * (v * g));
  return g - v.transpose() * coeffs;
}

}  // namespace hankel
