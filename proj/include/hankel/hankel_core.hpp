#ifndef HANKEL_HANKEL_CORE_HPP
#define HANKEL_HANKEL_CORE_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hankel/moments.hpp"

namespace hankel {

/// N x N truncation (m_{k+l}).
template <ScalarType S>
Matrix<S> build(const MomentSequence<S>& ms, std::size_t n) {
  if (n < 1) throw DomainError("build: dimension must be at least 1");
  if constexpr (std::is_same_v<S, double>) {
    if (ms.family().template get_if<LogNormal>() && n > 8) {
      throw PrecisionError("log_normal Hankel matrix with N = " + std::to_string(n) +
                               " exceeds machine range",
                           "bigfloat:" + std::to_string(4 * n + 64));
    }
  }
  const Vector<S> m = ms.head(2 * n - 1);
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix<S> h(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    for (Eigen::Index l = 0; l < dim; ++l) h(k, l) = m(k + l);
  return h;
}

/// (sum_{k < len g} m_{n+k} g_k)_{n < N}.
template <ScalarType S>
Vector<S> matvec_naive(const MomentSequence<S>& ms, const Vector<S>& g, std::size_t n) {
  const auto len = static_cast<std::size_t>(g.size());
  if (len > n) throw DomainError("matvec: vector longer than the truncation");
  Vector<S> y(static_cast<Eigen::Index>(n));
  if (len == 0) {
    y.setZero();
    return y;
  }
  const Vector<S> m = ms.head(n + len - 1);
  for (std::size_t row = 0; row < n; ++row) {
    Accumulator<S> acc;
    for (std::size_t k = 0; k < len; ++k) {
      acc.add(m(static_cast<Eigen::Index>(row + k)) * g(static_cast<Eigen::Index>(k)));
    }
    y(static_cast<Eigen::Index>(row)) = acc.value();
  }
  return y;
}

/// Same product by cyclic convolution of (m_0 .. m_{2N-2}) with the reversed g.
Vector<double> matvec_fft(const MomentSequence<double>& ms, const Vector<double>& g, std::size_t n);

template <ScalarType S>
  requires(!std::is_same_v<S, double>)
Vector<S> matvec_fft(const MomentSequence<S>&, const Vector<S>&, std::size_t) {
  throw UnsupportedBackendError("matvec_fft supports the f64 backend only");
}

/// (S^p g)_k = g_{k+p}.
template <ScalarType S>
Vector<S> shift(const Vector<S>& g, std::size_t p) {
  Vector<S> out = Vector<S>::Zero(g.size());
  const auto pp = static_cast<Eigen::Index>(p);
  for (Eigen::Index k = 0; k + pp < g.size(); ++k) out(k) = g(k + pp);
  return out;
}

/// (S*^p g)_k = g_{k-p}; the result is p entries longer so no mass is lost.
template <ScalarType S>
Vector<S> shift_adjoint(const Vector<S>& g, std::size_t p) {
  const auto pp = static_cast<Eigen::Index>(p);
  Vector<S> out = Vector<S>::Zero(g.size() + pp);
  out.segment(pp, g.size()) = g;
  return out;
}

template <ScalarType S>
S squared_norm(const Vector<S>& g) {
  Accumulator<S> acc;
  for (Eigen::Index k = 0; k < g.size(); ++k) acc.add(g(k) * g(k));
  return acc.value();
}

template <ScalarType S>
struct SeriesApplyReport {
  Vector<S> result;
  /// l2 norm of each added term S^{2l} H_nu g.
  std::vector<double> partial_norm_deltas;
  bool converged = false;
  std::size_t terms = 0;
  /// H_nu g over the working length.
  Vector<S> h_nu_g;
  /// S^{2L+2} H_nu g for the last L used: (I - S^2) result = h - remainder.
  Vector<S> remainder;
};

struct SeriesOptions {
  std::size_t max_terms = 10000;
  double tolerance = 1e-12;
  /// Length on which H_nu g is formed; 0 means N.
  std::size_t working_length = 0;
};

/// sum_l S^{2l} H_nu g, truncated to length N.
template <ScalarType S>
SeriesApplyReport<S> apply_H_via_series(const MomentSequence<S>& ms, const Vector<S>& g,
                                        std::size_t n, const SeriesOptions& options = {}) {
  if (n < 1 || options.max_terms < 1) throw DomainError("apply_H_via_series: N and L must be positive");
  const std::size_t work = std::max(n, options.working_length);
  const MomentSequence<S> nu = nu_moments(ms);
  SeriesApplyReport<S> report;
  report.h_nu_g = matvec_naive(nu, g, work);
  Vector<S> sum = Vector<S>::Zero(static_cast<Eigen::Index>(work));
  std::size_t l = 0;
  for (; l < options.max_terms; ++l) {
    const Vector<S> term = shift(report.h_nu_g, 2 * l);
    sum += term;
    const S sq = squared_norm(term);
    const double delta = std::sqrt(to_double(sq));
    report.partial_norm_deltas.push_back(delta);
    if (sq == S(0) || delta < options.tolerance) {
      report.converged = true;
      ++l;
      break;
    }
  }
  report.terms = l;
  report.remainder = shift(report.h_nu_g, 2 * l);
  report.result = sum.head(static_cast<Eigen::Index>(n));
  return report;
}

/// Power-law trend of a positive quantity over a grid.
struct TrendFit {
  Verdict verdict = Verdict::inconclusive;
  bool heuristic = true;
  double slope = 0.0;
  std::vector<std::size_t> grid;
  std::vector<double> values;
};

struct DomainOptions {
  /// Truncation sizes K; empty means 9 log-spaced points over [1e3, 1e5].
  std::vector<std::size_t> k_grid;
  /// Rows kept of u_n = sum_{k<K} m_{n+k} g_k; 0 means K.
  std::size_t n_window = 0;
  double bounded_below = 0.05;
  double divergent_above = 0.2;
};

std::vector<std::size_t> default_k_grid();

struct DomainVerdict {
  /// Bounded trend of Q_K = sum_{k,l<K} m_{k+l} g_k g_l (yes = bounded).
  TrendFit in_V_mu;
  /// Bounded trend of sum_n u_n^2 (yes = bounded); never stronger than in_V_mu.
  TrendFit in_D_H;
};

/// Slope of log(value) against log(grid) by least squares, classified by the thresholds.
TrendFit fit_trend(std::vector<std::size_t> grid, std::vector<double> values, double bounded_below,
                   double divergent_above);

DomainVerdict domain_diagnostic(const MomentSequence<double>& ms,
                                const std::function<double(std::size_t)>& g,
                                const DomainOptions& options = {});

}  // namespace hankel

#endif  // HANKEL_HANKEL_CORE_HPP
