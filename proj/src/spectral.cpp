#include "hankel/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>

namespace hankel {

namespace detail {

void tridiagonalize(Matrix<BigFloat> a, Vector<BigFloat>& diag, Vector<BigFloat>& offdiag) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Vector<BigFloat> v = a.col(k).tail(m);
    BigFloat norm2(0);
    for (Eigen::Index i = 0; i < m; ++i) norm2 += v(i) * v(i);
    if (norm2.is_zero()) continue;
    const BigFloat alpha = v(0).sign() < 0 ? sqrt(norm2) : -sqrt(norm2);
    v(0) -= alpha;
    BigFloat vv(0);
    for (Eigen::Index i = 0; i < m; ++i) vv += v(i) * v(i);
    if (vv.is_zero()) continue;
    // A22 <- (I - 2vv^t/vv) A22 (I - 2vv^t/vv), applied as a symmetric rank-2 update.
    Vector<BigFloat> p = a.bottomRightCorner(m, m) * v;
    const BigFloat scale = BigFloat(2) / vv;
    for (Eigen::Index i = 0; i < m; ++i) p(i) *= scale;
    BigFloat pv(0);
    for (Eigen::Index i = 0; i < m; ++i) pv += p(i) * v(i);
    const BigFloat kk = pv / vv;
    for (Eigen::Index i = 0; i < m; ++i) p(i) -= kk * v(i);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) {
        BigFloat& x = a(k + 1 + i, k + 1 + j);
        x -= v(i) * p(j) + p(i) * v(j);
        a(k + 1 + j, k + 1 + i) = x;
      }
    a(k + 1, k) = alpha;
    a(k, k + 1) = alpha;
    for (Eigen::Index i = 1; i < m; ++i) {
      a(k + 1 + i, k) = BigFloat(0);
      a(k, k + 1 + i) = BigFloat(0);
    }
  }
  diag.resize(n);
  offdiag.resize(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i < n; ++i) diag(i) = a(i, i);
  for (Eigen::Index i = 0; i + 1 < n; ++i) offdiag(i) = a(i + 1, i);
}

}  // namespace detail

std::size_t sturm_count(const Vector<BigFloat>& diag, const Vector<BigFloat>& offdiag, const BigFloat& x) {
  std::size_t count = 0;
  const int bits = std::max(diag.size() > 0 ? diag(0).precision() : 64, x.precision());
  BigFloat q(0);
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (i == 0) {
      q = diag(0) - x;
    } else {
      q = diag(i) - x - offdiag(i - 1) * offdiag(i - 1) / q;
    }
    if (q.is_zero()) q = -ldexp(abs(x) + BigFloat(1), -bits);
    if (q.sign() < 0) ++count;
  }
  return count;
}

namespace {

// Smallest x with count(x) >= target, bisected to relative width 2^-(bits/2).
BigFloat bisect(const Vector<BigFloat>& diag, const Vector<BigFloat>& offdiag, BigFloat lo, BigFloat hi,
                std::size_t target, int bits) {
  for (int i = 0; i < 4096 && sturm_count(diag, offdiag, lo) >= target; ++i) lo = ldexp(lo, -1);
  for (int i = 0; i < 4096 && sturm_count(diag, offdiag, hi) < target; ++i) hi = ldexp(hi, 1);
  const BigFloat tol = ldexp(BigFloat(1), -bits / 2);
  for (int i = 0; i < 4 * bits + 64; ++i) {
    if (hi - lo <= tol * abs(hi)) break;
    const BigFloat mid = ldexp(lo + hi, -1);
    if (sturm_count(diag, offdiag, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return ldexp(lo + hi, -1);
}

}  // namespace

Extremes sturm_extremes(const Matrix<BigFloat>& h, const BigFloat& min_lower, const BigFloat& min_upper,
                        bool want_min, bool want_max) {
  const int bits = BigFloat::context_precision();
  Vector<BigFloat> diag, offdiag;
  detail::tridiagonalize(h, diag, offdiag);
  const auto n = static_cast<std::size_t>(h.rows());
  Extremes out{BigFloat(0), BigFloat(0)};
  if (want_min) out.lambda_min = bisect(diag, offdiag, min_lower, min_upper, 1, bits);
  if (want_max) {
    BigFloat lo = h(0, 0);
    BigFloat trace(0);
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
      if (h(k, k) > lo) lo = h(k, k);
      trace += h(k, k);
    }
    // Eigenvalues below x number n exactly when x exceeds lambda_max.
    out.lambda_max = bisect(diag, offdiag, ldexp(lo, -1), ldexp(trace, 1), n, bits);
  }
  return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
  double lambda_min = kNaN;
  double lambda_max = kNaN;
  double hs = kNaN;
  double trace = kNaN;
  int bits = 0;
  std::string error;
};

bool agree(double a, double b, int bits) {
  if (a == b || (std::isnan(a) && std::isnan(b))) return true;
  return std::abs(a - b) <= std::ldexp(std::abs(b), -bits);
}

PointResult at_double(const MomentFamily& family, std::size_t n, const PrecisionPolicy& policy) {
  PointResult r;
  r.bits = 53;
  MomentSequence<double> ms(family);
  const Matrix<double> h = build(ms, n);
  r.trace = h.trace();
  Eigen::SelfAdjointEigenSolver<Matrix<double>> es(h, Eigen::EigenvaluesOnly);
  if (policy.lambda_min) r.lambda_min = es.eigenvalues()(0);
  if (policy.lambda_max) r.lambda_max = es.eigenvalues()(static_cast<Eigen::Index>(n) - 1);
  if (policy.hs_norm) r.hs = std::sqrt(factor(h).B().squaredNorm());
  return r;
}

PointResult at_bits(const MomentFamily& family, std::size_t n, const PrecisionPolicy& policy, int bits) {
  PrecisionScope scope(bits);
  PointResult r;
  r.bits = bits;
  MomentSequence<BigFloat> ms(family);
  const Matrix<BigFloat> h = build(ms, n);
  r.trace = h.trace().to_double();
  BigFloat lower(0), upper(0), hs2(0);
  if (policy.lambda_min || policy.hs_norm) {
    const TriangularPair<BigFloat> tp = factor(h);
    // diag(H^-1)_k = sum_j W(k,j)^2 / d_j with W = U^-1; its trace is |B|_F^2.
    Vector<BigFloat> inv_diag = Vector<BigFloat>::Zero(h.rows());
    for (Eigen::Index j = 0; j < h.rows(); ++j)
      for (Eigen::Index k = 0; k <= j; ++k) {
        const BigFloat& w = tp.unit_upper_inverse(k, j);
        inv_diag(k) += w * w / tp.pivots(j);
      }
    for (Eigen::Index k = 0; k < h.rows(); ++k) hs2 += inv_diag(k);
    lower = BigFloat(1) / hs2;
    upper = BigFloat(1) / inv_diag.maxCoeff();
    r.hs = sqrt(hs2).to_double();
  }
  if (!policy.hs_norm) r.hs = kNaN;
  if (policy.lambda_min || policy.lambda_max) {
    const Extremes e = sturm_extremes(h, lower, upper, policy.lambda_min, policy.lambda_max);
    if (policy.lambda_min) r.lambda_min = e.lambda_min.to_double();
    if (policy.lambda_max) r.lambda_max = e.lambda_max.to_double();
  }
  return r;
}

PointResult ladder_point(const MomentFamily& family, std::size_t n, const PrecisionPolicy& policy) {
  const bool max_only = !policy.lambda_min && !policy.hs_norm;
  if (max_only || n <= 12) {
    try {
      PointResult r = at_double(family, n, policy);
      // The largest eigenvalue is well conditioned; the smallest is trusted
      // at machine precision only when it is clearly resolved.
      if (max_only) return r;
      if (r.lambda_min > 0 && r.lambda_min / r.lambda_max > std::ldexp(1.0, -40)) return r;
    } catch (const Error&) {
    }
  }
  int bits = ladder_start_bits(n, moment_magnitude_bits(family, n));
  std::optional<PointResult> previous;
  for (;;) {
    try {
      PointResult current = at_bits(family, n, policy, bits);
      if (previous && agree(previous->lambda_min, current.lambda_min, policy.agreement_bits) &&
          agree(previous->lambda_max, current.lambda_max, policy.agreement_bits) &&
          agree(previous->hs, current.hs, policy.agreement_bits)) {
        return current;
      }
      previous = current;
    } catch (const PositivityError&) {
      previous.reset();
      if (family.exact_rational()) {
        const auto exact = detail::unit_ldlt(build(MomentSequence<Rational>(family), n));
        if (!exact.complete()) {
          PointResult r;
          r.bits = bits;
          r.error = "Hankel truncation is not positive definite: pivot " + std::to_string(exact.pivots_ok + 1) +
                    " is not positive (exact)";
          return r;
        }
      }
    }
    if (bits >= BigFloat::kMaxPrecision) {
      PointResult r;
      r.bits = bits;
      r.error = "precision exhausted at " + std::to_string(bits) + " bits";
      return r;
    }
    bits = std::min(2 * bits, BigFloat::kMaxPrecision);
  }
}

PointResult fixed_point(const MomentFamily& family, std::size_t n, const PrecisionPolicy& policy) {
  switch (policy.backend.kind) {
    case Backend::Kind::f64:
      return at_double(family, n, policy);
    case Backend::Kind::bigfloat:
      return at_bits(family, n, policy, policy.backend.bits);
    case Backend::Kind::rational:
      break;
  }
  throw UnsupportedBackendError("eigenvalues need a floating backend");
}

PointResult compute_point(const MomentFamily& family, std::size_t n, const PrecisionPolicy& policy) {
  try {
    if (n < 1) throw DomainError("grid sizes must be positive");
    return policy.mode == PrecisionPolicy::Mode::ladder ? ladder_point(family, n, policy)
                                                        : fixed_point(family, n, policy);
  } catch (const std::exception& e) {
    PointResult r;
    r.error = e.what();
    return r;
  }
}

}  // namespace

SpectralProfile lambda_profile(const MomentFamily& family, const std::vector<std::size_t>& n_grid,
                               const PrecisionPolicy& policy) {
  std::vector<PointResult> results(n_grid.size());
  const unsigned jobs = std::max(1U, std::min<unsigned>(policy.jobs, static_cast<unsigned>(n_grid.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n_grid.size(); ++i) results[i] = compute_point(family, n_grid[i], policy);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n_grid.size(); i = next++) {
          results[i] = compute_point(family, n_grid[i], policy);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  SpectralProfile profile;
  profile.n_grid = n_grid;
  for (const auto& r : results) {
    profile.lambda_min.push_back(r.lambda_min);
    profile.lambda_max.push_back(r.lambda_max);
    profile.hs_norm_B.push_back(r.hs);
    profile.trace_partial.push_back(r.trace);
    profile.precision_bits.push_back(r.bits);
    profile.errors.push_back(r.error);
  }
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (!profile.ok(i)) continue;
    if (last && n_grid[*last] <= n_grid[i]) {
      if (profile.lambda_min[i] > profile.lambda_min[*last]) profile.interlacing_ok = false;
      if (profile.lambda_max[i] < profile.lambda_max[*last]) profile.interlacing_ok = false;
    }
    last = i;
  }
  return profile;
}

std::string to_string(PlateauKind kind) {
  switch (kind) {
    case PlateauKind::determinate_like:
      return "determinate-like";
    case PlateauKind::indeterminate_like:
      return "indeterminate-like";
    case PlateauKind::inconclusive:
      break;
  }
  return "inconclusive";
}

PlateauVerdict plateau_verdict(const SpectralProfile& profile, std::size_t window, double ratio_threshold) {
  PlateauVerdict out;
  out.window = window;
  out.threshold = ratio_threshold;
  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < profile.n_grid.size(); ++i) {
    if (profile.ok(i) && profile.lambda_min[i] > 0) good.push_back(i);
  }
  if (window == 0 || good.size() < window + 1) return out;
  const std::size_t last = good.back();
  const std::size_t first = good[good.size() - 1 - window];
  out.n_first = profile.n_grid[first];
  out.n_last = profile.n_grid[last];
  out.ratio = profile.lambda_min[last] / profile.lambda_min[first];
  out.kind = out.ratio > ratio_threshold ? PlateauKind::indeterminate_like : PlateauKind::determinate_like;
  return out;
}

}  // namespace hankel
