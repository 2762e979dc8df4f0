#include "hankel/hankel_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

namespace hankel {

Vector<double> matvec_fft(const MomentSequence<double>& ms, const Vector<double>& g, std::size_t n) {
  const auto len = static_cast<std::size_t>(g.size());
  if (len > n) throw DomainError("matvec: vector longer than the truncation");
  Vector<double> y = Vector<double>::Zero(static_cast<Eigen::Index>(n));
  if (len == 0 || g.isZero(0.0)) return y;

  std::size_t size = 1;
  while (size < 2 * n - 1) size *= 2;
  const Vector<double> m = ms.head(2 * n - 1);
  std::vector<double> a(size, 0.0), b(size, 0.0);
  for (std::size_t j = 0; j < 2 * n - 1; ++j) a[j] = m(static_cast<Eigen::Index>(j));
  for (std::size_t k = 0; k < len; ++k) b[n - 1 - k] = g(static_cast<Eigen::Index>(k));

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (std::size_t j = 0; j < fa.size(); ++j) fa[j] *= fb[j];
  std::vector<double> c;
  fft.inv(c, fa);
  for (std::size_t row = 0; row < n; ++row) y(static_cast<Eigen::Index>(row)) = c[row + n - 1];
  return y;
}

std::vector<std::size_t> default_k_grid() {
  std::vector<std::size_t> grid;
  for (int i = 0; i < 9; ++i) {
    grid.push_back(static_cast<std::size_t>(std::llround(std::pow(10.0, 3.0 + 0.25 * i))));
  }
  return grid;
}

TrendFit fit_trend(std::vector<std::size_t> grid, std::vector<double> values, double bounded_below,
                   double divergent_above) {
  TrendFit fit;
  fit.grid = std::move(grid);
  fit.values = std::move(values);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < fit.grid.size(); ++i) {
    if (!(fit.values[i] > 0) || !std::isfinite(fit.values[i])) continue;
    const double x = std::log(static_cast<double>(fit.grid[i]));
    const double y = std::log(fit.values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  const double nn = static_cast<double>(used);
  const double denom = nn * sxx - sx * sx;
  if (used < 3 || denom <= 0) {
    // All-zero evidence is trivially bounded.
    const bool all_zero = !fit.values.empty() &&
                          std::all_of(fit.values.begin(), fit.values.end(),
                                      [](double v) { return v == 0.0; });
    if (all_zero) fit.verdict = Verdict::yes;
    return fit;
  }
  fit.slope = (nn * sxy - sx * sy) / denom;
  if (fit.slope < bounded_below) {
    fit.verdict = Verdict::yes;
  } else if (fit.slope > divergent_above) {
    fit.verdict = Verdict::no;
  }
  return fit;
}

DomainVerdict domain_diagnostic(const MomentSequence<double>& ms,
                                const std::function<double(std::size_t)>& g,
                                const DomainOptions& options) {
  std::vector<std::size_t> grid = options.k_grid.empty() ? default_k_grid() : options.k_grid;
  std::vector<double> q_values, u_values;
  for (std::size_t k : grid) {
    if (k == 0) throw DomainError("domain_diagnostic: grid sizes must be positive");
    Vector<double> gk(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) gk(static_cast<Eigen::Index>(i)) = g(i);
    const Vector<double> u = matvec_fft(ms, gk, k);
    q_values.push_back(gk.dot(u));
    const std::size_t rows = options.n_window == 0 ? k : std::min(k, options.n_window);
    u_values.push_back(u.head(static_cast<Eigen::Index>(rows)).squaredNorm());
  }
  DomainVerdict out;
  out.in_V_mu = fit_trend(grid, std::move(q_values), options.bounded_below, options.divergent_above);
  out.in_D_H = fit_trend(grid, std::move(u_values), options.bounded_below, options.divergent_above);
  if (out.in_V_mu.verdict == Verdict::no) {
    out.in_D_H.verdict = Verdict::no;
  } else if (out.in_V_mu.verdict == Verdict::inconclusive && out.in_D_H.verdict == Verdict::yes) {
    out.in_D_H.verdict = Verdict::inconclusive;
  }
  return out;
}

}  // namespace hankel
