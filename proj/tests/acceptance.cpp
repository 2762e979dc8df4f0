// One line per acceptance criterion. Exit status is non-zero when a gating criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "hankel/extremal.hpp"
#include "support.hpp"

using namespace hankel;
using namespace hankel::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  bool gating;
  std::function<Outcome()> run;
};

std::string fmt(double x) { return format_double(x); }

Outcome ac1() {
  Gen gen(101);
  std::size_t checked = 0;
  for (const Rational& lambda : {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)}) {
    MomentSequence<Rational> ms(Gegenbauer{lambda});
    for (std::size_t n = 1; n <= 16; ++n) {
      const auto tp = factor(ms, n);
      const auto dim = static_cast<Eigen::Index>(n);
      if (tp.reconstruct() != build(ms, n)) return {false, "C^t C != H for lambda " + to_string(lambda)};
      if (tp.unit_upper * tp.unit_upper_inverse != Matrix<Rational>::Identity(dim, dim)) {
        return {false, "C B != I for lambda " + to_string(lambda)};
      }
      ++checked;
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    const DiscreteMeasure mu = gen.measure_up_to(6);
    MomentSequence<Rational> ms(Discrete{mu});
    for (std::size_t n = 1; n <= mu.size(); ++n) {
      const auto tp = factor(ms, n);
      const auto dim = static_cast<Eigen::Index>(n);
      if (tp.reconstruct() != build(ms, n) ||
          tp.unit_upper * tp.unit_upper_inverse != Matrix<Rational>::Identity(dim, dim)) {
        return {false, "discrete measure failed at N = " + std::to_string(n)};
      }
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " factorizations, zero deviation"};
}

Outcome ac2() {
  std::size_t checked = 0;
  for (const MomentFamily& family : {MomentFamily::uniform(), MomentFamily::hilbert(), MomentFamily(Gaussian{})}) {
    MomentSequence<Rational> ms(family);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto tp = factor(ms, n);
      for (const Rational& t : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(-2, 3)}) {
        const Vector<Rational> m = monomials_from_polys(tp, t);
        Rational power = 1;
        for (Eigen::Index k = 0; k < m.size(); ++k) {
          if (m(k) != power) return {false, "monomial expansion off at t = " + to_string(t)};
          power *= t;
        }
        if (h_xi_identity(tp, t).max_abs != 0) return {false, "H xi(t) != (t^n) at t = " + to_string(t)};
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " (family, N, t) cases exact"};
}

Outcome ac3() {
  std::vector<std::size_t> grid;
  for (std::size_t n = 2; n <= 512; n += 2) grid.push_back(n);
  PrecisionPolicy policy;
  policy.lambda_min = false;
  policy.hs_norm = false;
  const SpectralProfile p = lambda_profile(MomentFamily::hilbert(), grid, policy);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!p.ok(i)) return {false, "N = " + std::to_string(grid[i]) + ": " + p.errors[i]};
    if (!(p.lambda_max[i] < M_PI)) return {false, "lambda_max >= pi at N = " + std::to_string(grid[i])};
    if (i > 0 && !(p.lambda_max[i] > p.lambda_max[i - 1])) {
      return {false, "not strictly increasing at N = " + std::to_string(grid[i])};
    }
  }
  const double oracle = (4 + std::sqrt(13.0)) / 6;
  const double err = std::abs(p.lambda_max[0] - oracle);
  return {err < 1e-12, "lambda_max(2) error " + fmt(err) + ", lambda_max(512) = " + fmt(p.lambda_max.back())};
}

Outcome ac4() {
  const double target = 1.233700550136169827354311;
  MomentSequence<double> ms(PowerLog{Rational(2)});
  std::ostringstream d;
  bool pass = true;
  for (std::size_t k : {100, 1000, 10000}) {
    ClassifyOptions opt;
    opt.dimension = 16;
    opt.trace_terms = k;
    const auto c = classify(ms, opt);
    const double gap = std::abs(c.trace_partial - target);
    const double bound = 1.0 / (4.0 * static_cast<double>(k)) + 1e-12;
    pass = pass && gap <= bound && c.is_ell1.verdict == Verdict::yes;
    d << "K=" << k << " gap " << fmt(gap) << " <= " << fmt(bound) << "; ";
  }
  return {pass, d.str()};
}

Outcome ac5() {
  const std::size_t n = 32;
  Gen gen(105);
  std::size_t mismatched = 0, compared = 0, telescoped = 0;
  for (const MomentFamily& family : {MomentFamily::hilbert(), MomentFamily::uniform()}) {
    MomentSequence<Rational> ms(family);
    for (int trial = 0; trial < 5; ++trial) {
      Vector<Rational> g = Vector<Rational>::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k <= 8; ++k) g += Rational(gen.integer(-5, 5)) * v_k<Rational>(n, k);
      const auto r = apply_H_via_series(ms, g, n);
      const Vector<Rational> naive = matvec_naive(ms, g, n + 2);
      for (std::size_t j = 0; j < n; ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        if (j + 10 <= n) {
          ++compared;
          if (r.result(i) != naive(i)) ++mismatched;
        }
        const auto tail = static_cast<Eigen::Index>(j + 2 * ((n - j + 1) / 2));
        if (r.result(i) + naive(tail) == naive(i)) ++telescoped;
      }
    }
  }
  std::ostringstream d;
  d << mismatched << "/" << compared << " coordinates differ from matvec_naive. The truncated series telescopes to "
    << "(Hg)_n - (Hg)_{n+2L}, and (Hg)_{n+2L} != 0 for these families; that identity holds on " << telescoped
    << "/" << 10 * n << " coordinates";
  return {mismatched == 0, d.str()};
}

Outcome ac6() {
  Gen gen(106);
  std::ostringstream d;
  bool pass = true;
  MomentSequence<double> ms(MomentFamily::hilbert());
  for (std::size_t n : {8, 64, 512, 4096}) {
    double worst = 0, naive_s = 0, fft_s = 0;
    for (int v = 0; v < 100; ++v) {
      const Vector<double> g = gen.vector(n);
      auto t0 = Clock::now();
      const Vector<double> a = matvec_naive(ms, g, n);
      auto t1 = Clock::now();
      const Vector<double> b = matvec_fft(ms, g, n);
      auto t2 = Clock::now();
      naive_s += std::chrono::duration<double>(t1 - t0).count();
      fft_s += std::chrono::duration<double>(t2 - t1).count();
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff());
    }
    pass = pass && worst < 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "N=%zu dev %.2e naive/fft %.1fx; ", n, worst, naive_s / fft_s);
    d << buf;
  }
  return {pass, d.str()};
}

Outcome ac7() {
  std::vector<std::size_t> grid;
  for (std::size_t n = 4; n <= 40; n += 4) grid.push_back(n);
  PrecisionPolicy policy;
  policy.lambda_max = false;
  policy.hs_norm = false;
  const PlateauVerdict gauss = plateau_verdict(lambda_profile(Gaussian{}, grid, policy), 4, 0.5);
  const PlateauVerdict ln = plateau_verdict(lambda_profile(LogNormal{Rational(1)}, grid, policy), 4, 0.5);
  std::ostringstream d;
  d << "Gaussian " << to_string(gauss.kind) << " (ratio " << fmt(gauss.ratio) << "), log-normal "
    << to_string(ln.kind) << " (ratio " << fmt(ln.ratio) << ")";
  return {gauss.kind == PlateauKind::determinate_like && ln.kind == PlateauKind::indeterminate_like, d.str()};
}

Outcome ac8() {
  Gen gen(108);
  std::size_t kernels = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DiscreteMeasure mu = gen.measure_up_to(6);
    const auto removed = gen.subset(mu.size());
    const auto n = static_cast<std::size_t>(gen.integer(1, 16));
    if (perturbation_check(mu, removed, n).deviation != 0) return {false, "deviation at trial " + std::to_string(trial)};
    for (std::size_t i = 0; i < mu.size(); ++i)
      for (std::size_t j = 0; j < mu.size(); ++j) {
        const Rational k = cd_kernel(mu, mu.points()[i], mu.points()[j]);
        if (k != (i == j ? 1 / mu.weights()[i] : Rational(0))) return {false, "kernel at trial " + std::to_string(trial)};
      }
    const KernelReport kr = kernel_vector_check(mu, removed, mu.size());
    for (const auto& r : kr.residuals) {
      if (r.removed && r.squared_norm != 0) return {false, "kernel vector at trial " + std::to_string(trial)};
      kernels += r.removed ? 1 : 0;
    }
  }
  return {true, "200 measures; " + std::to_string(kernels) + " removed-point kernel vectors with zero residual"};
}

Outcome ac9() {
  MomentSequence<double> ms(PowerLog{Rational(1, 2)});
  auto g = [](double d) {
    return [d](std::size_t k) { return std::pow(static_cast<double>(k + 1), -d); };
  };
  const DomainVerdict above = domain_diagnostic(ms, g(0.95));
  const DomainVerdict below = domain_diagnostic(ms, g(0.55));
  std::ostringstream d;
  d << "d=0.95 slope " << fmt(above.in_V_mu.slope) << " (" << to_string(above.in_V_mu.verdict) << "), d=0.55 slope "
    << fmt(below.in_V_mu.slope) << " (" << to_string(below.in_V_mu.verdict) << "), K up to "
    << above.in_V_mu.grid.back();
  return {above.in_V_mu.verdict == Verdict::yes && below.in_V_mu.verdict == Verdict::no, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact factorization identities", 10, true, ac1},
      {2, "monomial expansion and H xi(t) = (t^n)", 0, true, ac2},
      {3, "Hilbert lambda_max increasing below pi", 60, true, ac3},
      {4, "trace of the c = 2 family", 0, true, ac4},
      {5, "series representation equals naive product", 0, false, ac5},
      {6, "FFT product matches naive", 0, true, ac6},
      {7, "Gaussian vs log-normal lambda_min plateau", 300, true, ac7},
      {8, "finite perturbation and kernel identities", 60, true, ac8},
      {9, "domain cutoff for c = 1/2", 0, true, ac9},
  };
  int failed_gating = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.budget_seconds) + " s budget";
    }
    std::printf("AC%d %s  %s  [%.2f s] %s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, seconds, o.detail.c_str(),
                c.gating ? "" : " (known defect, not gating)");
    std::fflush(stdout);
    if (!o.pass && c.gating) ++failed_gating;
  }
  return failed_gating == 0 ? 0 : 1;
}
