#include <doctest.h>

#include <cmath>
#include <limits>

#include "hankel/spectral.hpp"
#include "support.hpp"

using namespace hankel;
using namespace hankel::testing;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SpectralProfile synthetic(const std::vector<double>& lambda_min) {
  SpectralProfile p;
  for (std::size_t i = 0; i < lambda_min.size(); ++i) {
    p.n_grid.push_back(4 * (i + 1));
    p.lambda_min.push_back(lambda_min[i]);
    p.lambda_max.push_back(1.0);
    p.hs_norm_B.push_back(1.0);
    p.trace_partial.push_back(1.0);
    p.precision_bits.push_back(53);
    p.errors.emplace_back();
  }
  return p;
}

}  // namespace

TEST_CASE("Hilbert extremes against high-precision oracles") {
  const SpectralProfile p = lambda_profile(MomentFamily::hilbert(), {2, 12, 20});
  REQUIRE(p.ok(0));
  REQUIRE(p.ok(1));
  REQUIRE(p.ok(2));
  CHECK(std::abs(p.lambda_max[0] - (4 + std::sqrt(13.0)) / 6) < 1e-12);
  CHECK(rel(p.lambda_min[0], 0.065741454089335117813) < 1e-12);
  CHECK(rel(p.lambda_min[1], 1.0479463979622266919e-16) < 1e-10);
  CHECK(rel(p.lambda_max[1], 1.7953720595619973087) < 1e-12);
  CHECK(rel(p.lambda_min[2], 7.7773773968564126443e-29) < 1e-10);
  CHECK(rel(p.lambda_max[2], 1.907134720407253103) < 1e-12);
  CHECK(p.precision_bits[2] > 53);
  CHECK(p.interlacing_ok);
}

TEST_CASE("Gaussian and log-normal lambda_min") {
  const SpectralProfile g = lambda_profile(Gaussian{}, {16});
  REQUIRE(g.ok(0));
  CHECK(rel(g.lambda_min[0], 0.014508050346675894305) < 1e-10);
  CHECK(rel(g.lambda_max[0], 6197654740442719.6496) < 1e-10);

  const SpectralProfile l = lambda_profile(LogNormal{Rational(1)}, {8});
  REQUIRE(l.ok(0));
  CHECK(rel(l.lambda_min[0], 0.44221228213159757448) < 1e-9);
}

TEST_CASE("fixed precision policy") {
  PrecisionPolicy policy;
  policy.mode = PrecisionPolicy::Mode::fixed;
  policy.backend = Backend::bigfloat(256);
  policy.hs_norm = false;
  const SpectralProfile p = lambda_profile(MomentFamily::hilbert(), {12}, policy);
  REQUIRE(p.ok(0));
  CHECK(p.precision_bits[0] == 256);
  CHECK(rel(p.lambda_min[0], 1.0479463979622266919e-16) < 1e-12);
  CHECK(std::isnan(p.hs_norm_B[0]));

  policy.backend = Backend::f64();
  const SpectralProfile bad = lambda_profile(LogNormal{Rational(1)}, {12}, policy);
  CHECK_FALSE(bad.ok(0));
  CHECK(std::isnan(bad.lambda_min[0]));
}

TEST_CASE("non positive definite data is reported per point") {
  const SpectralProfile p =
      lambda_profile(Explicit{{Rational(1), Rational(0), Rational(1), Rational(0), Rational(1)}}, {2, 3});
  CHECK(p.ok(0));
  CHECK_FALSE(p.ok(1));
  CHECK(p.errors[1].find("pivot 3 is not positive (exact)") != std::string::npos);
}

TEST_CASE("jobs do not change the profile") {
  PrecisionPolicy serial, parallel;
  parallel.jobs = 3;
  const std::vector<std::size_t> grid{2, 6, 10, 14, 18};
  const SpectralProfile a = lambda_profile(PowerLog{Rational(3, 2)}, grid, serial);
  const SpectralProfile b = lambda_profile(PowerLog{Rational(3, 2)}, grid, parallel);
  CHECK(a.lambda_min == b.lambda_min);
  CHECK(a.lambda_max == b.lambda_max);
  CHECK(a.precision_bits == b.precision_bits);
}

TEST_CASE("sturm count") {
  PrecisionScope scope(128);
  Vector<BigFloat> diag(3), off(2);
  diag << BigFloat(1), BigFloat(2), BigFloat(3);
  off << BigFloat(0), BigFloat(0);
  CHECK(sturm_count(diag, off, BigFloat(2.5)) == 2);
  CHECK(sturm_count(diag, off, BigFloat(0.5)) == 0);
  CHECK(sturm_count(diag, off, BigFloat(4)) == 3);

  // [[2,1],[1,2]] has eigenvalues 1 and 3.
  Matrix<BigFloat> h(2, 2);
  h << BigFloat(2), BigFloat(1), BigFloat(1), BigFloat(2);
  const Extremes e = sturm_extremes(h, BigFloat(0.5), BigFloat(2), true, true);
  CHECK(e.lambda_min.to_double() == doctest::Approx(1).epsilon(1e-15));
  CHECK(e.lambda_max.to_double() == doctest::Approx(3).epsilon(1e-15));
}

TEST_CASE("plateau verdict") {
  const PlateauVerdict flat = plateau_verdict(synthetic({0.5, 0.45, 0.44, 0.44, 0.44, 0.44}));
  CHECK(flat.kind == PlateauKind::indeterminate_like);
  CHECK(flat.n_first == 8);
  CHECK(flat.n_last == 24);
  CHECK(flat.window == 4);
  CHECK(flat.threshold == 0.5);

  const PlateauVerdict falling = plateau_verdict(synthetic({1, 0.1, 0.01, 0.001, 1e-4, 1e-5}));
  CHECK(falling.kind == PlateauKind::determinate_like);
  CHECK(falling.ratio == doctest::Approx(1e-4));

  CHECK(plateau_verdict(synthetic({1, 0.5, 0.4})).kind == PlateauKind::inconclusive);
  CHECK(to_string(PlateauKind::determinate_like) == "determinate-like");

  SpectralProfile gaps = synthetic({1, 0.9, 0.8, 0.7, 0.6, 0.5});
  gaps.errors[5] = "failed";
  gaps.lambda_min[5] = std::numeric_limits<double>::quiet_NaN();
  const PlateauVerdict skip = plateau_verdict(gaps, 3);
  CHECK(skip.n_last == 20);
  CHECK(skip.n_first == 8);
}

TEST_CASE("xi vector") {
  const auto tp = factor(MomentSequence<Rational>(MomentFamily::uniform()), 3);
  const auto x = xi_vector(tp, Rational(1, 2));
  CHECK(x.residual == 0);
  CHECK_FALSE(x.outside_unit_interval);
  CHECK(xi_vector(tp, Rational(2)).outside_unit_interval);

  const auto h = h_xi_identity(tp, Rational(1, 2));
  CHECK(h.max_abs == 0);

  // At t = 0, H xi = e_0.
  const auto at_zero = h_xi_identity(tp, Rational(0));
  CHECK(at_zero.max_abs == 0);

  const auto f = factor(MomentSequence<double>(MomentFamily::uniform()), 12);
  CHECK(xi_vector(f, 0.5).residual < 1e-12);
  CHECK(h_xi_identity(f, 0.5).max_abs < 1e-8);
}

TEST_CASE("A matrix experiment") {
  MomentSequence<Rational> hilbert(MomentFamily::hilbert());
  const auto one = a_matrix_experiment(factor(hilbert, 1), hilbert);
  CHECK(one.a(0, 0) == 1);
  CHECK(one.deviation == 0);
  const auto four = a_matrix_experiment(factor(hilbert, 4), hilbert);
  CHECK(four.deviation == 0);
  CHECK(std::string(four.label) == "experiment");
}
