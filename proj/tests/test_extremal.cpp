#include <doctest.h>

#include "hankel/extremal.hpp"
#include "support.hpp"

using namespace hankel;
using namespace hankel::testing;

TEST_CASE("remove and add masses") {
  const DiscreteMeasure mu = three_point();
  const DiscreteMeasure tilde = remove_masses(mu, {2});
  CHECK(tilde.size() == 2);
  CHECK(tilde.points() == std::vector<Rational>{Rational(-1, 2), Rational(0)});
  CHECK(remove_masses(mu, {}) == mu);
  CHECK(add_masses(tilde, {Rational(1, 2)}, {Rational(1, 4)}) == mu);
  CHECK_THROWS_AS(remove_masses(mu, {0, 1, 2}), EmptyMeasureError);
  CHECK_THROWS_AS(add_masses(tilde, {Rational(0)}, {Rational(1)}), DomainError);

  // Two masses removed: the remaining one-point measure has rank-one Hankel matrices.
  const Matrix<Rational> h = hankel_matrix(remove_masses(mu, {0, 2}), 2);
  CHECK(h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) == 0);
}

TEST_CASE("perturbation identity") {
  const DiscreteMeasure mu = three_point();
  const PerturbationReport r = perturbation_check(mu, {2}, 4);
  CHECK(r.deviation == 0);
  CHECK(r.removed_count == 1);
  CHECK(r.coefficients == std::vector<Rational>{Rational(1, 3)});
  CHECK(r.banner == kFiniteSurrogate);
  CHECK(r.h == hankel_matrix(mu, 4));
  CHECK(r.h_tilde == hankel_matrix(remove_masses(mu, {2}), 4));
  CHECK(r.correction(0, 0) == Rational(1, 4));

  const PerturbationReport none = perturbation_check(mu, {}, 3);
  CHECK(none.deviation == 0);
  CHECK(none.correction == Matrix<Rational>::Zero(3, 3));

  CHECK(perturbation_check(mu, {0, 2}, 5).deviation == 0);

  const DiscreteMeasure edge({Rational(0), Rational(1)}, {Rational(1), Rational(1)});
  CHECK_THROWS_AS(perturbation_check(edge, {1}, 3), HypothesisError);
  CHECK_NOTHROW(perturbation_check(edge, {0}, 3));
}

TEST_CASE("Christoffel-Darboux kernel") {
  const DiscreteMeasure mu = three_point();
  CHECK(cd_kernel(mu, Rational(0), Rational(0)) == 2);
  CHECK(cd_kernel(mu, Rational(-1, 2), Rational(-1, 2)) == 4);
  CHECK(cd_kernel(mu, Rational(1, 2), Rational(0)) == 0);
  const DiscreteMeasure one({Rational(1, 3)}, {Rational(2, 7)});
  CHECK(cd_kernel(one, Rational(1, 3), Rational(1, 3)) == Rational(7, 2));
}

TEST_CASE("kernel vectors") {
  const DiscreteMeasure mu = three_point();
  const KernelReport r = kernel_vector_check(mu, {2}, 3);
  REQUIRE(r.residuals.size() == 3);
  CHECK(r.rows == 3);
  CHECK(r.residuals[2].removed);
  CHECK(r.residuals[2].squared_norm == 0);
  CHECK(r.residuals[0].squared_norm > 0);

  for (const auto& k : kernel_vector_check(mu, {}, 3).residuals) CHECK(k.squared_norm > 0);
  CHECK(kernel_vector_check(mu.scaled(Rational(2)), {2}, 3).residuals[2].squared_norm == 0);
  CHECK(kernel_vector_check(mu, {1}, 3, 7).residuals[1].squared_norm == 0);
}

TEST_CASE("projection onto vanishing vectors") {
  const Vector<Rational> g = rational_vec({1, 2, 3, 4});
  const std::vector<Rational> points{Rational(1, 2), Rational(-1, 3)};
  const Vector<Rational> p = project_out_points(g, points);
  for (const auto& x : points) {
    Rational acc = 0, power = 1;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      acc += p(k) * power;
      power *= x;
    }
    CHECK(acc == 0);
  }
  CHECK(project_out_points(p, points) == p);
}
