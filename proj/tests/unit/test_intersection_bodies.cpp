#include <doctest.h>

#include <cmath>

#include "cvxsec/intersection_bodies.hpp"

using namespace cvxsec;

TEST_SUITE("intersection_bodies") {
  TEST_CASE("intersection radial function") {
    CHECK(intersection_radial(ConvexBody(make_cube(3)), Vec::Unit(3, 0)) == doctest::Approx(4).epsilon(1e-12));
    CHECK(intersection_radial(make_ball(3, 1.0), Vec::Unit(3, 2)) == doctest::Approx(M_PI).epsilon(1e-13));
  }

  TEST_CASE("random directions") {
    const auto d = random_directions(4, 17, 5);
    CHECK(d.size() == 17);
    for (const auto& v : d) CHECK(std::abs(v.norm() - 1) < 1e-14);
    CHECK((random_directions(4, 17, 5)[3] - d[3]).norm() == 0.0);
  }

  TEST_CASE("closed-form objective against quadrature and finite differences") {
    const ConvexBody K(random_centered_polytope(3, 9, 61));
    Vec u(3);
    u << 0.3, -0.5, 0.8;
    u.normalize();
    const CISection s(K, u);
    Vec z(2);
    z << 0.2 / s.radius(), -0.1 / s.radius();
    REQUIRE(s.admissible(z));
    CHECK(s.objective(Vec::Zero(2)) == doctest::Approx(s.volume()).epsilon(1e-13));
    CHECK(s.objective_quadrature(z) == doctest::Approx(s.objective(z)).epsilon(1e-8));
    const Vec g = s.gradient(z);
    const double h = 1e-6;
    for (int i = 0; i < 2; ++i) {
      const Vec e = Vec::Unit(2, i) * h;
      CHECK(g(i) == doctest::Approx((s.objective(z + e) - s.objective(z - e)) / (2 * h)).epsilon(1e-6));
    }
    const Mat H = s.hessian(z);
    CHECK((H - H.transpose()).norm() < 1e-10 * H.norm());
    CHECK(H.ldlt().isPositive());
  }

  TEST_CASE("ambient objective and admissibility") {
    const ConvexBody C(make_cube(3));
    const Vec u = Vec::Unit(3, 0);
    CHECK(ci_objective(C, u, Vec::Zero(3)) == doctest::Approx(4).epsilon(1e-12));
    CHECK(ci_objective_gradient(C, u, Vec::Zero(3)).norm() < 1e-12);
    CHECK_THROWS_AS(ci_objective(C, u, 2 * Vec::Unit(3, 1)), DomainError);
  }

  TEST_CASE("symmetric bodies have CI equal to I") {
    for (const ConvexBody& K : {ConvexBody(make_cube(3)), ConvexBody(make_cross_polytope(4))}) {
      for (const Vec& u : random_directions(K.dim(), 5, 8)) {
        const CIEvaluation e = ci_radial(K, u);
        CHECK(e.certified);
        CHECK(e.ci_radius == doctest::Approx(e.i_radius).epsilon(1e-9));
        CHECK(e.minimizer_z.norm() < 1e-8);
      }
    }
  }

  TEST_CASE("Newton and compass routes agree and stay below I") {
    const ConvexBody S(make_regular_simplex(3));
    for (const Vec& u : random_directions(3, 4, 9)) {
      const CISection s(S, u);
      const CIEvaluation a = ci_radial(s);
      const CIEvaluation b = ci_radial_compass(s);
      CHECK(a.ci_radius <= a.i_radius * (1 + 1e-9));
      CHECK(b.ci_radius == doctest::Approx(a.ci_radius).epsilon(1e-6));
    }
  }
}
