#include <doctest.h>

#include <cmath>

#include "cvxsec/ball_bodies.hpp"
#include "cvxsec/special.hpp"

using namespace cvxsec;

TEST_SUITE("ball_bodies") {
  TEST_CASE("ray moments of a ball indicator and an exponential") {
    const ConcaveFunctionOracle f = ball_indicator_oracle(3, 1.5);
    const Vec t = Vec::Unit(3, 1);
    for (double p : {0.5, 1.0, 2.0, 4.0}) {
      CHECK(ray_moment(f, t, p) == doctest::Approx(std::pow(1.5, p) / p).epsilon(1e-10));
      CHECK(I_p(f, t, p) == doctest::Approx(std::pow(std::pow(1.5, p) / p, 1 / p)).epsilon(1e-10));
    }
    const ConcaveFunctionOracle e = exponential_oracle(2);
    CHECK(ray_moment(e, Vec::Unit(2, 0), 3.0) == doctest::Approx(gamma_fn(3)).epsilon(1e-8));
    CHECK(ball_body(f, 2.0)(Vec::Unit(3, 2)) == doctest::Approx(1.5 / std::sqrt(2.0)).epsilon(1e-10));
  }

  TEST_CASE("sphere integrals") {
    auto one = [](const Vec&) { return 1.0; };
    CHECK(sphere_integral(1, one).value == doctest::Approx(2).epsilon(1e-14));
    CHECK(sphere_integral(2, one).value == doctest::Approx(2 * M_PI).epsilon(1e-10));
    CHECK(sphere_integral(3, one).value == doctest::Approx(4 * M_PI).epsilon(1e-8));
    auto sq = [](const Vec& x) { return x(0) * x(0); };
    CHECK(sphere_integral(3, sq).value == doctest::Approx(4 * M_PI / 3).epsilon(1e-7));
  }

  TEST_CASE("moment identity for a disc indicator") {
    const ConcaveFunctionOracle f = ball_indicator_oracle(2, 1.2);
    const Vec u = Vec::Unit(2, 0);
    const MomentIdentity id = moment_identity_check(f, u, 2, -1);
    CHECK(id.rhs == doctest::Approx(M_PI * std::pow(1.2, 4) / 16).epsilon(1e-10));
    CHECK(id.lhs == doctest::Approx(id.rhs).epsilon(1e-7));
  }

  TEST_CASE("inclusion constants") {
    const BerwaldConstants same = berwald_inclusion_constants(2, 2, 3);
    CHECK(same.lower == doctest::Approx(1).epsilon(1e-14));
    CHECK(same.upper == doctest::Approx(1).epsilon(1e-14));
    const BerwaldConstants b = berwald_inclusion_constants(1, 2, 1);
    CHECK(b.lower == doctest::Approx(beta_fn(1, 2) / std::sqrt(beta_fn(2, 2))).epsilon(1e-14));
    CHECK(b.upper == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(fradelizi_factor(1, 1) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(fradelizi_factor(2, 3) == doctest::Approx(std::pow(1.5, 3)).epsilon(1e-14));
    for (int k = 1; k <= 3; ++k)
      CHECK(lemma6_factor(k, 2, 1.5) == doctest::Approx(k * lp_distance_bound(k, 2, 1.5)).epsilon(1e-14));
  }

  TEST_CASE("maximum of a section function") {
    const Subspace F = Subspace::span({Vec::Unit(3, 2)}, 3);
    const ConcaveFunctionOracle f = section_oracle(ConvexBody(make_cross_polytope(3)), F);
    const Maximum m = maximize(f);
    CHECK(m.value == doctest::Approx(2).epsilon(1e-6));
    CHECK(m.argmax.norm() < 1e-3);
  }

  TEST_CASE("second moments of a section function") {
    const Subspace F = Subspace::span({Vec::Unit(3, 2)}, 3);
    const ConcaveFunctionOracle f = section_oracle(ConvexBody(make_cube(3)), F);
    // ∫ x x^T f over [-1,1]^2 with f = 2.
    CHECK((second_moment_matrix(f) - 8.0 / 3 * Mat::Identity(2, 2)).norm() < 1e-10);
  }

  TEST_CASE("polytope checks on simple bodies") {
    const ConvexBody S(make_regular_simplex(3));
    CHECK(negative_radial_ratio(S, {}) == doctest::Approx(3).epsilon(1e-10));
    const ConvexBody C(make_cube(3));
    CHECK(negative_radial_ratio(C, {}) == doctest::Approx(1).epsilon(1e-12));
    const KlsSandwich s = kls_sandwich(C, Vec::Unit(3, 0));
    CHECK(s.lower <= s.middle);
    CHECK(s.middle <= s.upper);
    CHECK(s.middle == doctest::Approx(1.0 / 3).epsilon(1e-12));
    const IsotropySandwich iso = isotropy_sandwich(C);
    CHECK(iso.min_radius == doctest::Approx(1).epsilon(1e-12));
    CHECK(iso.max_radius == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(iso.r == doctest::Approx(1).epsilon(1e-10));
  }

  TEST_CASE("geometric distance of a body to itself") {
    const StarBodyOracle L = star_of(ConvexBody(make_cube(2)));
    CHECK(geometric_distance_lb(L, L, 32, 1) == doctest::Approx(1).epsilon(1e-14));
    const ConvexBody P = polytope_approximation(star_of(make_ball(2, 1.0)), 64, 1);
    CHECK(P.vertices().size() >= 60);
    CHECK(support(P, Vec::Unit(2, 0)) <= 1 + 1e-12);
  }
}
