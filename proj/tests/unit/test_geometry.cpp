#include <doctest.h>

#include <cmath>

#include "cvxsec/bodies.hpp"
#include "cvxsec/hull.hpp"
#include "cvxsec/lp.hpp"
#include "cvxsec/quadrature.hpp"
#include "cvxsec/rng.hpp"

using namespace cvxsec;

TEST_SUITE("lp") {
  TEST_CASE("small standard form problem") {
    // min -x1 - x2, x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
    Mat A(2, 4);
    A << 1, 2, 1, 0, 3, 1, 0, 1;
    Vec b(2), c(4);
    b << 4, 6;
    c << -1, -1, 0, 0;
    const LpSolution s = solve_standard_form(A, b, c);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(-2.8).epsilon(1e-12));
    CHECK(s.y(0) == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(s.y(1) == doctest::Approx(1.2).epsilon(1e-12));
  }

  TEST_CASE("infeasible and unbounded") {
    Mat A(1, 2);
    A << 1, 1;
    Vec b(1), c(2);
    b << -1;
    c << 0, 0;
    CHECK(solve_standard_form(A, b, c).status == LpStatus::Infeasible);
    A << 1, -1;
    b << 0;
    c << -1, 0;
    CHECK(solve_standard_form(A, b, c).status == LpStatus::Unbounded);
  }

  TEST_CASE("chebyshev centre and hull membership") {
    const ChebyshevBall cb = chebyshev_center(make_cube(3).halfspaces, 3);
    CHECK(cb.radius == doctest::Approx(1).epsilon(1e-10));
    CHECK(cb.center.norm() < 1e-10);
    const auto V = make_cross_polytope(3).vertices;
    CHECK(in_convex_hull(V, Vec::Constant(3, 0.3)));
    CHECK(!in_convex_hull(V, Vec::Constant(3, 0.34)));
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("adaptive integration and Gauss-Legendre exactness") {
    CHECK(integrate([](double x) { return x * x; }, 0, 1).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::sqrt(x); }, 0, 1).value == doctest::Approx(2.0 / 3).epsilon(1e-9));
    const Rule1d r = gauss_legendre(5, -1, 2);
    double s = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 9);
    CHECK(s == doctest::Approx((std::pow(2.0, 10) - 1) / 10).epsilon(1e-13));
  }

  TEST_CASE("simplex rules") {
    for (int d = 1; d <= 4; ++d) {
      double w = 0;
      for (const auto& p : barycentric_rule(d, 4)) w += p.w;
      CHECK(w * std::tgamma(d + 1.0) == doctest::Approx(1).epsilon(1e-13));
    }
    // ∫ x over the triangle (0,0),(2,0),(0,1): area 1, centroid x = 2/3.
    Vec a = Vec::Zero(2), b(2), c(2);
    b << 2, 0;
    c << 0, 1;
    double w = 0, m = 0;
    for (const auto& p : simplex_rule({a, b, c}, 3)) {
      w += p.w;
      m += p.w * p.x(0);
    }
    CHECK(w == doctest::Approx(1).epsilon(1e-13));
    CHECK(m == doctest::Approx(2.0 / 3).epsilon(1e-13));
  }
}

TEST_SUITE("hull") {
  TEST_CASE("cube and cross polytope combinatorics") {
    for (int n = 2; n <= 5; ++n) {
      const ConvexBody C(make_cube(n));
      CHECK(C.vertices().size() == (1u << n));
      CHECK(C.facets().size() == static_cast<std::size_t>(2 * n));
      const ConvexBody X(make_cross_polytope(n));
      CHECK(X.vertices().size() == static_cast<std::size_t>(2 * n));
      CHECK(X.facets().size() == (1u << n));
    }
  }

  TEST_CASE("interior and duplicate points are dropped") {
    std::vector<Vec> pts = ConvexBody(make_cube(3)).vertices();
    pts.push_back(Vec::Zero(3));
    pts.push_back(Vec::Constant(3, 0.5));
    pts.push_back(pts.front());
    const HullResult h = convex_hull(pts);
    CHECK(h.vertices.size() == 8);
    CHECK(h.facets.size() == 6);
  }

  TEST_CASE("lower-dimensional input throws") {
    std::vector<Vec> pts;
    CounterRng r(3);
    for (int i = 0; i < 10; ++i) {
      Vec v = r.gaussian_vector(3);
      v(2) = 0;
      pts.push_back(v);
    }
    CHECK_THROWS_AS(convex_hull(pts), DegenerateError);
    CHECK(affine_hull(pts).rank() == 2);
  }
}

TEST_SUITE("bodies") {
  TEST_CASE("support, radial and gauge of the cube") {
    const ConvexBody C(make_cube(3));
    Vec u(3);
    u << 1, -2, 0.5;
    CHECK(support(C, u) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(radial(C, u) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(minkowski_norm(C, u) == doctest::Approx(2).epsilon(1e-12));
    CHECK(contains(C, Vec::Constant(3, 1.0)));
    CHECK(!contains(C, Vec::Constant(3, 1.01)));
    CHECK(origin_interior(C));
  }

  TEST_CASE("polar of the cube is the cross polytope") {
    const ConvexBody P = polar(ConvexBody(make_cube(4)));
    CHECK(P.vertices().size() == 8);
    Vec u = Vec::Constant(4, 1.0);
    CHECK(support(P, u) == doctest::Approx(1).epsilon(1e-12));
  }

  TEST_CASE("ball functionals and affine images") {
    const ConvexBody B = make_ball(3, 2.0);
    Vec u(3);
    u << 3, 0, 4;
    CHECK(support(B, u) == doctest::Approx(10).epsilon(1e-14));
    CHECK(radial(B, u) == doctest::Approx(0.4).epsilon(1e-14));
    Mat A = Mat::Identity(3, 3);
    A(0, 0) = 3;
    const ConvexBody E = affine_map(B, A, Vec::Zero(3));
    CHECK(support(E, Vec::Unit(3, 0)) == doctest::Approx(6).epsilon(1e-14));
    CHECK(E.is_ellipsoid());
  }

  TEST_CASE("translation, projection and conversion") {
    const ConvexBody C(make_cube(3));
    const ConvexBody T = translate(C, Vec::Unit(3, 0));
    CHECK(support(T, Vec::Unit(3, 0)) == doctest::Approx(2).epsilon(1e-14));
    CHECK(!origin_interior(translate(C, 2 * Vec::Unit(3, 0))));
    const ConvexBody P = project(ConvexBody(make_cross_polytope(3)), Subspace::orthogonal_to({Vec::Unit(3, 2)}, 3));
    CHECK(P.dim() == 2);
    CHECK(P.vertices().size() == 4);
    const ConvexBody V = convert(C, Representation::Vertices);
    CHECK(std::holds_alternative<VPolytope>(V.rep()));
    CHECK(V.facets().size() == 6);
  }

  TEST_CASE("random centred polytope") {
    const ConvexBody K(random_centered_polytope(4, 12, 5));
    CHECK(K.dim() == 4);
    CHECK(origin_interior(K));
    const ConvexBody K2(random_centered_polytope(4, 12, 5));
    CHECK(K.vertices().size() == K2.vertices().size());
    CHECK((K.vertices().front() - K2.vertices().front()).norm() == 0.0);
  }

  TEST_CASE("empty halfspace systems") {
    Vec a(1);
    a << 1;
    std::vector<Halfspace> hs{{a, -1}, {-a, -1}};
    CHECK_THROWS_AS(halfspace_intersection(hs, 1), DegenerateError);
  }
}
