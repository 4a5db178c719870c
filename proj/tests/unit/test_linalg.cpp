#include <doctest.h>

#include <cmath>

#include "cvxsec/linalg.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/special.hpp"

using namespace cvxsec;

TEST_SUITE("linalg") {
  TEST_CASE("span drops dependent vectors and complement is orthogonal") {
    Vec a(3), b(3), c(3);
    a << 1, 1, 0;
    b << 2, 2, 0;
    c << 0, 0, 3;
    const Subspace S = Subspace::span({a, b, c}, 3);
    CHECK(S.dim() == 2);
    const Subspace N = S.complement();
    REQUIRE(N.dim() == 1);
    CHECK((S.basis().transpose() * N.basis()).norm() < 1e-14);
    Vec w(3);
    w << 1, -1, 0;
    CHECK(N.contains(w / std::sqrt(2.0)));
    CHECK(std::abs(std::abs(N.basis()(0, 0)) - 1 / std::sqrt(2.0)) < 1e-14);
  }

  TEST_CASE("orthogonal_to and direct_sum") {
    const Subspace F = Subspace::orthogonal_to({Vec::Unit(4, 0)}, 4);
    CHECK(F.dim() == 3);
    CHECK(!F.contains(Vec::Unit(4, 0)));
    const Subspace full = F.direct_sum(F.complement());
    CHECK(full.dim() == 4);
    const Vec x = Vec::LinSpaced(4, 1, 4);
    CHECK((F.project(x) + F.complement().project(x) - x).norm() < 1e-13);
  }

  TEST_CASE("non-orthonormal basis rejected") {
    Mat B(2, 1);
    B << 2, 0;
    CHECK_THROWS_AS(Subspace(2, B), DomainError);
    CHECK_THROWS_AS(check_dimension(9), DomainError);
    CHECK_THROWS_AS(check_dimension(0), DomainError);
  }
}

TEST_SUITE("rng") {
  TEST_CASE("counter access matches sequential draws") {
    CounterRng a(42, 3);
    const CounterRng b(42, 3);
    for (std::uint64_t i = 0; i < 10; ++i) CHECK(a() == b.at(i));
    CHECK(CounterRng(42, 3).at(5) != CounterRng(42, 4).at(5));
    CHECK(CounterRng(42, 3).at(5) != CounterRng(43, 3).at(5));
  }

  TEST_CASE("uniform and gaussian moments") {
    CounterRng r(7);
    double s = 0, s2 = 0, g = 0, g2 = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
      const double u = r.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      s += u;
      s2 += u * u;
      const double z = r.gaussian();
      g += z;
      g2 += z * z;
    }
    CHECK(std::abs(s / N - 0.5) < 5e-3);
    CHECK(std::abs(s2 / N - 1.0 / 3) < 5e-3);
    CHECK(std::abs(g / N) < 1e-2);
    CHECK(std::abs(g2 / N - 1) < 1e-2);
  }

  TEST_CASE("unit vectors, ball points and orthogonal matrices") {
    CounterRng r(11);
    for (int i = 0; i < 50; ++i) {
      CHECK(std::abs(r.unit_vector(5).norm() - 1) < 1e-14);
      CHECK(r.in_unit_ball(4).norm() <= 1.0);
    }
    const Mat Q = random_orthogonal(6, r);
    CHECK((Q.transpose() * Q - Mat::Identity(6, 6)).norm() < 1e-12);
  }
}

TEST_SUITE("special") {
  TEST_CASE("gamma, beta, binomial values") {
    CHECK(gamma_fn(5) == doctest::Approx(24).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(beta_fn(2, 3) == doctest::Approx(1.0 / 12).epsilon(1e-14));
    CHECK(binom(5, 2) == 10);
    CHECK(binom(10, 0) == 1);
    CHECK(binom(2.5, 1) == doctest::Approx(2.5).epsilon(1e-14));
  }

  TEST_CASE("p B(p, q+1) C(p+q, p) = 1") {
    for (int p = 1; p <= 10; ++p)
      for (int q = 1; q <= 10; ++q) CHECK(std::abs(p * beta_fn(p, q + 1) * binom(p + q, p) - 1) < 1e-12);
  }
}
