#include <doctest.h>

#include <cmath>

#include "cvxsec/intersection_bodies.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/verify.hpp"
#include "cvxsec/volume.hpp"

using namespace cvxsec;

namespace {

double lbinom(double a, double b) { return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1); }

double constant_oracle(int n, int k, int p) {
  return std::exp(p * std::log(k) + (n - k) * std::log1p(double(k) / (n + 1 - k)) + lbinom(n + p - k, p) -
                  p / (k + 1.0) * lbinom(n + 1, k + 1));
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("explicit constants") {
    CHECK(theorem1_constant(2, 1, 1).value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    for (int n = 2; n <= 8; ++n)
      for (int k = 1; k <= n; ++k)
        for (int p = 1; p <= k; ++p)
          CHECK(theorem1_constant(n, k, p).value == doctest::Approx(constant_oracle(n, k, p)).epsilon(1e-12));
    CHECK(gruenbaum_constant(2).value == doctest::Approx(4.0 / 9).epsilon(1e-15));
    CHECK(corollary1_shape(3, 1) == doctest::Approx(std::pow(4.0 / 3, 1)).epsilon(1e-15));
    CHECK_THROWS_AS(theorem1_constant(3, 2, 3), DomainError);
  }

  TEST_CASE("simplex sections through a face") {
    for (int n = 3; n <= 6; ++n)
      for (int l = 1; l < n; ++l) {
        const CheckResult r = experiment_remark1(n, l);
        CHECK(r.passed);
        CHECK(r.lhs == doctest::Approx(std::pow(double(l) / (n + 1), l)).epsilon(1e-6));
      }
    CHECK(experiment_remark1(4, 2).lhs == doctest::Approx(0.16).epsilon(1e-9));
  }

  TEST_CASE("Hadamard cone in the cube") {
    const auto H = hadamard_vertices(4);
    REQUIRE(H.size() == 4);
    for (std::size_t i = 0; i < H.size(); ++i)
      for (std::size_t j = i + 1; j < H.size(); ++j) CHECK(std::abs(H[i].dot(H[j])) < 1e-14);
    const CheckResult r = experiment_remark3_cube(4);
    CHECK(r.passed);
    CHECK(r.lhs == doctest::Approx(16.0 / 24).epsilon(1e-9));
  }

  TEST_CASE("radial asymmetry of a triangle is 2") {
    const CheckResult r = check_lemma5(ConvexBody(make_regular_simplex(2)), "simplex(n=2)");
    CHECK(r.passed);
    CHECK(r.lhs == doctest::Approx(2).epsilon(1e-9));
    CHECK(r.rhs == 2);
  }

  TEST_CASE("Gruenbaum and the cone inequality on a random polytope") {
    const ConvexBody K(random_centered_polytope(4, 12, 101));
    for (const Vec& u : random_directions(4, 5, 102)) CHECK(check_gruenbaum(K, u, "K").passed);
    for (int k = 1; k <= 4; ++k)
      for (int p = 1; p <= std::min(k, 2); ++p) {
        const Configuration cf = random_configuration(4, k, p, p == 1 ? ConeKind::Ray : ConeKind::Orthant, 103 + k);
        CHECK(cf.F.dim() == 4 - k);
        CHECK(cf.C.p() == p);
        const CheckResult r = check_theorem_part1(K, cf.F, cf.C, "K");
        CHECK(r.passed);
        CHECK(r.rhs == doctest::Approx(theorem1_constant(4, k, p).value).epsilon(1e-14));
      }
  }

  TEST_CASE("n^p sandwich on the isotropic cube") {
    const ConvexBody C(make_cube(4));
    const Subspace F = Subspace::span({Vec::Unit(4, 2), Vec::Unit(4, 3)}, 4);
    const PolyhedralCone cone(F.complement(), {Vec::Unit(4, 0), Vec::Unit(4, 1)});
    const CheckResult r = check_theorem_part2(C, F, cone, "cube(n=4)");
    CHECK(r.passed);
    CHECK(r.lhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("off-centre bodies are rejected") {
    const ConvexBody K = translate(ConvexBody(make_cube(3)), 0.1 * Vec::Unit(3, 0));
    CHECK_THROWS_AS(check_gruenbaum(K, Vec::Unit(3, 0), "K"), DomainError);
  }

  TEST_CASE("section-function predicates") {
    const Subspace F = Subspace::span({Vec::Unit(3, 2)}, 3);
    const ConcaveFunctionOracle f = section_oracle(ConvexBody(random_centered_polytope(3, 9, 111)), F);
    CHECK(check_fradelizi(f).passed);
    CHECK(check_concavity(f, 40).passed);
    for (const auto& r : check_berwald(f, 1, 2, 8)) CHECK(r.passed);
    CHECK(check_lemma6(f, 1.5, 8).passed);
    const CheckResult l2 = check_lemma2(ball_indicator_oracle(2, 1.0, 2.0), Vec::Unit(2, 0), 2);
    CHECK(l2.passed);
    const CheckResult rep = report_lemma4(f, 8);
    CHECK(!rep.assertable);
    CHECK(rep.passed);
  }

  TEST_CASE("Remark 2 sharpness table") {
    const SharpnessTable t = experiment_remark2_sharpness(3, {0.5, 0.2, 0.1});
    CHECK(t.rows.size() == 3);
    CHECK(t.monotone);
    CHECK(t.rows.back().ratio < t.target);
    CHECK(default_sharpness_epsilons(4).size() == 7);
    CHECK(default_sharpness_epsilons(5).size() == 6);
  }

  TEST_CASE("corpus runs are deterministic and sorted") {
    const std::string manifest = R"({"seed": 5,
      "bodies": [{"type": "cube", "n": [2, 3]}, {"type": "random", "n": 3, "count": 2, "seed": 9}],
      "checks": {"gruenbaum": {"dirs": 2}, "theorem1": {"max_p": 1}, "lemma5": {"dirs": 4}}})";
    const CorpusReport a = run_corpus(manifest, 1);
    const CorpusReport b = run_corpus(manifest, 3);
    REQUIRE(a.results.size() == b.results.size());
    CHECK(!a.results.empty());
    CHECK(a.failed == 0);
    for (std::size_t i = 0; i < a.results.size(); ++i) {
      CHECK(a.results[i].name == b.results[i].name);
      CHECK(a.results[i].body_spec == b.results[i].body_spec);
      CHECK(a.results[i].lhs == b.results[i].lhs);
      if (i > 0) CHECK(a.results[i - 1].name <= a.results[i].name);
    }
    CHECK_THROWS_AS(run_corpus("{\"bodies\": []}"), DomainError);
    CHECK_THROWS_AS(run_corpus("not json"), DomainError);
  }
}
