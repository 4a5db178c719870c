#include <doctest.h>

#include "cvxsec/io.hpp"
#include "cvxsec/volume.hpp"

using namespace cvxsec;

TEST_SUITE("io") {
  TEST_CASE("body specs") {
    const NamedBody v = body_from_json(json::parse(R"({"type": "vpolytope",
        "vertices": [[1, 0], [0, 1], [-1, -1]]})"));
    CHECK(v.body.dim() == 2);
    CHECK(moments(v.body).volume == doctest::Approx(1.5).epsilon(1e-14));
    const NamedBody h = body_from_json(json::parse(R"({"type": "hpolytope", "halfspaces": [
        {"a": [1, 0], "b": 1}, {"a": [-1, 0], "b": 1}, {"a": [0, 1], "b": 2}, {"a": [0, -1], "b": 2}]})"));
    CHECK(moments(h.body).volume == doctest::Approx(8).epsilon(1e-14));
    const NamedBody b = body_from_json(json::parse(R"({"type": "ball", "center": [0, 0, 1], "radius": 2})"));
    CHECK(support(b.body, Vec::Unit(3, 2)) == doctest::Approx(3).epsilon(1e-14));
    const NamedBody r = body_from_json(json::parse(R"({"type": "random", "n": 3, "points": 9, "seed": 4})"));
    CHECK(r.label == "random(n=3,points=9,seed=4)");
    const NamedBody s = body_from_json(json::parse(R"({"type": "vpolytope",
        "vertices": [[0, 0], [2, 0], [0, 2]], "recenter": true})"));
    CHECK(moments(s.body).centroid.norm() < 1e-14);
    CHECK(builtin_body("simplex", 3).label == "simplex(n=3)");
  }

  TEST_CASE("malformed body specs") {
    CHECK_THROWS_AS(body_from_json(json::parse("[1, 2]")), DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"n": 3})")), DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type": "torus", "n": 3})")), DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type": "cube", "n": 12})")), DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type": "cube", "n": "three"})")), DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type": "ball", "n": 2, "radius": -1})")), DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type": "vpolytope", "vertices": [[1, 0], [0, 1, 2]]})")),
                    DomainError);
    CHECK_THROWS_AS(body_from_json(json::parse(R"({"type": "hpolytope", "halfspaces": [{"a": [1, 0]}]})")),
                    DomainError);
  }

  TEST_CASE("pyramid is centred") {
    for (int n = 2; n <= 5; ++n) CHECK(moments(ConvexBody(make_pyramid(n))).centroid.norm() < 1e-13);
  }

  TEST_CASE("cone specs") {
    const auto [F, C] = cone_from_json(json::parse(R"({"generators": [[1, 0, 0], [1, 1, 0]],
        "flat_basis": [[0, 0, 2]]})"), 3);
    CHECK(F.dim() == 1);
    CHECK(std::abs(F.basis()(2, 0)) == doctest::Approx(1).epsilon(1e-15));
    CHECK(C.p() == 2);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"generators": [[1, 0, 1]], "flat_basis": [[0, 0, 1]]})"), 3),
                    DomainError);
    CHECK_THROWS_AS(
        cone_from_json(json::parse(R"({"generators": [[1, 0, 0]], "flat_basis": [[0, 1, 0], [0, 2, 0]]})"), 3),
        DomainError);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"generators": [[1, 0]]})"), 3), DomainError);
  }

  TEST_CASE("report encoders round trip") {
    CheckResult r;
    r.name = "gruenbaum";
    r.body_spec = "cube(n=2)";
    r.parameters = {{"n", 2}, {"k", 1}};
    r.lhs = 0.1 + 0.2;
    r.rhs = 1.0 / 3;
    r.passed = true;
    const json j = json::parse(to_json(r).dump());
    CHECK(j.at("lhs").get<double>() == r.lhs);
    CHECK(j.at("parameters").at("k") == 1);
    CHECK(j.at("assertable") == true);
    const Vec v = Vec::LinSpaced(4, 0.1, 0.7);
    CHECK(vec_from_json(json::parse(vec_to_json(v).dump())) == v);
    CHECK_THROWS_AS(vec_from_json(json::parse(R"([1, "x"])")), DomainError);
    const std::string csv = results_csv({r, r});
    CHECK(csv.rfind("name,body,n,k,p,lhs,rhs,ratio,passed\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("0.30000000000000004") != std::string::npos);
  }
}
