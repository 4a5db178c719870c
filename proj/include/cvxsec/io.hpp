#pragma once

// JSON body and cone specifications, and JSON / CSV report encoders.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cvxsec/bodies.hpp"
#include "cvxsec/intersection_bodies.hpp"
#include "cvxsec/sections.hpp"
#include "cvxsec/verify.hpp"

namespace cvxsec {

using json = nlohmann::json;

/// A body together with a short label that identifies it in reports.
struct NamedBody {
  std::string label;
  ConvexBody body;
};

/// {"type": "vpolytope" | "hpolytope" | "ball" | "simplex" | "cube" | "cross" |
/// "random" | "pyramid", ...}. "vertices" is an array of points,
/// "halfspaces" an array of {"a": [...], "b": x}, "center"/"radius" describe
/// a ball, "n", "points" and "seed" parameterise the generated bodies.
/// "recenter": true translates a body so that its centroid is the origin.
/// Throws DomainError on malformed specs.
NamedBody body_from_json(const json& spec);

/// Builtin names: simplex, cube, cross, ball, pyramid, random.
NamedBody builtin_body(const std::string& name, int n, int points = 0, std::uint64_t seed = 1);

/// Square pyramid conv(apex, [-1,1]^{n-1} x {0}) with height 1, translated
/// so its centroid is the origin; a cone in the direction e_n.
VPolytope make_pyramid(int n);

/// {"generators": [[...],...], "flat_basis": [[...],...]}. The flat basis is
/// orthonormalised (it must be linearly independent) and the generators must
/// be orthogonal to it.
std::pair<Subspace, PolyhedralCone> cone_from_json(const json& spec, int n);

json to_json(const CheckResult& r);
json to_json(const CIEvaluation& e);
json to_json(const CIReport& r);
json to_json(const SharpnessTable& t);
json to_json(const AlphaEstimate& a);
json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);

/// name,body,n,k,p,lhs,rhs,ratio,passed
std::string results_csv(const std::vector<CheckResult>& results);

}  // namespace cvxsec
