#include "cvxsec/io.hpp"

#include <cstdio>
#include <sstream>

#include "cvxsec/volume.hpp"

namespace cvxsec {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("body spec is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("body spec field \"") + key + "\": " + e.what());
  }
}

int dimension_of(const json& j) {
  const int n = field<int>(j, "n");
  check_dimension(n);
  return n;
}

}  // namespace

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DomainError("expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

VPolytope make_pyramid(int n) {
  if (n < 2 || n > kMaxDim) throw DomainError("pyramid needs 2 <= n <= 8");
  std::vector<Vec> verts;
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    Vec v = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
    verts.push_back(v);
  }
  verts.push_back(Vec::Unit(n, n - 1));
  // The centroid of a cone of height h lies h/(n+1) above its base.
  const double shift = 1.0 / (n + 1);
  for (auto& v : verts) v(n - 1) -= shift;
  return {n, verts};
}

NamedBody builtin_body(const std::string& name, int n, int points, std::uint64_t seed) {
  check_dimension(n);
  const std::string dim = "(n=" + std::to_string(n);
  if (name == "simplex") return {"simplex" + dim + ")", ConvexBody(make_regular_simplex(n))};
  if (name == "cube") return {"cube" + dim + ")", ConvexBody(make_cube(n))};
  if (name == "cross") return {"cross" + dim + ")", ConvexBody(make_cross_polytope(n))};
  if (name == "ball") return {"ball" + dim + ")", make_ball(n, 1.0)};
  if (name == "pyramid") return {"pyramid" + dim + ")", ConvexBody(make_pyramid(n))};
  if (name == "random") {
    if (points <= 0) points = 2 * n + 2;
    return {"random" + dim + ",points=" + std::to_string(points) + ",seed=" + std::to_string(seed) + ")",
            ConvexBody(random_centered_polytope(n, points, seed))};
  }
  throw DomainError("unknown body name \"" + name + "\"");
}

NamedBody body_from_json(const json& spec) {
  if (!spec.is_object()) throw DomainError("body spec must be a JSON object");
  const std::string type = field<std::string>(spec, "type");
  NamedBody out{"", make_ball(1, 1.0)};
  if (type == "vpolytope") {
    const json& vs = spec.contains("vertices") ? spec.at("vertices") : json();
    if (!vs.is_array() || vs.empty()) throw DomainError("vpolytope needs a nonempty \"vertices\" array");
    std::vector<Vec> verts;
    for (const auto& v : vs) verts.push_back(vec_from_json(v));
    const int n = static_cast<int>(verts.front().size());
    check_dimension(n);
    for (const auto& v : verts)
      if (v.size() != n) throw DomainError("vertices have different dimensions");
    out = {"vpolytope(n=" + std::to_string(n) + ",v=" + std::to_string(verts.size()) + ")",
           ConvexBody(VPolytope{n, verts})};
  } else if (type == "hpolytope") {
    const json& hs = spec.contains("halfspaces") ? spec.at("halfspaces") : json();
    if (!hs.is_array() || hs.empty()) throw DomainError("hpolytope needs a nonempty \"halfspaces\" array");
    std::vector<Halfspace> halfspaces;
    for (const auto& h : hs) {
      if (!h.is_object() || !h.contains("a") || !h.contains("b")) throw DomainError("halfspace needs \"a\" and \"b\"");
      halfspaces.push_back({vec_from_json(h.at("a")), h.at("b").get<double>()});
    }
    const int n = static_cast<int>(halfspaces.front().normal.size());
    check_dimension(n);
    for (const auto& h : halfspaces)
      if (h.normal.size() != n) throw DomainError("halfspace normals have different dimensions");
    out = {"hpolytope(n=" + std::to_string(n) + ",h=" + std::to_string(halfspaces.size()) + ")",
           ConvexBody(HPolytope{n, halfspaces})};
  } else if (type == "ball") {
    Vec c;
    if (spec.contains("center")) {
      c = vec_from_json(spec.at("center"));
    } else {
      c = Vec::Zero(dimension_of(spec));
    }
    check_dimension(static_cast<int>(c.size()));
    const double r = spec.value("radius", 1.0);
    if (!(r > 0)) throw DomainError("ball radius must be positive");
    out = {"ball(n=" + std::to_string(c.size()) + ",r=" + fmt(r) + ")", ConvexBody(Ball{c, r})};
  } else if (type == "simplex" || type == "cube" || type == "cross" || type == "pyramid" || type == "random") {
    const int n = dimension_of(spec);
    out = builtin_body(type, n, spec.value("points", 0), spec.value("seed", std::uint64_t{1}));
  } else {
    throw DomainError("unknown body type \"" + type + "\"");
  }
  if (spec.value("recenter", false)) {
    const Vec c = moments(out.body).centroid;
    out.body = translate(out.body, -c);
    out.label += "+recentered";
  }
  return out;
}

std::pair<Subspace, PolyhedralCone> cone_from_json(const json& spec, int n) {
  if (!spec.is_object() || !spec.contains("generators")) throw DomainError("cone spec needs \"generators\"");
  std::vector<Vec> gens;
  for (const auto& g : spec.at("generators")) {
    gens.push_back(vec_from_json(g));
    if (gens.back().size() != n) throw DomainError("generator has the wrong dimension");
  }
  Subspace F = Subspace::zero(n);
  if (spec.contains("flat_basis") && !spec.at("flat_basis").empty()) {
    std::vector<Vec> basis;
    for (const auto& b : spec.at("flat_basis")) {
      basis.push_back(vec_from_json(b));
      if (basis.back().size() != n) throw DomainError("flat basis vector has the wrong dimension");
    }
    F = Subspace::span(basis, n);
    if (F.dim() != static_cast<int>(basis.size())) throw DomainError("flat basis is linearly dependent");
  }
  for (const auto& g : gens)
    if ((F.basis().transpose() * g).norm() > 1e-9 * g.norm()) throw DomainError("generators must be orthogonal to the flat");
  return {F, PolyhedralCone(F.complement(), gens)};
}

json to_json(const CheckResult& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return {{"name", r.name}, {"body", r.body_spec}, {"parameters", params}, {"lhs", r.lhs},
          {"rhs", r.rhs},   {"slack", r.slack},    {"passed", r.passed},  {"assertable", r.assertable},
          {"notes", r.notes}};
}

json to_json(const CIEvaluation& e) {
  return {{"u", vec_to_json(e.direction)},
          {"i_radius", e.i_radius},
          {"ci_radius", e.ci_radius},
          {"minimizer_z", vec_to_json(e.minimizer_z)},
          {"iterations", e.iterations},
          {"certified_gap", e.certified_gap},
          {"certified", e.certified},
          {"method", e.method}};
}

json to_json(const CIReport& r) {
  json recs = json::array();
  for (const auto& e : r.records) recs.push_back(to_json(e));
  return {{"records", recs},
          {"summary",
           {{"min_ratio", r.min_ratio},
            {"max_ratio", r.max_ratio},
            {"num_uncertified", r.num_uncertified},
            {"upper_inclusion", r.upper_inclusion}}}};
}

json to_json(const SharpnessTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"epsilon", r.epsilon}, {"half_angle", r.half_angle}, {"ratio", r.ratio}});
  return {{"n", t.n}, {"target", t.target}, {"monotone", t.monotone}, {"rows", rows}};
}

json to_json(const AlphaEstimate& a) {
  json rows = json::array();
  for (const auto& r : a.rows) rows.push_back({{"body", r.body}, {"value", r.value}});
  return {{"n", a.n}, {"trials", a.trials}, {"min_value", a.min_value}, {"rows", rows}};
}

std::string results_csv(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  out << "name,body,n,k,p,lhs,rhs,ratio,passed\n";
  auto param = [](const CheckResult& r, const char* key) {
    auto it = r.parameters.find(key);
    return it == r.parameters.end() ? std::string() : fmt(it->second);
  };
  for (const auto& r : results) {
    out << r.name << ",\"" << r.body_spec << "\"," << param(r, "n") << ',' << param(r, "k") << ',' << param(r, "p")
        << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.ratio()) << ',' << (r.passed ? "true" : "false")
        << '\n';
  }
  return out.str();
}

}  // namespace cvxsec
