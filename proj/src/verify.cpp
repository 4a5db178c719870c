#include "cvxsec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <json.hpp>

#include "cvxsec/intersection_bodies.hpp"
#include "cvxsec/io.hpp"
#include "cvxsec/parallel.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/special.hpp"
#include "cvxsec/volume.hpp"

namespace cvxsec {

namespace {

constexpr double kTheoremSlack = 1e-6;

CheckResult one_sided(std::string name, std::string body, double lhs, double rhs, double slack) {
  CheckResult r;
  r.name = std::move(name);
  r.body_spec = std::move(body);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = slack;
  r.passed = lhs <= rhs * (1.0 + slack);
  return r;
}

CheckResult report_only(std::string name, std::string body, double lhs, double rhs) {
  CheckResult r;
  r.name = std::move(name);
  r.body_spec = std::move(body);
  r.lhs = lhs;
  r.rhs = rhs;
  r.passed = true;
  r.assertable = false;
  return r;
}

void require_centered(const ConvexBody& K, const char* what) {
  const MomentSummary m = moments(K);
  const double scale = std::max(1.0, std::sqrt(m.covariance.trace() / m.volume));
  if (m.centroid.norm() > 1e-9 * scale) throw DomainError(std::string(what) + " needs a body with centroid 0");
}

void require_isotropic(const ConvexBody& K) {
  const MomentSummary m = moments(K);
  const double c = m.covariance.trace() / K.dim();
  if (m.centroid.norm() > 1e-8 * std::sqrt(c / m.volume) ||
      (m.covariance - c * Mat::Identity(K.dim(), K.dim())).norm() > 1e-6 * c)
    throw DomainError("body is not in isotropic position");
}

std::string oracle_label(const ConcaveFunctionOracle& f) { return f.label.empty() ? "oracle" : f.label; }

double required_m(const ConcaveFunctionOracle& f) {
  if (!f.concavity_index) throw DomainError("check needs a 1/m-concave oracle");
  return *f.concavity_index;
}

}  // namespace

ExplicitConstant theorem1_constant(int n, int k, int p) {
  if (k < 1 || k > n || p < 1 || p > k) throw DomainError("theorem constant needs 1 <= p <= k <= n");
  const double v = std::pow(k, p) * std::pow(1.0 + static_cast<double>(k) / (n + 1 - k), n - k) *
                   binom(n + p - k, p) * std::pow(binom(n + 1, k + 1), -static_cast<double>(p) / (k + 1));
  return {"theorem1", n, k, static_cast<double>(p), static_cast<double>(n - k), v};
}

ExplicitConstant gruenbaum_constant(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  return {"gruenbaum", n, n, 0.0, 0.0, std::pow(1.0 + 1.0 / n, -n)};
}

double corollary1_shape(int n, int k) {
  if (k < 1 || k > n) throw DomainError("need 1 <= k <= n");
  return k * k * std::pow(1.0 + static_cast<double>(k) / (n - k + 1), n - k - 1);
}

Configuration random_configuration(int n, int k, int p, ConeKind kind, std::uint64_t seed) {
  if (k < 1 || k > n || p < 1 || p > k) throw DomainError("configuration needs 1 <= p <= k <= n");
  if (kind == ConeKind::Ray && p != 1) throw DomainError("a ray has p = 1");
  CounterRng rng(seed, 0x434f);
  const Mat Q = random_orthogonal(n, rng);
  const Subspace F(n, Q.leftCols(n - k));
  const Subspace N(n, Q.rightCols(k));
  std::vector<Vec> gens;
  if (kind == ConeKind::Simplicial) {
    for (int i = 0; i < p; ++i) gens.push_back(N.embed(rng.gaussian_vector(k)));
  } else {
    const Mat R = random_orthogonal(k, rng);
    for (int i = 0; i < p; ++i) gens.push_back(N.embed(R.col(i)));
  }
  return {F, PolyhedralCone(N, gens)};
}

// ---- Gruenbaum and the main theorem ----------------------------------------

CheckResult check_gruenbaum(const ConvexBody& K, const Vec& u, const std::string& body_spec) {
  require_centered(K, "Gruenbaum check");
  const int n = K.dim();
  const double vol = moments(K).volume;
  double half;
  if (K.is_polytope()) {
    half = clip(K, Halfspace{-u.normalized(), 0.0}).volume();
  } else {
    half = 0.5 * vol;  // a centred ellipsoid is cut through its centre
  }
  const double bound = gruenbaum_constant(n).value * vol;
  CheckResult r = one_sided("gruenbaum", body_spec, bound, half, 1e-9);
  r.parameters = {{"n", n}, {"fraction", half / vol}, {"constant", gruenbaum_constant(n).value}};
  return r;
}

CheckResult check_theorem_part1(const ConvexBody& K, const Subspace& F, const PolyhedralCone& C,
                                const std::string& body_spec) {
  require_centered(K, "theorem check");
  const int n = K.dim();
  const int k = n - F.dim();
  const int p = C.p();
  const double plus = cone_section_volume_polyhedral(K, F, C);
  const double minus = cone_section_volume_polyhedral(K, F, C.negated());
  if (!(plus > 0)) throw DegenerateError("K ∩ (F+C) has zero volume");
  const double c = theorem1_constant(n, k, p).value;
  CheckResult r = one_sided("theorem1", body_spec, minus / plus, c, kTheoremSlack);
  r.parameters = {{"n", n}, {"k", k}, {"p", p}, {"vol_plus", plus}, {"vol_minus", minus}};
  return r;
}

CheckResult check_theorem_part2(const ConvexBody& K_isotropic, const Subspace& F, const PolyhedralCone& C,
                                const std::string& body_spec) {
  require_isotropic(K_isotropic);
  const int n = K_isotropic.dim();
  const int k = n - F.dim();
  const int p = C.p();
  const Subspace& G = C.span();
  const ConvexBody B = make_ball(n, 1.0);
  const double rk = cone_section_volume_polyhedral(K_isotropic, F, C) / span_section_volume(K_isotropic, F, G);
  const double rb = cone_section_volume_polyhedral(B, F, C) / span_section_volume(B, F, G);
  const double np = std::pow(n, p);
  CheckResult r;
  r.name = "theorem2";
  r.body_spec = body_spec;
  r.lhs = rk;
  r.rhs = rb;
  r.slack = kTheoremSlack;
  r.passed = rk >= rb / np * (1.0 - kTheoremSlack) && rk <= rb * np * (1.0 + kTheoremSlack);
  r.parameters = {{"n", n}, {"k", k}, {"p", p}, {"lower", rb / np}, {"upper", rb * np}};
  r.notes = "lhs = K ratio, rhs = ball ratio; passes when n^-p rhs <= lhs <= n^p rhs. The a^{kp} branch is not asserted.";
  return r;
}

CheckResult check_corollary1(const ConvexBody& K, const Subspace& F, const Vec& theta, const std::string& body_spec) {
  const PolyhedralCone C = PolyhedralCone::ray(F.complement(), theta);
  CheckResult r = check_theorem_part1(K, F, C, body_spec);
  const int n = K.dim();
  const int k = n - F.dim();
  // theorem1 compares the minus side to the plus side; the corollary reads plus over minus
  const double ratio = r.parameters["vol_plus"] / r.parameters["vol_minus"];
  r.name = "corollary1";
  r.lhs = ratio;
  r.passed = r.lhs <= r.rhs * (1.0 + r.slack);
  r.parameters["c_empirical"] = ratio / corollary1_shape(n, k);
  return r;
}

CheckResult check_corollary2(const ConvexBody& K, const Vec& u, const Vec& v, const std::string& body_spec) {
  const int n = K.dim();
  if (n < 2) throw DomainError("corollary 2 needs n >= 2");
  const Vec uh = u.normalized();
  Vec w = v - v.dot(uh) * uh;
  if (w.norm() < 1e-9 * v.norm()) throw DomainError("corollary 2 needs v != ±u");
  const Vec theta = w.normalized();
  const Subspace F = Subspace::orthogonal_to({uh, theta}, n);
  const PolyhedralCone C = PolyhedralCone::ray(F.complement(), theta);
  require_centered(K, "corollary 2");
  const double plus = cone_section_volume_polyhedral(K, F, C);
  const double minus = cone_section_volume_polyhedral(K, F, C.negated());
  const double worst = std::max(plus / minus, minus / plus);
  CheckResult r = one_sided("corollary2", body_spec, worst, theorem1_constant(n, 2, 1).value, kTheoremSlack);
  r.parameters = {{"n", n}, {"k", 2}, {"p", 1}, {"ratio", plus / minus}, {"c_empirical", worst}};
  return r;
}

CheckResult check_corollary3(const ConvexBody& K_isotropic, const Subspace& E, const std::vector<Vec>& u,
                             const std::string& body_spec) {
  require_isotropic(K_isotropic);
  const int n = K_isotropic.dim();
  const int p = static_cast<int>(u.size());
  if (p < 1) throw DomainError("corollary 3 needs at least one vector");
  for (int i = 0; i < p; ++i) {
    if (!E.contains(u[i], 1e-9 * u[i].norm())) throw DomainError("the u_i must lie in E");
    for (int j = 0; j < i; ++j)
      if (std::abs(u[i].dot(u[j])) > 1e-9 * u[i].norm() * u[j].norm()) throw DomainError("the u_i must be orthogonal");
  }
  const int k = n - E.dim() + p;
  // F = E ∩ {u_i}^⊥
  const Mat U = orthonormal_span(columns(u, n));
  const Mat PB = E.basis() - U * (U.transpose() * E.basis());
  const Subspace F(n, orthonormal_span(PB));
  const PolyhedralCone C(F.complement(), u);
  const double part = cone_section_volume_polyhedral(K_isotropic, F, C);
  const double whole =
      E.dim() == n ? moments(K_isotropic).volume : section(K_isotropic, Flat::through_origin(E)).volume();
  const double floor = std::pow(2.0 * n, -p) * whole;
  CheckResult r = one_sided("corollary3", body_spec, floor, part, kTheoremSlack);
  const double fraction = part / whole;
  r.parameters = {{"n", n}, {"k", k}, {"p", p}, {"fraction", fraction}, {"c_empirical", -std::log(fraction) / (k * p)}};
  return r;
}

// ---- remarks -----------------------------------------------------------------

CheckResult experiment_remark1(int n, int l) {
  if (l < 1 || l > n - 1 || n > kMaxDim) throw DomainError("remark 1 needs 1 <= l <= n-1 <= 7");
  const ConvexBody D(make_regular_simplex(n));
  const std::vector<Vec>& v = std::get<VPolytope>(D.rep()).vertices;
  std::vector<Vec> first(v.begin(), v.begin() + l);
  Vec f = Vec::Zero(n);
  for (int i = l; i <= n; ++i) f += v[i];
  f /= (n + 1 - l);
  const Subspace E = Subspace::span(first, n);
  std::vector<Vec> normals{f};
  for (int i = 0; i < E.complement().dim(); ++i) normals.push_back(E.complement().basis().col(i));
  const Subspace F = Subspace::orthogonal_to(normals, n);
  const PolyhedralCone C = PolyhedralCone::ray(F.complement(), f);
  const double part = cone_section_volume_polyhedral(D, F, C);
  const double whole = section(D, Flat::through_origin(E)).volume();
  const double expected = std::pow(static_cast<double>(l) / (n + 1), l);
  CheckResult r;
  r.name = "remark1";
  r.body_spec = "simplex(n=" + std::to_string(n) + ")";
  r.lhs = part / whole;
  r.rhs = expected;
  r.slack = 1e-6;
  r.passed = std::abs(r.lhs - expected) <= 1e-6 * expected;
  const int k = n - l + 1;
  r.parameters = {{"n", n},
                  {"l", l},
                  {"k", k},
                  {"p", 1},
                  {"ray_ratio", (whole - part) / part},
                  {"ray_ratio_expected", std::pow((n + 1.0) / l, l) - 1.0},
                  {"theorem1_constant", theorem1_constant(n, k, 1).value}};
  r.notes = "two-sided: |lhs - rhs| <= 1e-6 rhs";
  return r;
}

std::vector<Vec> hadamard_vertices(int n) {
  if (n < 1 || (n & (n - 1)) != 0) throw DomainError("Sylvester-Hadamard rows need n a power of two");
  Mat H = Mat::Ones(1, 1);
  while (H.rows() < n) {
    const Eigen::Index m = H.rows();
    Mat next(2 * m, 2 * m);
    next << H, H, H, -H;
    H = next;
  }
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) rows.push_back(H.row(i).transpose());
  return rows;
}

CheckResult experiment_remark3_cube(int n) {
  if (n != 2 && n != 4 && n != 8) throw DomainError("remark 3 is run for n in {2, 4, 8}");
  const ConvexBody cube(make_cube(n));
  const PolyhedralCone C(Subspace::full(n), hadamard_vertices(n));
  const double vol = cone_section_volume_polyhedral(cube, Subspace::zero(n), C);
  const double expected = std::pow(n, n / 2.0) / std::tgamma(n + 1.0);
  CheckResult r;
  r.name = "remark3_cube";
  r.body_spec = "cube(n=" + std::to_string(n) + ")";
  r.lhs = vol;
  r.rhs = expected;
  r.slack = 1e-6;
  r.passed = std::abs(vol - expected) <= 1e-6 * expected;
  r.parameters = {{"n", n}, {"alpha_upper", 2.0 * std::pow(vol / std::pow(2.0, n), 1.0 / n) * std::sqrt(n)}};
  r.notes = "two-sided: |lhs - rhs| <= 1e-6 rhs; alpha_upper is 2 (|K∩C|/|K|)^{1/n} sqrt(n)";
  return r;
}

SharpnessTable experiment_remark2_sharpness(int n, const std::vector<double>& epsilons) {
  if (n < 2 || n > 5) throw DomainError("remark 2 experiment needs 2 <= n <= 5");
  const ConvexBody D(make_regular_simplex(n));
  const Vec vhat = std::get<VPolytope>(D.rep()).vertices.front().normalized();
  const Subspace perp = Subspace::orthogonal_to({vhat}, n);
  const VPolytope s = make_regular_simplex(n - 1);
  SharpnessTable t;
  t.n = n;
  t.target = std::pow(n, n);
  for (double eps : epsilons) {
    if (!(eps > 0)) throw DomainError("cone widths must be positive");
    std::vector<Vec> gens;
    for (const auto& w : s.vertices) gens.push_back(vhat + eps * perp.embed(w.normalized()));
    const PolyhedralCone C(Subspace::full(n), gens);
    const double plus = cone_section_volume_polyhedral(D, Subspace::zero(n), C);
    const double minus = cone_section_volume_polyhedral(D, Subspace::zero(n), C.negated());
    if (plus < 1e-12 || minus < 1e-12) throw DegenerateError("cone volume below 1e-12, too small to resolve");
    const double ratio = plus / minus;
    if (!t.rows.empty() && ratio < 0.99 * t.rows.back().ratio) t.monotone = false;
    t.rows.push_back({eps, std::atan(eps), ratio});
  }
  return t;
}

std::vector<double> default_sharpness_epsilons(int n) {
  std::vector<double> e{1.0, 0.5, 0.2, 0.1, 0.05, 0.02};
  if (n <= 4) e.push_back(0.01);
  return e;
}

AlphaEstimate experiment_alpha_n(int n, int trials, std::uint64_t seed) {
  if (n < 1 || n > 6) throw DomainError("alpha experiment needs 1 <= n <= 6");
  AlphaEstimate out;
  out.n = n;
  out.trials = trials;
  out.min_value = std::numeric_limits<double>::infinity();
  auto value = [&](const ConvexBody& K, const Mat& Q) {
    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i) gens.push_back(Q.col(i));
    const double part = cone_section_volume_polyhedral(K, Subspace::zero(n), PolyhedralCone(Subspace::full(n), gens));
    return 2.0 * std::pow(part / moments(K).volume, 1.0 / n);
  };
  const ConvexBody cube(make_cube(n));
  out.rows.push_back({"cube(n=" + std::to_string(n) + ",coordinate)", value(cube, Mat::Identity(n, n))});
  const ConvexBody simplex = isotropic_position(ConvexBody(make_regular_simplex(n))).body;
  CounterRng rng(seed, 0x414c);
  for (int t = 0; t < trials; ++t) {
    const Mat Q = random_orthogonal(n, rng);
    out.rows.push_back({"simplex(n=" + std::to_string(n) + ",trial=" + std::to_string(t) + ")", value(simplex, Q)});
    const std::uint64_t body_seed = seed * 1000003ULL + static_cast<std::uint64_t>(t);
    const ConvexBody K = isotropic_position(ConvexBody(random_centered_polytope(n, 2 * n + 2, body_seed))).body;
    out.rows.push_back({"random(n=" + std::to_string(n) + ",seed=" + std::to_string(body_seed) + ")", value(K, Q)});
  }
  for (const auto& r : out.rows) out.min_value = std::min(out.min_value, r.value);
  return out;
}

// ---- lemma wrappers ------------------------------------------------------------

CheckResult check_fradelizi(const ConcaveFunctionOracle& f, std::uint64_t seed) {
  const double m = required_m(f);
  if (!f.barycenter_zero) throw DomainError("Fradelizi's bound needs barycentre 0");
  const Maximum mx = maximize(f, seed);
  const double f0 = f(Vec::Zero(f.dim));
  const double factor = fradelizi_factor(f.dim, m);
  CheckResult r = one_sided("fradelizi", oracle_label(f), std::max(mx.value, f0), factor * f0, 1e-6);
  r.parameters = {{"k", f.dim}, {"m", m}, {"factor", factor}, {"max_over_f0", std::max(mx.value, f0) / f0}};
  return r;
}

CheckResult check_lemma5(const ConvexBody& L, const std::string& body_spec, int num_dirs, std::uint64_t seed) {
  require_centered(L, "lemma 5");
  const int k = L.dim();
  const double worst = negative_radial_ratio(L, sphere_directions(k, num_dirs, seed));
  CheckResult r = one_sided("lemma5", body_spec, worst, k, 1e-9);
  r.parameters = {{"k", k}};
  return r;
}

CheckResult check_lemma6(const ConcaveFunctionOracle& f, double p, int num_dirs, std::uint64_t seed) {
  const double m = required_m(f);
  const int k = f.dim;
  const double factor = lemma6_factor(k, m, p);
  double worst = 0.0;
  for (const Vec& th : sphere_directions(k, num_dirs, seed))
    worst = std::max(worst, I_p(f, -th, p) / I_p(f, th, p));
  CheckResult r = one_sided("lemma6", oracle_label(f), worst, factor, 1e-6);
  r.parameters = {{"k", k}, {"m", m}, {"p", p}};
  return r;
}

std::vector<CheckResult> check_lemma7(const ConvexBody& L, const Vec& u, const std::string& body_spec) {
  require_centered(L, "lemma 7");
  const KlsSandwich s = kls_sandwich(L, u.normalized());
  CheckResult lo = one_sided("lemma7_lower", body_spec, s.lower, s.middle, 1e-9);
  CheckResult hi = one_sided("lemma7_upper", body_spec, s.middle, s.upper, 1e-9);
  lo.parameters = hi.parameters = {{"k", L.dim()}};
  return {lo, hi};
}

std::vector<CheckResult> check_prop8(const ConvexBody& L, const std::string& body_spec) {
  require_centered(L, "proposition 8");
  const int k = L.dim();
  const IsotropySandwich s = isotropy_sandwich(L);
  CheckResult inner = one_sided("prop8_inner", body_spec, s.beta, s.min_radius, 1e-7);
  CheckResult outer = one_sided("prop8_outer", body_spec, s.max_radius, s.r * k * s.beta, 1e-7);
  inner.parameters = outer.parameters = {{"k", k}, {"r", s.r}, {"beta", s.beta}};
  return {inner, outer};
}

std::vector<CheckResult> check_berwald(const ConcaveFunctionOracle& f, double p, double q, int num_dirs,
                                       std::uint64_t seed, double max_f) {
  const double m = required_m(f);
  const BerwaldConstants c = berwald_inclusion_constants(p, q, m);
  const double e = 1.0 / p - 1.0 / q;
  const double f0 = f(Vec::Zero(f.dim));
  const double top = std::max(max_f > 0 ? max_f : maximize(f, seed).value, f0);
  double low = 0.0, high = 0.0;
  for (const Vec& th : sphere_directions(f.dim, num_dirs, seed)) {
    const double rp = I_p(f, th, p);
    const double rq = I_p(f, th, q);
    low = std::max(low, c.lower * std::pow(f0, e) * rq / rp);
    high = std::max(high, rp / (c.upper * std::pow(top, e) * rq));
  }
  CheckResult lo = one_sided("berwald_lower", oracle_label(f), low, 1.0, 1e-6);
  CheckResult hi = one_sided("berwald_upper", oracle_label(f), high, 1.0, 1e-6);
  lo.parameters = hi.parameters = {{"k", f.dim}, {"m", m}, {"p", p}, {"q", q}};
  lo.notes = "worst lower * f(0)^(1/p-1/q) r_q / r_p";
  hi.notes = "worst r_p / (upper * max(f)^(1/p-1/q) r_q)";
  return {lo, hi};
}

CheckResult check_lemma2(const ConcaveFunctionOracle& f, const Vec& u, int p, int max_evals) {
  const MomentIdentity mi = moment_identity_check(f, u, p, -1, 1, max_evals);
  const int k = f.dim;
  double scale = std::abs(mi.rhs);
  if (p == 1) {
    if (f.moment) {
      scale = std::sqrt(f.moment(u, 0) * f.moment(u, 2)) / (k + 1);
    } else {
      scale = std::max(scale, std::abs(mi.lhs));
    }
  }
  CheckResult r;
  r.name = "lemma2";
  r.body_spec = oracle_label(f);
  r.lhs = mi.lhs;
  r.rhs = mi.rhs;
  r.slack = 1e-4;
  r.passed = std::abs(mi.lhs - mi.rhs) <= 1e-4 * scale;
  r.parameters = {{"k", k}, {"p", p}, {"scale", scale}, {"quadrature_error", mi.quadrature_error}};
  r.notes = "two-sided: |lhs - rhs| <= 1e-4 scale";
  return r;
}

CheckResult check_concavity(const ConcaveFunctionOracle& f, int chords, std::uint64_t seed) {
  const double m = required_m(f);
  const int k = f.dim;
  CounterRng rng(seed, 0x4343);
  const double R = f.support_radius;
  auto draw = [&]() -> Vec {
    for (int t = 0; t < 1000; ++t) {
      const Vec x = R * rng.in_unit_ball(k);
      if (f(x) > 0) return x;
    }
    return Vec::Zero(k);
  };
  double worst = -std::numeric_limits<double>::infinity();
  double top = std::pow(f(Vec::Zero(k)), 1.0 / m);
  for (int c = 0; c < chords; ++c) {
    const Vec x = draw();
    const Vec y = draw();
    const double t = rng.uniform();
    const double gx = std::pow(f(x), 1.0 / m);
    const double gy = std::pow(f(y), 1.0 / m);
    const double gm = std::pow(f(t * x + (1 - t) * y), 1.0 / m);
    top = std::max({top, gx, gy, gm});
    worst = std::max(worst, t * gx + (1 - t) * gy - gm);
  }
  CheckResult r;
  r.name = "concavity";
  r.body_spec = oracle_label(f);
  r.lhs = worst;
  r.rhs = 1e-7 * top;
  r.passed = worst <= r.rhs;
  r.parameters = {{"k", k}, {"m", m}, {"chords", chords}};
  r.notes = "lhs = worst t g(x) + (1-t) g(y) - g(tx+(1-t)y) with g = f^(1/m); passes when lhs <= rhs";
  return r;
}

CheckResult report_lemma4(const ConcaveFunctionOracle& f, int num_dirs, std::uint64_t seed) {
  const int k = f.dim;
  const double f0 = f(Vec::Zero(k));
  const double s = std::pow(f0, -1.0 / ((k + 1.0) * (k + 2.0)));
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const Vec& th : sphere_directions(k, num_dirs, seed)) {
    const double a = s * I_p(f, th, k + 1) / I_p(f, th, k + 2);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  CheckResult r = report_only("lemma4", oracle_label(f), lo, hi);
  r.parameters = {{"k", k}, {"d_empirical", lo}, {"c_empirical", hi * std::exp(-1.0 / k)}};
  r.notes = "lhs, rhs = min, max of f(0)^(-1/((k+1)(k+2))) r_{k+1} / r_{k+2}";
  return r;
}

CheckResult report_prop9(const ConcaveFunctionOracle& f, int num_dirs, std::uint64_t seed) {
  const int k = f.dim;
  Eigen::SelfAdjointEigenSolver<Mat> es(second_moment_matrix(f));
  const double r = std::sqrt(es.eigenvalues()(k - 1) / es.eigenvalues()(0));
  const StarBodyOracle L = ball_body(f, k + 1);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const Vec& th : sphere_directions(k, num_dirs, seed)) {
    const double rad = L(th);
    lo = std::min(lo, rad);
    hi = std::max(hi, rad);
  }
  const double d = hi / lo;
  CheckResult out = report_only("prop9", oracle_label(f), d, r);
  out.parameters = {{"k", k}, {"r", r}, {"a_empirical", std::pow(d / r, 1.0 / k)}};
  out.notes = "lhs = lower bound for d_g(L_{k+1}(f), B), rhs = r";
  return out;
}

CheckResult check_ci_inclusion(const ConvexBody& K, const std::string& body_spec, int num_dirs, std::uint64_t seed) {
  const CIReport rep = ci_inclusion_report(K, num_dirs, seed);
  CheckResult r = one_sided("ci_inclusion", body_spec, rep.max_ratio, 1.0, 1e-9);
  r.passed = r.passed && rep.upper_inclusion && rep.num_uncertified == 0;
  r.parameters = {{"n", K.dim()},
                  {"dirs", num_dirs},
                  {"min_ratio", rep.min_ratio},
                  {"uncertified", rep.num_uncertified}};
  r.notes = "lhs = max CI/I radius ratio; min_ratio tabulates the lower constant";
  return r;
}

// ---- corpus ----------------------------------------------------------------------

void sort_results(std::vector<CheckResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    return std::tie(a.name, a.body_spec, a.parameters) < std::tie(b.name, b.body_spec, b.parameters);
  });
}

namespace {

struct CorpusBody {
  std::string label;
  ConvexBody body;
};

std::vector<int> int_list(const json& j) {
  std::vector<int> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(x.get<int>());
  } else {
    out.push_back(j.get<int>());
  }
  return out;
}

std::vector<CorpusBody> expand_bodies(const json& list) {
  std::vector<CorpusBody> out;
  for (const auto& spec : list) {
    if (!spec.contains("n") || !spec.at("n").is_array()) {
      NamedBody b = body_from_json(spec);
      out.push_back({b.label, b.body});
      continue;
    }
    const int count = spec.value("count", 1);
    const std::uint64_t seed0 = spec.value("seed", std::uint64_t{1});
    for (int n : int_list(spec.at("n"))) {
      for (int c = 0; c < count; ++c) {
        json one = spec;
        one["n"] = n;
        one["seed"] = seed0 + static_cast<std::uint64_t>(1000 * n + c);
        NamedBody b = body_from_json(one);
        out.push_back({b.label, b.body});
      }
    }
  }
  return out;
}

bool in_range(const json& cfg, int n) { return n >= cfg.value("min_n", 1) && n <= cfg.value("max_n", kMaxDim); }

std::uint64_t job_seed(std::uint64_t base, std::size_t body, int salt) {
  return base * 0x9E3779B97F4A7C15ULL + body * 1009ULL + static_cast<std::uint64_t>(salt);
}

struct Job {
  std::string name;
  std::string body;
  std::function<std::vector<CheckResult>()> run;
};

void add_body_jobs(std::vector<Job>& jobs, const CorpusBody& cb, std::size_t index, const json& checks,
                   std::uint64_t base) {
  const ConvexBody& K = cb.body;
  const std::string& label = cb.label;
  const int n = K.dim();
  const bool poly = K.is_polytope();

  if (checks.contains("gruenbaum") && in_range(checks["gruenbaum"], n)) {
    const int dirs = checks["gruenbaum"].value("dirs", 4);
    jobs.push_back({"gruenbaum", label, [=] {
      std::vector<CheckResult> out;
      for (const Vec& u : random_directions(n, dirs, job_seed(base, index, 1))) out.push_back(check_gruenbaum(K, u, label));
      return out;
    }});
  }
  if (checks.contains("theorem1") && in_range(checks["theorem1"], n)) {
    const int max_p = checks["theorem1"].value("max_p", 2);
    for (int k = 1; k <= n; ++k)
      for (int p = 1; p <= std::min(k, max_p); ++p)
        jobs.push_back({"theorem1", label, [=] {
          const ConeKind kind = p == 1 ? ConeKind::Ray : (k % 2 ? ConeKind::Simplicial : ConeKind::Orthant);
          const Configuration cf = random_configuration(n, k, p, kind, job_seed(base, index, 100 + 10 * k + p));
          return std::vector<CheckResult>{check_theorem_part1(K, cf.F, cf.C, label)};
        }});
  }
  if (checks.contains("theorem2") && in_range(checks["theorem2"], n)) {
    jobs.push_back({"theorem2", label, [=] {
      const ConvexBody Ki = isotropic_position(K).body;
      std::vector<CheckResult> out;
      for (int k : {1, n}) {
        const int p = std::min(k, 2);
        const Configuration cf =
            random_configuration(n, k, p, p == 1 ? ConeKind::Ray : ConeKind::Orthant, job_seed(base, index, 300 + k));
        out.push_back(check_theorem_part2(Ki, cf.F, cf.C, label));
      }
      return out;
    }});
  }
  if (checks.contains("corollary2") && in_range(checks["corollary2"], n) && n >= 2) {
    const int pairs = checks["corollary2"].value("pairs", 1);
    jobs.push_back({"corollary2", label, [=] {
      std::vector<CheckResult> out;
      const auto dirs = random_directions(n, 2 * pairs, job_seed(base, index, 2));
      for (int i = 0; i < pairs; ++i) {
        CheckResult r = check_corollary2(K, dirs[2 * i], dirs[2 * i + 1], label);
        r.parameters["pair"] = i;
        out.push_back(r);
      }
      return out;
    }});
  }
  if (checks.contains("lemma5") && in_range(checks["lemma5"], n)) {
    const int dirs = checks["lemma5"].value("dirs", 32);
    jobs.push_back({"lemma5", label, [=] { return std::vector<CheckResult>{check_lemma5(K, label, dirs, job_seed(base, index, 5))}; }});
  }
  if (checks.contains("lemma7") && in_range(checks["lemma7"], n)) {
    const int dirs = checks["lemma7"].value("dirs", 2);
    jobs.push_back({"lemma7", label, [=] {
      std::vector<CheckResult> out;
      int i = 0;
      for (const Vec& u : random_directions(n, dirs, job_seed(base, index, 7))) {
        for (auto r : check_lemma7(K, u, label)) {
          r.parameters["dir"] = i;
          out.push_back(r);
        }
        ++i;
      }
      return out;
    }});
  }
  if (checks.contains("prop8") && in_range(checks["prop8"], n)) {
    jobs.push_back({"prop8", label, [=] { return check_prop8(K, label); }});
  }
  // Checks on the section functions f(x) = |K ∩ (F + x)| for random F of codimension k < n.
  for (const char* name : {"fradelizi", "berwald", "lemma6", "concavity"}) {
    if (!checks.contains(name) || !in_range(checks[name], n)) continue;
    const json cfg = checks[name];
    const std::vector<int> ks = int_list(cfg.value("k", json::array({1, 2})));
    const int dirs = cfg.value("dirs", 8);
    const int chords = cfg.value("chords", 50);
    const std::string check = name;
    for (int k : ks) {
      if (k >= n) continue;
      jobs.push_back({check, label + "|section(k=" + std::to_string(k) + ")", [=] {
        const std::uint64_t s = job_seed(base, index, 500 + k);
        CounterRng rng(s, 0x5345);
        const Mat Q = random_orthogonal(n, rng);
        const Subspace F(n, Q.leftCols(n - k));
        ConcaveFunctionOracle f = section_oracle(K, F);
        f.label = label + "|section(k=" + std::to_string(k) + ")";
        std::vector<CheckResult> out;
        if (check == "fradelizi") {
          out.push_back(check_fradelizi(f, s));
        } else if (check == "berwald") {
          const double top = maximize(f, s).value;
          for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{1.0, double(k + 1)}, std::pair{double(k), double(k + 2)}})
            for (auto r : check_berwald(f, p, q, dirs, s, top)) out.push_back(r);
        } else if (check == "lemma6") {
          for (double p : {1.0, double(k + 1)}) out.push_back(check_lemma6(f, p, dirs, s));
        } else {
          out.push_back(check_concavity(f, chords, s));
        }
        return out;
      }});
    }
  }
  if (checks.contains("ci") && in_range(checks["ci"], n) && poly && n >= 2) {
    const int dirs = checks["ci"].value("dirs", 4);
    jobs.push_back({"ci_inclusion", label, [=] {
      return std::vector<CheckResult>{check_ci_inclusion(K, label, dirs, job_seed(base, index, 9))};
    }});
  }
}

}  // namespace

CorpusReport run_corpus(const std::string& manifest_json, int jobs) {
  json manifest;
  try {
    manifest = json::parse(manifest_json);
  } catch (const json::exception& e) {
    throw DomainError(std::string("corpus manifest: ") + e.what());
  }
  if (!manifest.contains("bodies") || !manifest.contains("checks")) {
    throw DomainError("corpus manifest needs \"bodies\" and \"checks\"");
  }
  const std::uint64_t base = manifest.value("seed", std::uint64_t{1});
  const std::vector<CorpusBody> bodies = expand_bodies(manifest.at("bodies"));
  std::vector<Job> work;
  for (std::size_t i = 0; i < bodies.size(); ++i) add_body_jobs(work, bodies[i], i, manifest.at("checks"), base);

  std::vector<std::vector<CheckResult>> slots(work.size());
  parallel_for(static_cast<int>(work.size()), jobs, [&](int i) {
    try {
      slots[i] = work[i].run();
    } catch (const std::exception& e) {
      CheckResult r;
      r.name = work[i].name;
      r.body_spec = work[i].body;
      r.notes = std::string("error: ") + e.what();
      slots[i] = {r};
    }
  });

  CorpusReport report;
  for (auto& s : slots)
    for (auto& r : s) report.results.push_back(std::move(r));
  sort_results(report.results);
  for (const auto& r : report.results) {
    if (!r.assertable) ++report.report_only;
    else if (!r.passed) ++report.failed;
  }
  return report;
}

}  // namespace cvxsec
