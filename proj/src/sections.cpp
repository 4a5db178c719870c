#include "cvxsec/sections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cvxsec/quadrature.hpp"
#include "cvxsec/special.hpp"
#include "cvxsec/volume.hpp"

namespace cvxsec {

namespace {

constexpr double kEmptyTol = 1e-12;

Mat symmetric_inverse_sqrt(const Mat& q) {
  Eigen::SelfAdjointEigenSolver<Mat> es(q);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

// Facets of K restricted to the flat: <B^T a, y> <= b - <a, x0>. Returns
// false when a facet parallel to the flat already excludes it.
bool restrict_facets(const std::vector<Halfspace>& facets, const Flat& flat, std::vector<Halfspace>& out) {
  const Mat& B = flat.direction.basis();
  for (const auto& f : facets) {
    const Vec a = B.transpose() * f.normal;
    const double b = f.offset - f.normal.dot(flat.offset);
    if (a.norm() < 1e-12) {
      if (b <= kEmptyTol) return false;
      continue;
    }
    out.push_back({a, b});
  }
  return true;
}

SectionResult from_halfspaces(const std::vector<Halfspace>& hs, int dim) {
  SectionResult r;
  if (dim == 1) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) {
      if (h.normal(0) > 0)
        hi = std::min(hi, h.offset / h.normal(0));
      else
        lo = std::max(lo, h.offset / h.normal(0));
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DegenerateError("unbounded section");
    if (hi - lo <= kEmptyTol * std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) return r;
    r.kind = SectionResult::Kind::Body;
    r.body = ConvexBody(VPolytope{1, {Vec::Constant(1, lo), Vec::Constant(1, hi)}});
    return r;
  }
  try {
    r.body = ConvexBody::from_hull(halfspace_intersection(hs, dim));
    r.kind = SectionResult::Kind::Body;
  } catch (const DegenerateError&) {
    r.body.reset();
  }
  return r;
}

SectionResult ellipsoid_section(const ConvexBody& K, const Flat& flat) {
  const auto e = K.ellipsoid();
  const auto lu = e.matrix.partialPivLu();
  SectionResult r;
  const int dim = flat.direction.dim();
  const Vec w = lu.solve(flat.offset - e.center);
  if (dim == 0) {
    if (w.norm() <= 1.0) r.kind = SectionResult::Kind::Point;
    return r;
  }
  // |A s + w| <= 1 with A = E^{-1} B.
  const Mat A = lu.solve(flat.direction.basis());
  const Mat AtA = A.transpose() * A;
  const Vec s0 = -AtA.ldlt().solve(A.transpose() * w);
  const double rho2 = (A * s0 + w).squaredNorm();
  if (rho2 >= 1.0 - kEmptyTol) return r;
  const Mat M = std::sqrt(1.0 - rho2) * symmetric_inverse_sqrt(AtA);
  r.kind = SectionResult::Kind::Body;
  const double scale = M(0, 0);
  if ((M - scale * Mat::Identity(dim, dim)).norm() < 1e-14 * scale) {
    r.body = ConvexBody(Ball{s0, scale});
  } else {
    auto unit = std::make_shared<const ConvexBody>(Ball{Vec::Zero(dim), 1.0});
    r.body = ConvexBody(AffineImage{unit, M, s0});
  }
  return r;
}

Mat flat_basis(const Subspace& F, const Mat& extra) {
  Mat W(F.ambient_dim(), F.dim() + extra.cols());
  W.leftCols(F.dim()) = F.basis();
  W.rightCols(extra.cols()) = extra;
  return W;
}

void check_perpendicular(const Subspace& F, const Vec& d) {
  if ((F.basis().transpose() * d).norm() > 1e-10 * std::max(1.0, d.norm()))
    throw DomainError("direction must be orthogonal to F");
}

// K ∩ (F ⊕ R d) in coordinates (F-coords, t).
SectionResult ray_plane_section(const ConvexBody& K, const Subspace& F, const Vec& d) {
  check_perpendicular(F, d);
  const Mat W = flat_basis(F, d.normalized());
  return section(K, Flat::through_origin(Subspace(K.dim(), W)));
}

// Volume of the slice {t = t0} of a body given in coordinates (a, t).
double slice_volume(const ConvexBody& Kw, double t0) {
  const int dim = Kw.dim();
  Mat basis = Mat::Identity(dim, dim - 1);
  Vec x0 = Vec::Zero(dim);
  x0(dim - 1) = t0;
  return section(Kw, Flat{Subspace(dim, basis), x0}).volume();
}

double ray_integral_on_section(const ConvexBody& Kw, double p) {
  const int dim = Kw.dim();
  const Vec et = Vec::Unit(dim, dim - 1);
  const double R = support(Kw, et);
  if (!(R > 0)) return 0.0;
  auto g = [&](double t) { return std::pow(t, p - 1.0) * slice_volume(Kw, t); };
  if (!Kw.is_polytope()) return integrate(g, 0.0, R, 1e-10, 15).value;
  std::vector<double> breaks{0.0, R};
  for (const auto& v : Kw.vertices())
    if (v(dim - 1) > 0 && v(dim - 1) < R) breaks.push_back(v(dim - 1));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-13; }), breaks.end());
  if (p != std::floor(p)) return integrate_pieces(g, breaks, 1e-10, 15).value;
  // Polynomial of degree (p - 1) + (dim - 1) on each piece: Gauss-Legendre is exact.
  const int degree = static_cast<int>(p) - 1 + dim - 1;
  const int nodes = degree / 2 + 1;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Rule1d rule = gauss_legendre(nodes, breaks[i], breaks[i + 1]);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) total += rule.weights[j] * g(rule.nodes[j]);
  }
  return total;
}

}  // namespace

double SectionResult::volume() const {
  switch (kind) {
    case Kind::Empty: return 0.0;
    case Kind::Point: return 1.0;
    case Kind::Body: return moments(*body).volume;
  }
  return 0.0;
}

SectionResult section(const ConvexBody& K, const Flat& flat) {
  if (flat.direction.ambient_dim() != K.dim() || flat.offset.size() != K.dim())
    throw DomainError("flat and body dimensions differ");
  if (!K.is_polytope()) return ellipsoid_section(K, flat);
  SectionResult r;
  const int dim = flat.direction.dim();
  if (dim == 0) {
    if (contains(K, flat.offset, kEmptyTol)) r.kind = SectionResult::Kind::Point;
    return r;
  }
  std::vector<Halfspace> hs;
  if (!restrict_facets(K.facets(), flat, hs)) return r;
  return from_halfspaces(hs, dim);
}

SectionResult clip(const ConvexBody& K, const Halfspace& h) {
  if (!K.is_polytope()) throw DomainError("clip requires a polytope");
  std::vector<Halfspace> hs = K.facets();
  hs.push_back(h);
  return from_halfspaces(hs, K.dim());
}

// ---------------------------------------------------------------------------

PolyhedralCone::PolyhedralCone(Subspace ambient, std::vector<Vec> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  if (generators_.empty()) throw DomainError("cone needs at least one generator");
  const int n = ambient_.ambient_dim();
  for (const auto& g : generators_) {
    if (g.size() != n) throw DomainError("generator dimension mismatch");
    if (g.norm() < 1e-14) throw DomainError("zero generator");
    if ((g - ambient_.project(g)).norm() > 1e-12 * std::max(1.0, g.norm()))
      throw DomainError("generator outside the cone's ambient subspace");
  }
  span_ = Subspace::span(generators_, n);
  if (span_.dim() != p()) throw DomainError("cone is not simplicial: generators are dependent");
  coords_ = Mat(p(), p());
  for (int i = 0; i < p(); ++i) coords_.col(i) = span_.coords(generators_[i]);
}

PolyhedralCone PolyhedralCone::ray(const Subspace& ambient, const Vec& direction) {
  return PolyhedralCone(ambient, {direction});
}

std::vector<Halfspace> PolyhedralCone::halfspaces_in_span() const {
  const Mat inv = coords_.inverse();
  std::vector<Halfspace> out;
  for (int i = 0; i < p(); ++i) {
    const Vec a = -inv.row(i).transpose();
    out.push_back({a / a.norm(), 0.0});
  }
  return out;
}

bool PolyhedralCone::contains(const Vec& x, double tol) const {
  const Vec y = span_.coords(x);
  if ((x - span_.embed(y)).norm() > tol * std::max(1.0, x.norm())) return false;
  const Vec lambda = coords_.partialPivLu().solve(y);
  return lambda.minCoeff() >= -tol * std::max(1.0, x.norm());
}

PolyhedralCone PolyhedralCone::negated() const {
  std::vector<Vec> g;
  for (const auto& v : generators_) g.push_back(-v);
  return PolyhedralCone(ambient_, std::move(g));
}

bool PolyhedralCone::orthogonal_generators(double tol) const {
  for (int i = 0; i < p(); ++i)
    for (int j = i + 1; j < p(); ++j)
      if (std::abs(generators_[i].normalized().dot(generators_[j].normalized())) > tol) return false;
  return true;
}

double PolyhedralCone::solid_angle_fraction() const {
  if (p() == 1) return 0.5;
  if (orthogonal_generators()) return std::ldexp(1.0, -p());
  std::vector<Vec> u;
  for (int i = 0; i < p(); ++i) u.push_back(coords_.col(i).normalized());
  if (p() == 2) return std::acos(std::clamp(u[0].dot(u[1]), -1.0, 1.0)) / (2.0 * std::numbers::pi);
  if (p() == 3) {
    // Van Oosterom-Strackee formula for the solid angle of a trihedral cone.
    Mat m(3, 3);
    m << u[0], u[1], u[2];
    const double num = std::abs(m.determinant());
    const double den = 1.0 + u[0].dot(u[1]) + u[0].dot(u[2]) + u[1].dot(u[2]);
    return 2.0 * std::atan2(num, den) / (4.0 * std::numbers::pi);
  }
  throw DomainError("solid angle of a non-orthogonal cone with p > 3 is not supported");
}

// ---------------------------------------------------------------------------

namespace {

// Radius of K when K is a Euclidean ball about the origin (possibly given as
// an affine image, as produced by isotropic_position), otherwise 0.
double centred_ball_radius(const ConvexBody& K) {
  if (K.is_polytope()) return 0.0;
  const auto e = K.ellipsoid();
  const double scale = e.matrix.norm() / std::sqrt(static_cast<double>(K.dim()));
  if (e.center.norm() > 1e-12 * scale) return 0.0;
  const Mat G = e.matrix * e.matrix.transpose();
  if ((G - scale * scale * Mat::Identity(K.dim(), K.dim())).norm() > 1e-10 * scale * scale) return 0.0;
  return scale;
}

}  // namespace

double cone_section_volume_polyhedral(const ConvexBody& K, const Subspace& F, const PolyhedralCone& C) {
  const int n = K.dim();
  if (F.ambient_dim() != n || C.ambient().ambient_dim() != n) throw DomainError("cone, flat and body dimensions differ");
  for (const auto& g : C.generators()) check_perpendicular(F, g);
  const int e = F.dim(), p = C.p();
  const Mat W = flat_basis(F, C.span().basis());
  if (!K.is_polytope()) {
    const double r = centred_ball_radius(K);
    if (r == 0.0) throw DomainError("cone sections of ellipsoids need a ball centred at 0");
    return unit_ball_volume(e + p) * std::pow(r, e + p) * C.solid_angle_fraction();
  }
  std::vector<Halfspace> hs;
  if (!restrict_facets(K.facets(), Flat::through_origin(Subspace(n, W)), hs)) return 0.0;
  for (const auto& h : C.halfspaces_in_span()) {
    Vec a = Vec::Zero(e + p);
    a.tail(p) = h.normal;
    hs.push_back({a, 0.0});
  }
  return from_halfspaces(hs, e + p).volume();
}

double span_section_volume(const ConvexBody& K, const Subspace& F, const Subspace& G) {
  return section(K, Flat::through_origin(Subspace(K.dim(), flat_basis(F, G.basis())))).volume();
}

double ray_integral_quadrature(const ConvexBody& K, const Subspace& F, const Vec& d, double p) {
  if (!(p > 0)) throw DomainError("ray integral needs p > 0");
  const SectionResult s = ray_plane_section(K, F, d);
  if (s.kind != SectionResult::Kind::Body) return 0.0;
  return ray_integral_on_section(*s.body, p);
}

double ray_integral_exact(const ConvexBody& K, const Subspace& F, const Vec& d, int p) {
  if (p < 1) throw DomainError("exact ray integral needs integer p >= 1");
  const int e = F.dim();
  if (!K.is_polytope()) {
    const double r = centred_ball_radius(K);
    if (r == 0.0) return ray_integral_quadrature(K, F, d, p);
    // ∫_0^r t^{p-1} kappa_e (r^2 - t^2)^{e/2} dt.
    return unit_ball_volume(e) * std::pow(r, e + p) * 0.5 * beta_fn(0.5 * p, 0.5 * e + 1.0);
  }
  check_perpendicular(F, d);
  const Mat W = flat_basis(F, d.normalized());
  std::vector<Halfspace> hs;
  if (!restrict_facets(K.facets(), Flat::through_origin(Subspace(K.dim(), W)), hs)) return 0.0;
  hs.push_back({-Vec::Unit(e + 1, e), 0.0});
  const SectionResult s = from_halfspaces(hs, e + 1);
  if (s.kind != SectionResult::Kind::Body) return 0.0;
  const Vec et = Vec::Unit(e + 1, e);
  double total = 0.0;
  for (const auto& simplex : triangulate(s.body->polytope())) total += simplex_linear_moment(simplex, et, p - 1);
  return total;
}

RadialVolume cone_section_volume_radial(const ConvexBody& K, const Subspace& F, const PolyhedralCone& C,
                                        const RadialQuadSpec& spec) {
  const int p = C.p();
  const Mat& M = C.generator_coords();
  const Mat& Gb = C.span().basis();
  RadialVolume out;
  auto ray_term = [&](const Vec& mu) {
    const Vec y = M * mu;
    const double len = y.norm();
    ++out.rays;
    return std::pow(len, -p) * ray_integral_quadrature(K, F, Gb * (y / len), p);
  };
  const double det = std::abs(M.determinant());
  if (p == 1) {
    out.value = det * ray_term(Vec::Ones(1));
    return out;
  }
  if (p == 2) {
    const QuadResult q = integrate(
        [&](double s) {
          Vec mu(2);
          mu << s, 1.0 - s;
          return ray_term(mu);
        },
        0.0, 1.0, spec.rel_tol, 12);
    out.value = det * q.value;
    out.error = det * q.error;
    return out;
  }
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int order = spec.order; order <= spec.max_order; order *= 2) {
    double total = 0.0;
    for (const auto& bp : barycentric_rule(p - 1, order)) total += bp.w * ray_term(bp.x);
    total *= det;
    if (std::isfinite(previous)) {
      out.error = std::abs(total - previous);
      out.value = total;
      if (out.error <= spec.rel_tol * std::abs(total)) return out;
    }
    out.value = total;
    previous = total;
  }
  return out;
}

// ---------------------------------------------------------------------------

SectionVolumeFunction::SectionVolumeFunction(ConvexBody K, Subspace F) : K_(std::move(K)), F_(std::move(F)) {
  if (F_.ambient_dim() != K_.dim()) throw DomainError("flat direction and body dimensions differ");
  N_ = F_.complement();
  if (N_.dim() < 1) throw DomainError("section function needs k >= 1");
}

double SectionVolumeFunction::operator()(const Vec& x) const {
  if (x.size() != k()) throw DomainError("section function argument has wrong dimension");
  std::vector<long long> key(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) key[static_cast<std::size_t>(i)] = std::llround(x(i) * 1e10);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const double v = section(K_, Flat{F_, N_.embed(x)}).volume();
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::move(key), v);
  return v;
}

double SectionVolumeFunction::ray_integral(const Vec& theta, double p) const {
  const double len = theta.norm();
  if (len == 0.0) throw DomainError("ray integral along the zero vector");
  const Vec d = N_.embed(theta / len);
  const double unit = (p == std::floor(p) && p >= 1) ? ray_integral_exact(K_, F_, d, static_cast<int>(p))
                                                      : ray_integral_quadrature(K_, F_, d, p);
  return unit * std::pow(len, -p);
}

double SectionVolumeFunction::support_radius(const Vec& theta) const {
  const SectionResult s = ray_plane_section(K_, F_, N_.embed(theta.normalized()));
  if (s.kind != SectionResult::Kind::Body) return 0.0;
  return std::max(0.0, support(*s.body, Vec::Unit(F_.dim() + 1, F_.dim()))) / theta.norm();
}

std::size_t SectionVolumeFunction::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

}  // namespace cvxsec
