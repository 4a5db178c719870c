#include "cvxsec/bodies.hpp"

#include <cmath>
#include <limits>

#include "cvxsec/lp.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/volume.hpp"

namespace cvxsec {

namespace {

std::shared_ptr<const HullResult> hull_of_vertices(const std::vector<Vec>& pts, int dim) {
  if (pts.empty()) throw DegenerateError("polytope without vertices");
  for (const auto& p : pts)
    if (p.size() != dim) throw DomainError("vertex dimension mismatch");
  const AffineHull ah = affine_hull(pts);
  if (ah.rank() < dim) throw LowerDimensionalError("vertex set is lower-dimensional", ah);
  return std::make_shared<const HullResult>(convex_hull(pts));
}

Mat symmetric_sqrt(const Mat& q) {
  Eigen::SelfAdjointEigenSolver<Mat> es(q);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

// ---------------------------------------------------------------------------

ConvexBody::ConvexBody(VPolytope v) : dim_(v.dim) {
  hull_ = hull_of_vertices(v.vertices, v.dim);
  rep_ = VPolytope{dim_, hull_->vertices};
}

ConvexBody::ConvexBody(HPolytope h) : dim_(h.dim) {
  hull_ = std::make_shared<const HullResult>(halfspace_intersection(h.halfspaces, h.dim));
  rep_ = HPolytope{dim_, hull_->facets};
}

ConvexBody::ConvexBody(Ball b) : dim_(b.dim()) {
  if (!(b.radius > 0)) throw DomainError("ball radius must be positive");
  rep_ = std::move(b);
}

ConvexBody::ConvexBody(AffineImage a) {
  if (!a.base) throw DomainError("affine image without base body");
  dim_ = a.base->dim();
  if (a.matrix.rows() != dim_ || a.matrix.cols() != dim_ || a.shift.size() != dim_)
    throw DomainError("affine image shape mismatch");
  if (std::abs(a.matrix.determinant()) < 1e-12) throw DomainError("affine image matrix is singular");
  if (a.base->is_polytope()) {
    std::vector<Vec> mapped;
    for (const auto& v : a.base->vertices()) mapped.push_back(a.matrix * v + a.shift);
    hull_ = hull_of_vertices(mapped, dim_);
  }
  rep_ = std::move(a);
}

ConvexBody ConvexBody::from_hull(HullResult h) {
  ConvexBody b;
  b.dim_ = h.dim;
  b.hull_ = std::make_shared<const HullResult>(std::move(h));
  b.rep_ = VPolytope{b.dim_, b.hull_->vertices};
  return b;
}

std::string ConvexBody::kind() const {
  switch (rep_.index()) {
    case 0: return "vpolytope";
    case 1: return "hpolytope";
    case 2: return "ball";
    default: return "affine";
  }
}

const HullResult& ConvexBody::polytope() const {
  if (!hull_) throw DomainError("operation requires a polytope, got " + kind());
  return *hull_;
}

ConvexBody::Ellipsoid ConvexBody::ellipsoid() const {
  if (const auto* b = std::get_if<Ball>(&rep_)) return {b->radius * Mat::Identity(dim_, dim_), b->center};
  if (const auto* a = std::get_if<AffineImage>(&rep_)) {
    if (a->base->is_ellipsoid()) {
      const auto e = a->base->ellipsoid();
      return {a->matrix * e.matrix, a->matrix * e.center + a->shift};
    }
  }
  throw DomainError("body is not an ellipsoid");
}

// ---------------------------------------------------------------------------

VPolytope make_regular_simplex(int n) {
  check_dimension(n);
  // Helmert basis of {x in R^{n+1} : sum x = 0}; vertex i is e_i expressed in it.
  std::vector<Vec> verts(n + 1, Vec::Zero(n));
  for (int j = 1; j <= n; ++j) {
    const double norm = std::sqrt(static_cast<double>(j) * (j + 1));
    for (int i = 0; i < j; ++i) verts[i](j - 1) = 1.0 / norm;
    verts[j](j - 1) = -static_cast<double>(j) / norm;
  }
  const double scale = std::sqrt(static_cast<double>(n + 1) / n);
  for (auto& v : verts) v *= scale;
  return {n, verts};
}

HPolytope make_cube(int n) {
  check_dimension(n);
  HPolytope h{n, {}};
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Unit(n, i);
    h.halfspaces.push_back({e, 1.0});
    h.halfspaces.push_back({-e, 1.0});
  }
  return h;
}

VPolytope make_cross_polytope(int n) {
  check_dimension(n);
  VPolytope v{n, {}};
  for (int i = 0; i < n; ++i) {
    v.vertices.push_back(Vec::Unit(n, i));
    v.vertices.push_back(-Vec::Unit(n, i));
  }
  return v;
}

ConvexBody make_ball(int n, double r) {
  check_dimension(n);
  if (!(r > 0)) throw DomainError("ball radius must be positive");
  return Ball{Vec::Zero(n), r};
}

VPolytope random_centered_polytope(int n, int num_points, std::uint64_t seed) {
  check_dimension(n);
  if (num_points < n + 1) throw DomainError("random polytope needs at least n+1 points");
  for (std::uint64_t attempt = 0; attempt <= 100; ++attempt) {
    CounterRng rng(seed, attempt);
    std::vector<Vec> pts;
    for (int i = 0; i < num_points; ++i) pts.push_back(rng.in_unit_ball(n));
    if (affine_hull(pts).rank() < n) continue;
    const HullResult h = convex_hull(pts);
    const Vec c = polytope_moments(h).centroid;
    VPolytope out{n, {}};
    for (const auto& v : h.vertices) out.vertices.push_back(v - c);
    return out;
  }
  throw DegenerateError("random polytope stayed lower-dimensional after 100 retries");
}

HullResult halfspace_intersection(const std::vector<Halfspace>& halfspaces, int dim, double tol) {
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != dim) throw DomainError("halfspace dimension mismatch");
    const double len = h.normal.norm();
    if (len < 1e-14) {
      if (h.offset < -tol) throw DegenerateError("empty halfspace system");
      continue;
    }
    hs.push_back({h.normal / len, h.offset / len});
  }
  const ChebyshevBall cb = chebyshev_center(hs, dim);
  double scale = 1.0;
  for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset));
  if (cb.radius <= tol * scale) throw DegenerateError("halfspace system is empty or lower-dimensional");
  if (dim == 1) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (const auto& h : hs) {
      if (h.normal(0) > 0)
        hi = std::min(hi, h.offset / h.normal(0));
      else
        lo = std::max(lo, h.offset / h.normal(0));
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DegenerateError("unbounded halfspace system");
    return convex_hull({Vec::Constant(1, lo), Vec::Constant(1, hi)});
  }
  // Polar duality about the Chebyshev centre: facets of the dual hull are vertices.
  std::vector<Vec> dual;
  for (const auto& h : hs) dual.push_back(h.normal / h.slack(cb.center));
  if (affine_hull(dual, 1e-12).rank() < dim) throw DegenerateError("unbounded halfspace system");
  HullResult dh;
  try {
    dh = convex_hull(dual, tol);
  } catch (const DegenerateError&) {
    throw DegenerateError("unbounded halfspace system");
  }
  std::vector<Vec> verts;
  for (const auto& f : dh.facets) {
    if (f.offset <= 1e-12) throw DegenerateError("unbounded halfspace system");
    verts.push_back(cb.center + f.normal / f.offset);
  }
  return convex_hull(verts, tol);
}

// ---------------------------------------------------------------------------

double support(const ConvexBody& K, const Vec& u) {
  if (K.is_polytope()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : K.vertices()) best = std::max(best, v.dot(u));
    return best;
  }
  const auto e = K.ellipsoid();
  return e.center.dot(u) + (e.matrix.transpose() * u).norm();
}

double minkowski_norm(const ConvexBody& K, const Vec& x) {
  if (!origin_interior(K)) throw DomainError("minkowski functional needs the origin in the interior");
  if (K.is_polytope()) {
    double best = 0.0;
    for (const auto& f : K.facets()) best = std::max(best, f.normal.dot(x) / f.offset);
    return best;
  }
  const double len = x.norm();
  if (len == 0.0) return 0.0;
  const auto e = K.ellipsoid();
  const auto lu = e.matrix.partialPivLu();
  const Vec w = lu.solve(x / len);
  const Vec z = lu.solve(e.center);
  // |t w - z| = 1, largest root t.
  const double a = w.squaredNorm(), b = -2.0 * w.dot(z), c = z.squaredNorm() - 1.0;
  const double t = (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
  return len / t;
}

double radial(const ConvexBody& K, const Vec& u) {
  const double g = minkowski_norm(K, u);
  if (g <= 0.0) throw DomainError("radial function undefined for zero direction");
  return 1.0 / g;
}

bool contains(const ConvexBody& K, const Vec& x, double tol) {
  if (K.is_polytope()) {
    for (const auto& f : K.facets())
      if (f.normal.dot(x) - f.offset > tol) return false;
    return true;
  }
  const auto e = K.ellipsoid();
  return e.matrix.partialPivLu().solve(x - e.center).norm() <= 1.0 + tol;
}

bool origin_interior(const ConvexBody& K, double tol) {
  if (K.is_polytope()) {
    for (const auto& f : K.facets())
      if (f.offset <= tol) return false;
    return true;
  }
  const auto e = K.ellipsoid();
  return e.matrix.partialPivLu().solve(e.center).norm() < 1.0 - tol;
}

Box bounding_box(const ConvexBody& K) {
  const int n = K.dim();
  Box box{Vec::Zero(n), Vec::Zero(n)};
  for (int i = 0; i < n; ++i) {
    box.hi(i) = support(K, Vec::Unit(n, i));
    box.lo(i) = -support(K, -Vec::Unit(n, i));
  }
  return box;
}

// ---------------------------------------------------------------------------

ConvexBody polar(const ConvexBody& K) {
  if (!origin_interior(K)) throw DomainError("polar body needs the origin in the interior");
  const int n = K.dim();
  if (K.is_polytope()) {
    if (std::holds_alternative<VPolytope>(K.rep())) {
      HPolytope h{n, {}};
      for (const auto& v : K.vertices()) h.halfspaces.push_back({v, 1.0});
      return h;
    }
    VPolytope v{n, {}};
    for (const auto& f : K.facets()) v.vertices.push_back(f.normal / f.offset);
    return v;
  }
  const auto e = K.ellipsoid();
  if (e.center.norm() > 1e-14) throw DomainError("polar of an off-centre ellipsoid is not supported");
  if (const auto* b = std::get_if<Ball>(&K.rep())) return Ball{Vec::Zero(n), 1.0 / b->radius};
  auto unit = std::make_shared<const ConvexBody>(Ball{Vec::Zero(n), 1.0});
  return AffineImage{unit, e.matrix.transpose().inverse(), Vec::Zero(n)};
}

ConvexBody translate(const ConvexBody& K, const Vec& v) {
  const int n = K.dim();
  if (const auto* vp = std::get_if<VPolytope>(&K.rep())) {
    VPolytope out{n, {}};
    for (const auto& x : vp->vertices) out.vertices.push_back(x + v);
    return out;
  }
  if (const auto* hp = std::get_if<HPolytope>(&K.rep())) {
    HPolytope out{n, {}};
    for (const auto& h : hp->halfspaces) out.halfspaces.push_back({h.normal, h.offset + h.normal.dot(v)});
    return out;
  }
  if (const auto* b = std::get_if<Ball>(&K.rep())) return Ball{b->center + v, b->radius};
  const auto& a = std::get<AffineImage>(K.rep());
  return AffineImage{a.base, a.matrix, a.shift + v};
}

ConvexBody polar_about(const ConvexBody& K, const Vec& z) {
  if (!contains(K, z, -kGeomTol)) throw DomainError("polar centre must be interior");
  return translate(polar(translate(K, -z)), z);
}

ConvexBody affine_map(const ConvexBody& K, const Mat& A, const Vec& b) {
  const int n = K.dim();
  if (K.is_polytope()) {
    if (std::abs(A.determinant()) < 1e-12) throw DomainError("affine map is singular");
    VPolytope out{n, {}};
    for (const auto& v : K.vertices()) out.vertices.push_back(A * v + b);
    return out;
  }
  return AffineImage{std::make_shared<const ConvexBody>(K), A, b};
}

ConvexBody project(const ConvexBody& K, const Subspace& S) {
  if (S.dim() < 1) throw DomainError("projection onto the zero subspace");
  if (K.is_polytope()) {
    VPolytope out{S.dim(), {}};
    for (const auto& v : K.vertices()) out.vertices.push_back(S.coords(v));
    return out;
  }
  if (const auto* b = std::get_if<Ball>(&K.rep())) return Ball{S.coords(b->center), b->radius};
  const auto e = K.ellipsoid();
  const Mat m = S.basis().transpose() * e.matrix;
  auto unit = std::make_shared<const ConvexBody>(Ball{Vec::Zero(S.dim()), 1.0});
  return AffineImage{unit, symmetric_sqrt(m * m.transpose()), S.coords(e.center)};
}

ConvexBody convert(const ConvexBody& K, Representation target) {
  const auto& h = K.polytope();
  if (target == Representation::Vertices) return VPolytope{K.dim(), h.vertices};
  return HPolytope{K.dim(), h.facets};
}

}  // namespace cvxsec
