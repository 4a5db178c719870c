#include "cvxsec/intersection_bodies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cvxsec/parallel.hpp"
#include "cvxsec/quadrature.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/special.hpp"

namespace cvxsec {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kBacktrack = 0.5;

double simplex_kernel(const Simplex& s, const Vec& z, int n, int order) {
  double total = 0.0;
  for (const auto& q : simplex_rule(s, order)) total += q.w * std::pow(1.0 - z.dot(q.x), -n);
  return total;
}

double adaptive_kernel(const Simplex& s, const Vec& z, int n, int order, double rel_tol, int depth) {
  const double coarse = simplex_kernel(s, z, n, order);
  const double fine = simplex_kernel(s, z, n, 2 * order);
  if (std::abs(fine - coarse) <= rel_tol * std::abs(fine) || depth >= 12) return fine;
  // Bisect the longest edge.
  std::size_t a = 0, b = 1;
  double longest = -1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double len = (s[i] - s[j]).squaredNorm();
      if (len > longest) {
        longest = len;
        a = i;
        b = j;
      }
    }
  const Vec mid = 0.5 * (s[a] + s[b]);
  Simplex left = s, right = s;
  left[b] = mid;
  right[a] = mid;
  return adaptive_kernel(left, z, n, order, rel_tol, depth + 1) + adaptive_kernel(right, z, n, order, rel_tol, depth + 1);
}

}  // namespace

double intersection_radial(const ConvexBody& K, const Vec& u) {
  const double len = u.norm();
  if (len == 0.0) throw DomainError("direction must be nonzero");
  const Subspace plane = Subspace::orthogonal_to({u / len}, K.dim());
  return section(K, Flat::through_origin(plane)).volume();
}

// ---------------------------------------------------------------------------

CISection::CISection(const ConvexBody& K, const Vec& u) : n_(K.dim()) {
  if (n_ < 2) throw DomainError("CI needs n >= 2");
  const double len = u.norm();
  if (len == 0.0) throw DomainError("direction must be nonzero");
  u_ = u / len;
  plane_ = Subspace::orthogonal_to({u_}, n_);
  section_ = section(K, Flat::through_origin(plane_));
  if (section_.kind != SectionResult::Kind::Body) throw DomainError("origin is not interior to K");
  volume_ = section_.volume();
  const ConvexBody& S = *section_.body;
  if (S.is_polytope()) {
    simplices_ = triangulate(S.polytope());
    for (const auto& v : S.vertices()) radius_ = std::max(radius_, v.norm());
    for (const auto& h : S.facets())
      if (h.offset <= 0.0) throw DomainError("origin is not interior to K ∩ u^⊥");
  } else {
    ellipsoid_ = S.ellipsoid();
    const Vec sv = Eigen::JacobiSVD<Mat>(ellipsoid_->matrix).singularValues();
    radius_ = ellipsoid_->center.norm() + sv(0);
    if (!contains(S, Vec::Zero(n_ - 1), -1e-12)) throw DomainError("origin is not interior to K ∩ u^⊥");
  }
}

double CISection::max_pairing(const Vec& z) const {
  if (ellipsoid_) return z.dot(ellipsoid_->center) + (ellipsoid_->matrix.transpose() * z).norm();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : body().vertices()) best = std::max(best, z.dot(v));
  return best;
}

double CISection::objective(const Vec& z) const {
  if (!admissible(z)) throw DomainError("z is not in the interior of P_u K^*");
  if (ellipsoid_) {
    // Substituting y = c + M w reduces to ∫_B (1 - <a,w>)^{-n} dw = kappa (1 - |a|^2)^{-n/2}.
    const double s = 1.0 - z.dot(ellipsoid_->center);
    const Vec a = ellipsoid_->matrix.transpose() * z / s;
    return std::abs(ellipsoid_->matrix.determinant()) * unit_ball_volume(n_ - 1) * std::pow(s, -n_) *
           std::pow(1.0 - a.squaredNorm(), -0.5 * n_);
  }
  double total = 0.0;
  for (const auto& S : simplices_) {
    double prod = 1.0;
    for (const auto& v : S) prod *= 1.0 - z.dot(v);
    total += simplex_volume(S) / prod;
  }
  return total;
}

Vec CISection::gradient(const Vec& z) const {
  if (!admissible(z)) throw DomainError("z is not in the interior of P_u K^*");
  const int d = n_ - 1;
  if (ellipsoid_) {
    const Vec& c = ellipsoid_->center;
    const double s = 1.0 - z.dot(c);
    const Vec a = ellipsoid_->matrix.transpose() * z / s;
    const double w = 1.0 - a.squaredNorm();
    const Mat J = (Mat(ellipsoid_->matrix.transpose()) + a * c.transpose()) / s;
    return objective(z) * (n_ * c / s + n_ * J.transpose() * a / w);
  }
  Vec g = Vec::Zero(d);
  for (const auto& S : simplices_) {
    double prod = 1.0;
    Vec sum = Vec::Zero(d);
    for (const auto& v : S) {
      const double a = 1.0 - z.dot(v);
      prod *= a;
      sum += v / a;
    }
    g += simplex_volume(S) / prod * sum;
  }
  return g;
}

Mat CISection::hessian(const Vec& z) const {
  const int d = n_ - 1;
  if (ellipsoid_) {
    const double h = 1e-5 / radius_;
    Mat H(d, d);
    for (int i = 0; i < d; ++i) {
      const Vec e = h * Vec::Unit(d, i);
      H.col(i) = (gradient(z + e) - gradient(z - e)) / (2 * h);
    }
    return 0.5 * (H + H.transpose());
  }
  if (!admissible(z)) throw DomainError("z is not in the interior of P_u K^*");
  Mat H = Mat::Zero(d, d);
  for (const auto& S : simplices_) {
    double prod = 1.0;
    Vec sum = Vec::Zero(d);
    Mat outer = Mat::Zero(d, d);
    for (const auto& v : S) {
      const double a = 1.0 - z.dot(v);
      prod *= a;
      sum += v / a;
      outer += v * v.transpose() / (a * a);
    }
    H += simplex_volume(S) / prod * (sum * sum.transpose() + outer);
  }
  return H;
}

double CISection::objective_quadrature(const Vec& z, int order, double rel_tol) const {
  if (!admissible(z)) throw DomainError("z is not in the interior of P_u K^*");
  if (ellipsoid_) throw DomainError("quadrature route is implemented for polytope sections");
  double total = 0.0;
  for (const auto& S : simplices_) total += adaptive_kernel(S, z, n_, order, rel_tol, 0);
  return total;
}

double CISection::halfspace_volume(const Vec& z) const {
  if (z.norm() == 0.0) return volume_;
  if (ellipsoid_) {
    // <c + M w, z> >= 0  iff  <w, e> >= h for the unit vector e along M^T z.
    const Vec mz = ellipsoid_->matrix.transpose() * z;
    const double h = -z.dot(ellipsoid_->center) / mz.norm();
    if (h >= 1.0) return 0.0;
    if (h <= -1.0) return volume_;
    const int d = n_ - 1;
    auto slab = [d](double t) { return std::pow(1.0 - t * t, 0.5 * (d - 1)); };
    const double frac = integrate(slab, h, 1.0).value / integrate(slab, -1.0, 1.0).value;
    return volume_ * frac;
  }
  return clip(body(), Halfspace{-z, 0.0}).volume();
}

double ci_objective(const ConvexBody& K, const Vec& u, const Vec& z) {
  const CISection s(K, u);
  if (std::abs(z.dot(s.direction())) > 1e-10 * std::max(1.0, z.norm())) throw DomainError("z must lie in u^⊥");
  return s.objective(s.hyperplane().coords(z));
}

Vec ci_objective_gradient(const ConvexBody& K, const Vec& u, const Vec& z) {
  const CISection s(K, u);
  if (std::abs(z.dot(s.direction())) > 1e-10 * std::max(1.0, z.norm())) throw DomainError("z must lie in u^⊥");
  return s.hyperplane().embed(s.gradient(s.hyperplane().coords(z)));
}

// ---------------------------------------------------------------------------

namespace {

CIEvaluation finish(const CISection& s, const Vec& z, double value, int iterations, double tol, std::string method) {
  CIEvaluation e;
  e.direction = s.direction();
  e.i_radius = s.volume();
  e.ci_radius = value;
  e.minimizer_z = s.hyperplane().embed(z);
  e.iterations = iterations;
  e.certified_gap = s.gradient(z).norm() * s.radius() / value;
  e.certified = e.certified_gap < tol;
  e.method = std::move(method);
  return e;
}

}  // namespace

CIEvaluation ci_radial_compass(const CISection& s, const CIOptions& options) {
  const int d = s.n() - 1;
  const double bound = 1.0 - options.shrink;
  Vec z = Vec::Zero(d);
  double fz = s.objective(z);
  double step = 0.25 / s.radius();
  int it = 0;
  while (step > 1e-13 / s.radius() && it < 50 * options.max_iterations) {
    bool moved = false;
    for (int i = 0; i < d && !moved; ++i)
      for (double sign : {1.0, -1.0}) {
        const Vec y = z + sign * step * Vec::Unit(d, i);
        ++it;
        if (!s.admissible(y, bound)) continue;
        const double fy = s.objective(y);
        if (fy < fz) {
          z = y;
          fz = fy;
          moved = true;
          break;
        }
      }
    if (!moved) step *= 0.5;
  }
  return finish(s, z, fz, it, options.tol, "compass");
}

CIEvaluation ci_radial(const CISection& s, const CIOptions& options) {
  const int d = s.n() - 1;
  const double bound = 1.0 - options.shrink;
  Vec z = Vec::Zero(d);
  double fz = s.objective(z);
  int it = 0;
  bool stalled = false;
  for (; it < options.max_iterations; ++it) {
    const Vec g = s.gradient(z);
    if (g.norm() * s.radius() < options.tol * fz) break;
    Vec dir;
    const Eigen::LDLT<Mat> ldlt(s.hessian(z));
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) dir = -ldlt.solve(g);
    if (dir.size() != d || !dir.allFinite() || g.dot(dir) >= 0.0) dir = -g;
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 80; ++k, t *= kBacktrack) {
      const Vec y = z + t * dir;
      if (!s.admissible(y, bound)) continue;
      const double fy = s.objective(y);
      if (fy <= fz + kArmijo * t * g.dot(dir)) {
        z = y;
        fz = fy;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stalled = true;
      break;
    }
  }
  CIEvaluation e = finish(s, z, fz, it, options.tol, "newton");
  if (e.certified || !stalled) return e;
  // Newton could not make progress: polish with the derivative-free search.
  CIEvaluation c = ci_radial_compass(s, options);
  c.iterations += e.iterations;
  return c.ci_radius < e.ci_radius ? c : e;
}

CIEvaluation ci_radial(const ConvexBody& K, const Vec& u, const CIOptions& options) {
  return ci_radial(CISection(K, u), options);
}

std::vector<Vec> random_directions(int n, int count, std::uint64_t seed) {
  CounterRng rng(seed, 0x4449);
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) dirs.push_back(rng.unit_vector(n));
  return dirs;
}

CIReport ci_inclusion_report(const ConvexBody& K, int num_dirs, std::uint64_t seed, const CIOptions& options,
                             int jobs) {
  const auto dirs = random_directions(K.dim(), num_dirs, seed);
  CIReport r;
  r.records.resize(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), jobs,
               [&](int i) { r.records[static_cast<std::size_t>(i)] = ci_radial(K, dirs[static_cast<std::size_t>(i)], options); });
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = 0.0;
  for (const auto& e : r.records) {
    const double ratio = e.ci_radius / e.i_radius;
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
    if (!e.certified) ++r.num_uncertified;
    if (e.ci_radius > e.i_radius * (1.0 + 1e-9)) r.upper_inclusion = false;
  }
  return r;
}

}  // namespace cvxsec
