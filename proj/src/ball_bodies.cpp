#include "cvxsec/ball_bodies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "cvxsec/rng.hpp"
#include "cvxsec/special.hpp"
#include "cvxsec/volume.hpp"

namespace cvxsec {

namespace {

// ∫ <x,w>^p over the ellipsoid c + M B_2^n, p <= 2.
double ellipsoid_linear_moment(const ConvexBody::Ellipsoid& e, const Vec& w, int p) {
  const int n = static_cast<int>(e.center.size());
  const double vol = unit_ball_volume(n) * std::abs(e.matrix.determinant());
  const double c = e.center.dot(w);
  switch (p) {
    case 0:
      return vol;
    case 1:
      return vol * c;
    case 2:
      return vol * (c * c + (e.matrix.transpose() * w).squaredNorm() / (n + 2));
    default:
      throw DomainError("ellipsoid moments are implemented for p <= 2");
  }
}

double body_extent(const ConvexBody& K, const Subspace& N) {
  if (K.is_polytope()) {
    double r = 0.0;
    for (const auto& v : K.vertices()) r = std::max(r, N.coords(v).norm());
    return r;
  }
  const auto e = K.ellipsoid();
  const Mat A = N.basis().transpose() * e.matrix;
  return N.coords(e.center).norm() + Eigen::JacobiSVD<Mat>(A).singularValues()(0);
}

// Largest t in [0, hi] with f(t theta) > 0, for a support star-shaped about 0.
double ray_extent(const ConcaveFunctionOracle& f, const Vec& theta, double hi) {
  if (f(hi * theta) > 0.0) return hi;
  double lo = 0.0;
  for (int i = 0; i < 60 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid * theta) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

// Degree-5 seven-point rule on a triangle (barycentric points, weights sum 1).
struct TriPoint {
  double a, b, c, w;
};
constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456;
constexpr double kW0 = 0.225, kW1 = 0.132394152788506, kW2 = 0.125939180544827;
constexpr std::array<TriPoint, 7> kTri5{{{1.0 / 3, 1.0 / 3, 1.0 / 3, kW0},
                                         {kA1, kB1, kB1, kW1},
                                         {kB1, kA1, kB1, kW1},
                                         {kB1, kB1, kA1, kW1},
                                         {kA2, kB2, kB2, kW2},
                                         {kB2, kA2, kB2, kW2},
                                         {kB2, kB2, kA2, kW2}}};

struct Tri {
  Eigen::Vector3d a, b, c;
  double value = 0.0;
  double error = 0.0;
  bool operator<(const Tri& o) const { return error < o.error; }
};

}  // namespace

// ---- oracles ---------------------------------------------------------------

ConcaveFunctionOracle section_oracle(std::shared_ptr<const SectionVolumeFunction> f) {
  ConcaveFunctionOracle o;
  const ConvexBody& K = f->body();
  const Subspace N = f->normal_space();
  o.dim = f->k();
  o.evaluate = [f](const Vec& x) { return (*f)(x); };
  if (f->m() > 0) o.concavity_index = f->m();
  o.support_radius = body_extent(K, N);
  const MomentSummary ms = moments(K);
  o.barycenter_zero = ms.centroid.norm() <= 1e-9 * std::max(1.0, o.support_radius);
  o.label = "section(" + K.kind() + ", k=" + std::to_string(o.dim) + ")";
  o.ray_moment = [f](const Vec& theta, double p) { return f->ray_integral(theta, p); };
  o.moment = [f, N](const Vec& u, int p) {
    const Vec w = N.embed(u);
    if (f->body().is_polytope()) return moment_p(f->body(), w, p);
    return ellipsoid_linear_moment(f->body().ellipsoid(), w, p);
  };
  o.second_moments = [N, cov = ms.covariance]() -> Mat { return N.basis().transpose() * cov * N.basis(); };
  return o;
}

ConcaveFunctionOracle section_oracle(const ConvexBody& K, const Subspace& F) {
  return section_oracle(std::make_shared<const SectionVolumeFunction>(K, F));
}

ConcaveFunctionOracle ball_indicator_oracle(int k, double r, double m) {
  if (k < 1 || r <= 0 || m <= 0) throw DomainError("ball indicator needs k >= 1, r > 0, m > 0");
  ConcaveFunctionOracle o;
  o.dim = k;
  o.evaluate = [r](const Vec& x) { return x.norm() <= r ? 1.0 : 0.0; };
  o.concavity_index = m;
  o.support_radius = r;
  o.barycenter_zero = true;
  o.label = "ball_indicator(k=" + std::to_string(k) + ")";
  o.ray_moment = [r](const Vec&, double p) { return std::pow(r, p) / p; };
  const double kappa = unit_ball_volume(k);
  o.moment = [k, r, kappa](const Vec& u, int p) {
    if (p == 0) return kappa * std::pow(r, k);
    if (p == 1) return 0.0;
    if (p == 2) return kappa * std::pow(r, k + 2) * u.squaredNorm() / (k + 2);
    throw DomainError("ball indicator moments are implemented for p <= 2");
  };
  o.second_moments = [k, r, kappa]() -> Mat { return Mat::Identity(k, k) * kappa * std::pow(r, k + 2) / (k + 2); };
  return o;
}

ConcaveFunctionOracle exponential_oracle(int k) {
  if (k < 1) throw DomainError("exponential oracle needs k >= 1");
  ConcaveFunctionOracle o;
  o.dim = k;
  o.evaluate = [](const Vec& x) { return std::exp(-x.norm()); };
  o.support_radius = 60.0;
  o.barycenter_zero = true;
  o.label = "exp(-|x|)";
  o.ray_moment = [](const Vec&, double p) { return gamma_fn(p); };
  const double kappa = unit_ball_volume(k);
  // ∫ <x,u>^p e^{-|x|} = Gamma(k+p) ∫_S <theta,u>^p, and ∫_S theta_1^2 = kappa_k.
  o.moment = [k, kappa](const Vec& u, int p) {
    if (p == 0) return k * kappa * gamma_fn(k);
    if (p == 1) return 0.0;
    if (p == 2) return kappa * gamma_fn(k + 2) * u.squaredNorm();
    throw DomainError("exponential oracle moments are implemented for p <= 2");
  };
  o.second_moments = [k, kappa]() -> Mat { return Mat::Identity(k, k) * kappa * gamma_fn(k + 2); };
  return o;
}

double StarBodyOracle::gauge(const Vec& x) const {
  const double len = x.norm();
  if (len == 0.0) return 0.0;
  return len / radial(x / len);
}

StarBodyOracle star_of(const ConvexBody& K, std::string label) {
  return {K.dim(), [K](const Vec& theta) { return radial(K, theta); }, std::move(label)};
}

// ---- ray integrals and L_p(f) ------------------------------------------------

double ray_moment(const ConcaveFunctionOracle& f, const Vec& x, double p) {
  if (!(p > 0)) throw DomainError("ray moments need p > 0");
  const double len = x.norm();
  if (len == 0.0) throw DomainError("ray moment along the zero vector");
  const Vec theta = x / len;
  double unit;
  if (f.ray_moment) {
    unit = f.ray_moment(theta, p);
  } else {
    const double R = ray_extent(f, theta, f.support_radius);
    unit = integrate([&](double t) { return std::pow(t, p - 1.0) * f(t * theta); }, 0.0, R, 1e-11, 18).value;
  }
  return unit * std::pow(len, -p);
}

double I_p(const ConcaveFunctionOracle& f, const Vec& x, double p) {
  const double m = ray_moment(f, x, p);
  return m > 0.0 ? std::pow(m, 1.0 / p) : 0.0;
}

StarBodyOracle ball_body(const ConcaveFunctionOracle& f, double p) {
  if (!(p > 0)) throw DomainError("L_p(f) needs p > 0");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return {f.dim, [f, p](const Vec& theta) { return I_p(f, theta, p); }, "L_" + std::string(buf) + "(" + f.label + ")"};
}

std::vector<Vec> sphere_directions(int k, int count, std::uint64_t seed) {
  CounterRng rng(seed, 0x5048);
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count + 2 * k));
  for (int i = 0; i < count; ++i) dirs.push_back(rng.unit_vector(k));
  for (int i = 0; i < k; ++i) {
    dirs.push_back(Vec::Unit(k, i));
    dirs.push_back(-Vec::Unit(k, i));
  }
  return dirs;
}

ConvexBody polytope_approximation(const StarBodyOracle& L, int num_dirs, std::uint64_t seed) {
  const int k = L.dim;
  if (num_dirs <= 0) num_dirs = 1 << (k + 4);
  std::vector<Vec> pts;
  for (const auto& th : sphere_directions(k, num_dirs, seed)) pts.push_back(L(th) * th);
  if (k == 1) {
    double lo = 0.0, hi = 0.0;
    for (const auto& q : pts) {
      lo = std::min(lo, q(0));
      hi = std::max(hi, q(0));
    }
    return ConvexBody(VPolytope{1, {Vec::Constant(1, lo), Vec::Constant(1, hi)}});
  }
  return ConvexBody::from_hull(convex_hull(pts));
}

QuadResult sphere_integral(int k, const std::function<double(const Vec&)>& g, double rel_tol, int max_evals) {
  if (k == 1) return {g(Vec::Constant(1, 1.0)) + g(Vec::Constant(1, -1.0)), 0.0};
  if (k == 2) {
    auto h = [&](double phi) {
      Vec th(2);
      th << std::cos(phi), std::sin(phi);
      return g(th);
    };
    std::vector<double> breaks;
    for (int i = 0; i <= 8; ++i) breaks.push_back(i * std::numbers::pi / 4);
    return integrate_pieces(h, breaks, rel_tol, 20);
  }
  if (k != 3) throw DomainError("sphere_integral supports k <= 3");
  // Radial projection of a face of the octahedron |x|_1 = 1 onto S^2 has
  // area element h / |x|^3 dA with h = 1/sqrt(3) the face distance.
  int evals = 0;
  const double h = 1.0 / std::sqrt(3.0);
  auto rule = [&](Tri& t) {
    const double area = 0.5 * (t.b - t.a).cross(t.c - t.a).norm();
    auto at = [&](double a, double b, double c) {
      const Eigen::Vector3d x = a * t.a + b * t.b + c * t.c;
      const double r = x.norm();
      ++evals;
      return g(Vec(x / r)) * h / (r * r * r);
    };
    double hi = 0.0;
    for (const auto& q : kTri5) hi += q.w * at(q.a, q.b, q.c);
    const double lo = (at(0.5, 0.5, 0.0) + at(0.0, 0.5, 0.5) + at(0.5, 0.0, 0.5)) / 3.0;
    t.value = area * hi;
    t.error = area * std::abs(hi - lo);
  };
  std::priority_queue<Tri> queue;
  double total = 0.0, error = 0.0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) {
        Tri t{Eigen::Vector3d(sx, 0, 0), Eigen::Vector3d(0, sy, 0), Eigen::Vector3d(0, 0, sz)};
        rule(t);
        total += t.value;
        error += t.error;
        queue.push(t);
      }
  while (error > rel_tol * std::abs(total) && evals < max_evals) {
    const Tri t = queue.top();
    queue.pop();
    total -= t.value;
    error -= t.error;
    const Eigen::Vector3d ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c), ca = 0.5 * (t.c + t.a);
    for (Tri s : {Tri{t.a, ab, ca}, Tri{ab, t.b, bc}, Tri{ca, bc, t.c}, Tri{ab, bc, ca}}) {
      rule(s);
      total += s.value;
      error += s.error;
      queue.push(s);
    }
  }
  return {total, std::max(error, 0.0)};
}

MomentIdentity moment_identity_check(const ConcaveFunctionOracle& f, const Vec& u, int p, int approx_dirs,
                                     std::uint64_t seed, int max_evals) {
  if (p < 0 || p > 2) throw DomainError("moment identity is checked for p in {0,1,2}");
  const int k = f.dim;
  const int q = k + p;
  MomentIdentity out;
  // r_{L_q}(theta)^q is the ray moment of order q.
  const QuadResult s = sphere_integral(k, [&](const Vec& th) {
    return ray_moment(f, th, q) * std::pow(th.dot(u), p);
  }, 1e-8, max_evals);
  out.lhs = s.value / q;
  out.quadrature_error = s.error / q;
  if (f.moment) {
    out.rhs = f.moment(u, p) / q;
  } else {
    out.rhs = out.lhs;
  }
  if (approx_dirs >= 0) {
    const ConvexBody P = polytope_approximation(ball_body(f, q), approx_dirs, seed);
    out.lhs_polytope = moment_p(P, u, p);
  }
  return out;
}

// ---- constants ---------------------------------------------------------------

BerwaldConstants berwald_inclusion_constants(double p, double q, double m) {
  if (!(p > 0) || q < p || !(m > 0)) throw DomainError("Berwald constants need 0 < p <= q and m > 0");
  return {std::pow(beta_fn(p, m + 1), 1.0 / p) / std::pow(beta_fn(q, m + 1), 1.0 / q),
          std::pow(q, 1.0 / q) / std::pow(p, 1.0 / p)};
}

double fradelizi_factor(int k, double m) {
  if (k < 1 || !(m > 0)) throw DomainError("fradelizi_factor needs k >= 1, m > 0");
  return std::pow(1.0 + k / (m + 1.0), m);
}

double lp_distance_bound(int k, double m, double p) {
  if (k < 1 || !(m > 0) || !(p > 0) || p > k + 1) throw DomainError("need k >= 1, m > 0, 0 < p <= k+1");
  return std::pow(1.0 + k / (m + 1.0), m / p) * std::pow((k + 1) * beta_fn(k + 1, m + 1), 1.0 / (k + 1)) /
         std::pow(p * beta_fn(p, m + 1), 1.0 / p);
}

double lemma6_factor(int k, double m, double p) { return k * lp_distance_bound(k, m, p); }

double geometric_distance_lb(const StarBodyOracle& A, const StarBodyOracle& B, const std::vector<Vec>& directions) {
  if (A.dim != B.dim) throw DomainError("star bodies of different dimension");
  double ab = 0.0, ba = 0.0;
  for (const auto& th : directions) {
    const double ra = A(th), rb = B(th);
    if (!(ra > 0) || !(rb > 0)) throw DomainError("radial functions must be positive");
    ab = std::max(ab, ra / rb);
    ba = std::max(ba, rb / ra);
  }
  return ab * ba;
}

double geometric_distance_lb(const StarBodyOracle& A, const StarBodyOracle& B, int num_dirs, std::uint64_t seed) {
  return geometric_distance_lb(A, B, sphere_directions(A.dim, num_dirs, seed));
}

// ---- maximisation ------------------------------------------------------------

Maximum maximize(const ConcaveFunctionOracle& f, std::uint64_t seed) {
  const int k = f.dim;
  const double R = f.support_radius;
  const int per_axis = k == 1 ? 41 : (k == 2 ? 21 : (k == 3 ? 11 : 5));
  std::vector<std::pair<double, Vec>> grid;
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    Vec x(k);
    for (int i = 0; i < k; ++i) x(i) = -R + 2.0 * R * idx[static_cast<std::size_t>(i)] / (per_axis - 1);
    if (x.norm() <= R) grid.emplace_back(f(x), x);
    int i = 0;
    while (i < k && ++idx[static_cast<std::size_t>(i)] == per_axis) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
  }
  grid.emplace_back(f(Vec::Zero(k)), Vec::Zero(k));
  std::sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  CounterRng rng(seed, 0x4d41);
  Maximum best{grid.front().second, grid.front().first};
  const int starts = std::min<int>(3, static_cast<int>(grid.size()));
  for (int s = 0; s < starts; ++s) {
    Vec x = grid[static_cast<std::size_t>(s)].second;
    double fx = grid[static_cast<std::size_t>(s)].first;
    double step = 2.0 * R / (per_axis - 1);
    while (step > 1e-10 * R) {
      std::vector<Vec> dirs;
      const Mat Q = random_orthogonal(k, rng);
      for (int i = 0; i < k; ++i) {
        dirs.push_back(Q.col(i));
        dirs.push_back(-Q.col(i));
      }
      bool moved = false;
      for (const auto& d : dirs) {
        const Vec y = x + step * d;
        const double fy = f(y);
        if (fy > fx) {
          x = y;
          fx = fy;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

Mat second_moment_matrix(const ConcaveFunctionOracle& f) {
  if (f.second_moments) return f.second_moments();
  const int k = f.dim;
  Mat S(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      S(i, j) = sphere_integral(k, [&](const Vec& th) { return th(i) * th(j) * ray_moment(f, th, k + 2); }).value;
      S(j, i) = S(i, j);
    }
  return S;
}

// ---- polytope checks ---------------------------------------------------------

double negative_radial_ratio(const ConvexBody& L, const std::vector<Vec>& directions) {
  std::vector<Vec> dirs = directions;
  if (L.is_polytope()) {
    for (const auto& v : L.vertices()) dirs.push_back(v.normalized());
    for (const auto& h : L.facets()) dirs.push_back(h.normal);
  }
  double worst = 0.0;
  for (const auto& d : dirs) worst = std::max(worst, radial(L, -d) / radial(L, d));
  return worst;
}

KlsSandwich kls_sandwich(const ConvexBody& L, const Vec& u) {
  const int k = L.dim();
  const MomentSummary m = moments(L);
  const double h = support(L, u);
  return {h * h / (k * (k + 2.0)), u.dot(m.covariance * u) / m.volume, k / (k + 2.0) * h * h};
}

IsotropySandwich isotropy_sandwich(const ConvexBody& L) {
  const int k = L.dim();
  const MomentSummary m = moments(L);
  Eigen::SelfAdjointEigenSolver<Mat> es(m.covariance);
  const double gamma = es.eigenvalues()(0);
  const double top = es.eigenvalues()(k - 1);
  if (!(gamma > 0)) throw DegenerateError("second moments are not positive definite");
  IsotropySandwich out;
  out.r = std::sqrt(top / gamma);
  out.beta = std::sqrt(gamma / m.volume) * std::sqrt((k + 2.0) / k);
  if (L.is_polytope()) {
    out.min_radius = std::numeric_limits<double>::infinity();
    for (const auto& h : L.facets()) out.min_radius = std::min(out.min_radius, h.offset);
    for (const auto& v : L.vertices()) out.max_radius = std::max(out.max_radius, v.norm());
  } else {
    const auto e = L.ellipsoid();
    const Vec sv = Eigen::JacobiSVD<Mat>(e.matrix).singularValues();
    out.min_radius = sv(k - 1) - e.center.norm();
    out.max_radius = sv(0) + e.center.norm();
  }
  return out;
}

}  // namespace cvxsec
