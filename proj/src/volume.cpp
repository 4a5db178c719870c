#include "cvxsec/volume.hpp"

#include <cmath>
#include <numbers>

#include "cvxsec/rng.hpp"

namespace cvxsec {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Complete homogeneous symmetric polynomial h_p(a_0, ..., a_m).
double complete_homogeneous(const std::vector<double>& a, int p) {
  std::vector<double> h(p + 1, 0.0);
  h[0] = 1.0;
  for (double x : a) {
    // h_new[q] = sum_j x^j h_old[q-j]  ==  h_old[q] + x * h_new[q-1]
    for (int q = 1; q <= p; ++q) h[q] += x * h[q - 1];
  }
  return h[p];
}

MomentSummary ellipsoid_moments(const ConvexBody::Ellipsoid& e) {
  const int n = static_cast<int>(e.center.size());
  const double det = std::abs(e.matrix.determinant());
  MomentSummary m;
  m.volume = unit_ball_volume(n) * det;
  m.centroid = e.center;
  // Unit ball: integral of y y^T is vol/(n+2) I.
  m.covariance = m.volume * (e.matrix * e.matrix.transpose() / (n + 2) + e.center * e.center.transpose());
  return m;
}

}  // namespace

double unit_ball_volume(int n) { return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

double simplex_volume(const Simplex& s) {
  const int d = static_cast<int>(s.size()) - 1;
  Mat m(d, d);
  for (int i = 0; i < d; ++i) m.col(i) = s[i + 1] - s[0];
  return std::abs(m.determinant()) / factorial(d);
}

std::vector<Simplex> triangulate(const HullResult& h) {
  std::vector<Simplex> out;
  out.reserve(h.boundary.size());
  for (const auto& b : h.boundary) {
    Simplex s{h.interior};
    for (int idx : b) s.push_back(h.tri_points[idx]);
    out.push_back(std::move(s));
  }
  return out;
}

MomentSummary polytope_moments(const HullResult& h) {
  const int d = h.dim;
  MomentSummary m;
  m.centroid = Vec::Zero(d);
  m.covariance = Mat::Zero(d, d);
  for (const auto& s : triangulate(h)) {
    const double vol = simplex_volume(s);
    Vec sum = Vec::Zero(d);
    Mat outer = Mat::Zero(d, d);
    for (const auto& v : s) {
      sum += v;
      outer += v * v.transpose();
    }
    m.volume += vol;
    m.centroid += vol * sum / (d + 1);
    m.covariance += vol / ((d + 1.0) * (d + 2.0)) * (outer + sum * sum.transpose());
  }
  if (m.volume > 0) m.centroid /= m.volume;
  return m;
}

MomentSummary moments(const ConvexBody& K) {
  if (K.is_polytope()) return polytope_moments(K.polytope());
  return ellipsoid_moments(K.ellipsoid());
}

double simplex_linear_moment(const Simplex& s, const Vec& u, int p) {
  const int d = static_cast<int>(s.size()) - 1;
  std::vector<double> a;
  for (const auto& v : s) a.push_back(v.dot(u));
  return simplex_volume(s) * factorial(p) * factorial(d) / factorial(p + d) * complete_homogeneous(a, p);
}

double moment_p(const ConvexBody& K, const Vec& u, int p) {
  if (p < 0 || p > 4) throw DomainError("moment_p supports p in {0,...,4}");
  if (!K.is_polytope()) throw DomainError("moment_p requires a polytope");
  double total = 0.0;
  for (const auto& s : triangulate(K.polytope())) total += simplex_linear_moment(s, u, p);
  return total;
}

MonteCarloEstimate monte_carlo_volume(const ConvexBody& K, std::int64_t N, std::uint64_t seed) {
  if (N < 1000) throw DomainError("monte_carlo_volume needs N >= 1000");
  const Box box = bounding_box(K);
  const int n = K.dim();
  const Vec width = box.hi - box.lo;
  const double box_volume = width.prod();
  CounterRng rng(seed);
  std::int64_t hits = 0;
  Vec x(n);
  for (std::int64_t i = 0; i < N; ++i) {
    for (int j = 0; j < n; ++j) x(j) = box.lo(j) + width(j) * rng.uniform();
    if (contains(K, x, 0.0)) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(N);
  return {box_volume * frac, box_volume * std::sqrt(frac * (1.0 - frac) / static_cast<double>(N))};
}

IsotropicResult isotropic_position(const ConvexBody& K) {
  const int n = K.dim();
  const MomentSummary m = moments(K);
  const Mat centered = m.covariance - m.volume * m.centroid * m.centroid.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(centered);
  const Vec ev = es.eigenvalues();
  if (ev.minCoeff() <= 1e-14 * std::max(1.0, ev.maxCoeff())) throw DegenerateError("covariance is not positive definite");
  const double log_det = ev.array().log().sum();
  // T = det^(1/2n) * Sigma^(-1/2) has |det T| = 1.
  const double scale = std::exp(log_det / (2.0 * n));
  const Mat T = scale * es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  IsotropicTransform tr{T, -T * m.centroid, std::exp(log_det / n)};
  return {affine_map(K, tr.matrix, tr.shift), tr};
}

}  // namespace cvxsec
