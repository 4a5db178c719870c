#include "cvxsec/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>


namespace cvxsec {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, int max_depth) {
  if (b <= a) return {};
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, static_cast<unsigned>(max_depth),
                                                                                   rel_tol, &err);
  return {v, err * std::abs(v)};
}

QuadResult integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks, double rel_tol,
                            int max_depth) {
  QuadResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const QuadResult r = integrate(f, breaks[i], breaks[i + 1], rel_tol, max_depth);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

Rule1d gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre needs at least one node");
  // Boost returns the non-negative zeros of P_n in increasing order.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
    if (*it != 0.0) x.push_back(-*it);
  for (double z : zeros) x.push_back(z);
  Rule1d r;
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (double t : x) {
    const double dp = boost::math::legendre_p_prime(n, t);
    r.nodes.push_back(mid + half * t);
    r.weights.push_back(half * 2.0 / ((1.0 - t * t) * dp * dp));
  }
  return r;
}

std::vector<CubaturePoint> barycentric_rule(int d, int order) {
  if (d < 0) throw DomainError("barycentric_rule: negative dimension");
  if (d == 0) return {{Vec::Ones(1), 1.0}};
  const Rule1d g = gauss_legendre(order);
  std::vector<CubaturePoint> out;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec lambda(d + 1);
    double rest = 1.0, w = 1.0;
    for (int i = 0; i < d; ++i) {
      const double u = g.nodes[idx[i]];
      lambda(i + 1) = rest * u;
      w *= g.weights[idx[i]] * std::pow(1.0 - u, d - 1 - i);
      rest *= 1.0 - u;
    }
    lambda(0) = rest;
    out.push_back({lambda, w});
    int k = 0;
    while (k < d && ++idx[k] == order) idx[k++] = 0;
    if (k == d) break;
  }
  return out;
}

std::vector<CubaturePoint> simplex_rule(const std::vector<Vec>& vertices, int order) {
  const int d = static_cast<int>(vertices.size()) - 1;
  double scale = 0.0;
  if (d == 0) {
    scale = 1.0;
  } else {
    Mat m(vertices[0].size(), d);
    for (int i = 0; i < d; ++i) m.col(i) = vertices[i + 1] - vertices[0];
    // d-dimensional content of a possibly embedded simplex.
    scale = std::sqrt(std::max(0.0, (m.transpose() * m).determinant()));
  }
  std::vector<CubaturePoint> out;
  for (const auto& bp : barycentric_rule(d, order)) {
    Vec x = Vec::Zero(vertices[0].size());
    for (int i = 0; i <= d; ++i) x += bp.x(i) * vertices[i];
    out.push_back({x, bp.w * scale});
  }
  return out;
}

}  // namespace cvxsec
