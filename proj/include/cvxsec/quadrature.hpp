#pragma once

// One-dimensional adaptive quadrature, Gauss-Legendre rules, and a
// collapsed (Duffy) tensor rule on simplices.

#include <functional>
#include <vector>

#include "cvxsec/linalg.hpp"

namespace cvxsec {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15 point) on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                     int max_depth = 20);

/// Sum of adaptive integrals over consecutive breakpoints.
QuadResult integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breaks,
                            double rel_tol = 1e-10, int max_depth = 20);

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
Rule1d gauss_legendre(int n, double a = 0.0, double b = 1.0);

/// Weighted points integrating over the simplex conv(vertices) (any dimension
/// d = vertices.size() - 1, embedded in R^n), exact for polynomials of degree
/// <= 2*order - 1 - (d - 1).
struct CubaturePoint {
  Vec x;
  double w = 0.0;
};
std::vector<CubaturePoint> simplex_rule(const std::vector<Vec>& vertices, int order);

/// Duffy rule on the standard simplex {mu >= 0, sum mu = 1} in barycentric
/// coordinates, weights summing to 1/(d!).
std::vector<CubaturePoint> barycentric_rule(int d, int order);

}  // namespace cvxsec
