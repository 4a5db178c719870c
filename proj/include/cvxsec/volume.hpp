#pragma once

// Exact volume, centroid and polynomial moments of polytopes via
// triangulation; closed forms for ellipsoids; a Monte Carlo cross-check and
// the isotropic-position transform.

#include <cstdint>
#include <vector>

#include "cvxsec/bodies.hpp"

namespace cvxsec {

struct MomentSummary {
  double volume = 0.0;
  Vec centroid;
  /// Raw second moments about the origin: entries of the integral of x x^T over K.
  Mat covariance;
};

/// A d-simplex given by its d+1 vertices.
using Simplex = std::vector<Vec>;

double simplex_volume(const Simplex& s);

/// Triangulation of a polytope: an interior apex coned over the boundary triangulation.
std::vector<Simplex> triangulate(const HullResult& h);

MomentSummary polytope_moments(const HullResult& h);
MomentSummary moments(const ConvexBody& K);

/// Integral of <x,u>^p over a polytope K, p in {0,...,4}.
double moment_p(const ConvexBody& K, const Vec& u, int p);

/// Integral of <x,u>^p over one simplex: |S| p! d! / (p+d)! times the complete
/// homogeneous symmetric polynomial of degree p in the vertex values <v_i,u>.
double simplex_linear_moment(const Simplex& s, const Vec& u, int p);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Rejection sampling in the bounding box; deterministic in (N, seed).
MonteCarloEstimate monte_carlo_volume(const ConvexBody& K, std::int64_t N, std::uint64_t seed);

struct IsotropicTransform {
  Mat matrix;
  Vec shift;
  /// Common value of the integral of <x,u>^2 over the transformed body, |u| = 1.
  double isotropy_constant = 0.0;
};

struct IsotropicResult {
  ConvexBody body;
  IsotropicTransform transform;
};

/// Volume-preserving whitening: centroid moved to 0, second moments made a
/// multiple of the identity.
IsotropicResult isotropic_position(const ConvexBody& K);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace cvxsec
