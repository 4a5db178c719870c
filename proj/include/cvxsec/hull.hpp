#pragma once

// Convex hulls of full-dimensional point sets in R^d, d <= 8.
//
// The hull is built incrementally (beneath-beyond, furthest point first) with
// simplicial boundary facets and facet adjacency. The simplicial boundary is a
// triangulation of every true facet; coplanar simplicial facets are merged to
// obtain the facet (H-) description.

#include <vector>

#include "cvxsec/linalg.hpp"

namespace cvxsec {

struct HullResult {
  int dim = 0;
  /// Extreme points, sorted lexicographically.
  std::vector<Vec> vertices;
  /// Irredundant facets with unit normals, <n, x> <= b.
  std::vector<Halfspace> facets;
  /// Points referenced by `boundary` (extreme points plus any boundary points
  /// kept by the triangulation).
  std::vector<Vec> tri_points;
  /// Boundary (d-1)-simplices as indices into `tri_points`.
  std::vector<std::vector<int>> boundary;
  /// Strictly interior point (vertex average).
  Vec interior;
};

/// Hull of a full-dimensional point set. Throws DegenerateError when the
/// points do not span R^d (affine rank < d) at tolerance `tol` (scaled by
/// the point cloud's extent).
HullResult convex_hull(const std::vector<Vec>& points, double tol = kGeomTol);

/// Affine hull of a point set: origin + span(basis).
struct AffineHull {
  Vec origin;
  Mat basis;  // ambient x rank, orthonormal columns
  int rank() const { return static_cast<int>(basis.cols()); }
};

AffineHull affine_hull(const std::vector<Vec>& points, double tol = kGeomTol);

/// Remove points closer than `tol` to an earlier point.
std::vector<Vec> dedup_points(const std::vector<Vec>& points, double tol = kGeomTol);

}  // namespace cvxsec
