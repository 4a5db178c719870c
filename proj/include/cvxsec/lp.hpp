#pragma once

// Small dense linear programming used for interior points and membership
// certificates. Problems here have at most kMaxDim + 1 equality rows.

#include <vector>

#include "cvxsec/linalg.hpp"

namespace cvxsec {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec y;
  double value = 0.0;
  std::vector<int> basis;  // column indices; -1 marks a redundant row
};

/// min c.y subject to A y = b, y >= 0, by the two-phase tableau simplex
/// method with Bland's rule.
LpSolution solve_standard_form(const Mat& A, const Vec& b, const Vec& c, double tol = 1e-11);

struct ChebyshevBall {
  Vec center;
  /// Radius of the largest inscribed ball; negative when the system is infeasible.
  double radius = 0.0;
};

/// Largest ball inside the intersection of halfspaces in R^dim. The radius is
/// capped at `radius_cap`; normals must span R^dim.
ChebyshevBall chebyshev_center(const std::vector<Halfspace>& halfspaces, int dim, double radius_cap = 1e6);

/// True when x is a convex combination of `points` (LP feasibility).
bool in_convex_hull(const std::vector<Vec>& points, const Vec& x, double tol = 1e-9);

}  // namespace cvxsec
