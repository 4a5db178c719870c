#include "cvxsec/lp.hpp"

#include <cmath>
#include <limits>

namespace cvxsec {

namespace {

class Tableau {
 public:
  Tableau(const Mat& A, const Vec& b, double tol)
      : rows_(static_cast<int>(A.rows())), cols_(static_cast<int>(A.cols())), tol_(tol),
        t_(Mat::Zero(rows_ + 1, cols_ + rows_ + 1)), basis_(rows_) {
    for (int i = 0; i < rows_; ++i) {
      const double sign = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(cols_) = sign * A.row(i);
      t_(i, cols_ + i) = 1.0;
      t_(i, rhs()) = sign * b(i);
      basis_[i] = cols_ + i;
    }
  }

  int rhs() const { return cols_ + rows_; }

  // Phase 1 objective: sum of artificials, expressed in non-basic terms.
  void set_phase1_objective() {
    t_.row(rows_).setZero();
    for (int i = 0; i < rows_; ++i) {
      t_.row(rows_).head(cols_) -= t_.row(i).head(cols_);
      t_(rows_, rhs()) -= t_(i, rhs());
    }
  }

  void set_objective(const Vec& c) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(cols_) = c.transpose();
    for (int i = 0; i < rows_; ++i) {
      const int j = basis_[i];
      if (j < cols_ && c(j) != 0.0) t_.row(rows_) -= c(j) * t_.row(i);
    }
  }

  // Returns false when unbounded. Dantzig pricing; a run of degenerate
  // pivots switches to Bland's rule until the objective moves again.
  bool optimize(bool allow_artificial) {
    const int limit = allow_artificial ? cols_ + rows_ : cols_;
    int degenerate = 0;
    for (int iter = 0; iter < 50000; ++iter) {
      const bool bland = degenerate > 20;
      int enter = -1;
      double most = -tol_;
      for (int j = 0; j < limit; ++j) {
        if (t_(rows_, j) < most) {
          enter = j;
          if (bland) break;
          most = t_(rows_, j);
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        if (basis_[i] < 0) continue;
        const double a = t_(i, enter);
        if (a > tol_) {
          const double ratio = std::max(t_(i, rhs()), 0.0) / a;
          const double tie = leave < 0 ? 0.0 : 1e-12 * std::max(1.0, best);
          if (leave < 0 || ratio < best - tie || (ratio <= best + tie && basis_[i] < basis_[leave])) {
            best = std::min(best, ratio);
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      degenerate = best <= 1e-13 ? degenerate + 1 : 0;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= rows_; ++i)
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    basis_[r] = c;
  }

  // Pivot zero-level artificials out of the basis; rows that cannot be
  // cleared are linearly dependent and get marked -1.
  void expel_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      int col = -1;
      for (int j = 0; j < cols_; ++j)
        if (std::abs(t_(i, j)) > 1e-9) {
          col = j;
          break;
        }
      if (col >= 0)
        pivot(i, col);
      else
        basis_[i] = -1;
    }
  }

  double objective_value() const { return -t_(rows_, rhs()); }

  Vec solution() const {
    Vec y = Vec::Zero(cols_);
    for (int i = 0; i < rows_; ++i)
      if (basis_[i] >= 0 && basis_[i] < cols_) y(basis_[i]) = t_(i, rhs());
    return y;
  }

  const std::vector<int>& basis() const { return basis_; }

 private:
  int rows_;
  int cols_;
  double tol_;
  Mat t_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution solve_standard_form(const Mat& A, const Vec& b, const Vec& c, double tol) {
  Tableau tab(A, b, tol);
  tab.set_phase1_objective();
  tab.optimize(true);
  LpSolution sol;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (tab.objective_value() > 1e-9 * scale) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  tab.expel_artificials();
  tab.set_objective(c);
  if (!tab.optimize(false)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.y = tab.solution();
  sol.value = c.dot(sol.y);
  sol.basis = tab.basis();
  return sol;
}

ChebyshevBall chebyshev_center(const std::vector<Halfspace>& halfspaces, int dim, double radius_cap) {
  // Primal: max r s.t. <a_i,x>/|a_i| + r <= b_i/|a_i|, r <= cap. Solved through its
  // dual, which has only dim + 1 equality rows.
  std::vector<Vec> normals;
  std::vector<double> offsets;
  for (const auto& h : halfspaces) {
    const double len = h.normal.norm();
    if (len < 1e-14) {
      if (h.offset < -1e-12) return {Vec::Zero(dim), -std::numeric_limits<double>::infinity()};
      continue;
    }
    normals.push_back(h.normal / len);
    offsets.push_back(h.offset / len);
  }
  const int m = static_cast<int>(normals.size());
  Mat A = Mat::Zero(dim + 1, m + 1);
  Vec cost(m + 1);
  for (int i = 0; i < m; ++i) {
    A.col(i).head(dim) = normals[i];
    A(dim, i) = 1.0;
    cost(i) = offsets[i];
  }
  A(dim, m) = 1.0;
  cost(m) = radius_cap;
  Vec rhs = Vec::Zero(dim + 1);
  rhs(dim) = 1.0;

  const LpSolution sol = solve_standard_form(A, rhs, cost);
  if (sol.status != LpStatus::Optimal) throw std::runtime_error("chebyshev LP failed");
  for (int j : sol.basis)
    if (j < 0) throw DegenerateError("halfspace normals do not span the space (unbounded region)");

  Mat B(dim + 1, dim + 1);
  Vec bb(dim + 1);
  for (int i = 0; i <= dim; ++i) {
    const int j = sol.basis[i];
    B.row(i) = A.col(j).transpose();
    bb(i) = cost(j);
  }
  const Vec xr = B.fullPivLu().solve(bb);
  return {xr.head(dim), xr(dim)};
}

bool in_convex_hull(const std::vector<Vec>& points, const Vec& x, double tol) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(points.size());
  if (m == 0) return false;
  Mat A(n + 1, m);
  for (int j = 0; j < m; ++j) {
    A.col(j).head(n) = points[j];
    A(n, j) = 1.0;
  }
  Vec b(n + 1);
  b.head(n) = x;
  b(n) = 1.0;
  // Feasibility with slack: minimise nothing, accept tolerance on the residual.
  const LpSolution sol = solve_standard_form(A, b, Vec::Zero(m), tol * 1e-2);
  if (sol.status != LpStatus::Optimal) return false;
  return (A * sol.y - b).norm() <= tol * std::max(1.0, b.norm());
}

}  // namespace cvxsec
