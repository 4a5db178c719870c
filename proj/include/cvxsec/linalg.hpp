#pragma once

// Dense linear-algebra vocabulary shared by every module, plus linear
// subspaces and affine flats.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace cvxsec {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr int kMaxDim = 8;
inline constexpr double kGeomTol = 1e-9;

/// Input outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A body or configuration that is lower-dimensional where full dimension is required.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_dimension(int n);

/// Orthonormal basis (columns) of the span of `vectors`, rank decided with relative tolerance.
Mat orthonormal_span(const Mat& vectors, double tol = 1e-10);

/// Orthonormal basis of the orthogonal complement of the column span of `basis`.
Mat orthogonal_complement(const Mat& basis, int ambient);

Mat columns(const std::vector<Vec>& vectors, int rows);

/// A linear subspace of R^n given by an orthonormal basis.
class Subspace {
 public:
  Subspace() = default;

  /// `basis` must have orthonormal columns (checked within 1e-12).
  Subspace(int ambient_dim, Mat basis);

  static Subspace zero(int n);
  static Subspace full(int n);
  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(const std::vector<Vec>& vectors, int n);
  static Subspace orthogonal_to(const std::vector<Vec>& normals, int n);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  Subspace complement() const;
  /// Coordinates of x in this basis.
  Vec coords(const Vec& x) const { return basis_.transpose() * x; }
  Vec embed(const Vec& y) const { return basis_ * y; }
  Vec project(const Vec& x) const { return basis_ * (basis_.transpose() * x); }
  bool contains(const Vec& x, double tol = 1e-12) const;
  /// Direct sum with a subspace orthogonal to this one.
  Subspace direct_sum(const Subspace& other) const;

 private:
  int ambient_ = 0;
  Mat basis_;
};

/// The closed halfspace <normal, x> <= offset.
struct Halfspace {
  Vec normal;
  double offset = 0.0;

  double slack(const Vec& x) const { return offset - normal.dot(x); }
};

/// Affine flat x0 + S.
struct Flat {
  Subspace direction;
  Vec offset;

  static Flat through_origin(const Subspace& s) { return {s, Vec::Zero(s.ambient_dim())}; }
  Vec embed(const Vec& y) const { return offset + direction.embed(y); }
  Vec coords(const Vec& x) const { return direction.coords(x - offset); }
};

}  // namespace cvxsec
