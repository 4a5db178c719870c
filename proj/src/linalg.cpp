#include "cvxsec/linalg.hpp"

#include <cmath>

namespace cvxsec {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDim)
    throw DomainError("dimension " + std::to_string(n) + " outside [1, 8]");
}

Mat orthonormal_span(const Mat& vectors, double tol) {
  const auto rows = vectors.rows();
  if (vectors.cols() == 0) return Mat(rows, 0);
  Eigen::JacobiSVD<Mat> svd(vectors, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double scale = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * std::max(1.0, scale)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat orthogonal_complement(const Mat& basis, int ambient) {
  if (basis.cols() == 0) return Mat::Identity(ambient, ambient);
  Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeFullU);
  const int r = static_cast<int>(basis.cols());
  return svd.matrixU().rightCols(ambient - r);
}

Mat columns(const std::vector<Vec>& vectors, int rows) {
  Mat m(rows, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return m;
}

Subspace::Subspace(int ambient_dim, Mat basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_ && basis_.cols() > 0)
    throw DomainError("subspace basis has wrong ambient dimension");
  if (basis_.cols() == 0) basis_.resize(ambient_, 0);
  const Mat gram = basis_.transpose() * basis_;
  const Mat eye = Mat::Identity(gram.rows(), gram.cols());
  if (gram.size() > 0 && (gram - eye).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("subspace basis is not orthonormal");
}

Subspace Subspace::zero(int n) { return Subspace(n, Mat(n, 0)); }
Subspace Subspace::full(int n) { return Subspace(n, Mat::Identity(n, n)); }

Subspace Subspace::span(const std::vector<Vec>& vectors, int n) {
  return Subspace(n, orthonormal_span(columns(vectors, n)));
}

Subspace Subspace::orthogonal_to(const std::vector<Vec>& normals, int n) {
  return Subspace::span(normals, n).complement();
}

Subspace Subspace::complement() const { return Subspace(ambient_, orthogonal_complement(basis_, ambient_)); }

bool Subspace::contains(const Vec& x, double tol) const {
  return (x - project(x)).norm() <= tol * std::max(1.0, x.norm());
}

Subspace Subspace::direct_sum(const Subspace& other) const {
  Mat b(ambient_, dim() + other.dim());
  b.leftCols(dim()) = basis_;
  b.rightCols(other.dim()) = other.basis_;
  // Gram-Schmidt keeps the leading block (this basis) unchanged.
  for (Eigen::Index j = dim(); j < b.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) b.col(j) -= b.col(i).dot(b.col(j)) * b.col(i);
    const double len = b.col(j).norm();
    if (len < 1e-8) throw DomainError("direct sum of non-complementary subspaces");
    b.col(j) /= len;
  }
  return Subspace(ambient_, b);
}

}  // namespace cvxsec
