#pragma once

// Convex bodies in R^n (n <= 8): polytopes in vertex or halfspace form,
// Euclidean balls, and invertible affine images, together with the basic
// functionals (support, radial, gauge), polarity, projection and
// representation conversion.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cvxsec/hull.hpp"
#include "cvxsec/linalg.hpp"

namespace cvxsec {

struct VPolytope {
  int dim = 0;
  std::vector<Vec> vertices;
};

struct HPolytope {
  int dim = 0;
  std::vector<Halfspace> halfspaces;
};

struct Ball {
  Vec center;
  double radius = 1.0;
  int dim() const { return static_cast<int>(center.size()); }
};

class ConvexBody;

/// x -> matrix * x + shift applied to `base`.
struct AffineImage {
  std::shared_ptr<const ConvexBody> base;
  Mat matrix;
  Vec shift;
};

/// A point set that turned out lower-dimensional; carries its affine hull so
/// callers can redo the work in intrinsic coordinates.
class LowerDimensionalError : public DegenerateError {
 public:
  LowerDimensionalError(const std::string& what, AffineHull hull) : DegenerateError(what), affine(std::move(hull)) {}
  AffineHull affine;
};

enum class Representation { Vertices, Halfspaces };

/// Immutable handle on a full-dimensional convex body. Polytopes carry their
/// canonical combinatorial data (vertices, facets, boundary triangulation),
/// computed once on construction.
class ConvexBody {
 public:
  using Rep = std::variant<VPolytope, HPolytope, Ball, AffineImage>;

  ConvexBody(VPolytope v);
  ConvexBody(HPolytope h);
  ConvexBody(Ball b);
  ConvexBody(AffineImage a);
  /// V-polytope wrapping an already computed full-dimensional hull.
  static ConvexBody from_hull(HullResult h);

  int dim() const { return dim_; }
  const Rep& rep() const { return rep_; }
  bool is_polytope() const { return static_cast<bool>(hull_); }
  /// True for balls and affine images of balls.
  bool is_ellipsoid() const { return !is_polytope(); }
  std::string kind() const;

  /// Canonical polytope data; throws DomainError for non-polytopes.
  const HullResult& polytope() const;
  const std::vector<Vec>& vertices() const { return polytope().vertices; }
  const std::vector<Halfspace>& facets() const { return polytope().facets; }

  /// Ellipsoid form {matrix * y + center : |y| <= 1} for balls and their affine images.
  struct Ellipsoid {
    Mat matrix;
    Vec center;
  };
  Ellipsoid ellipsoid() const;

 private:
  ConvexBody() = default;

  Rep rep_;
  int dim_ = 0;
  std::shared_ptr<const HullResult> hull_;
};

// ---- constructors --------------------------------------------------------

VPolytope make_regular_simplex(int n);
HPolytope make_cube(int n);
VPolytope make_cross_polytope(int n);
ConvexBody make_ball(int n, double r);

/// Hull of `num_points` uniform points of the unit ball (seeded), translated so
/// its centroid is the origin.
VPolytope random_centered_polytope(int n, int num_points, std::uint64_t seed);

/// Hull data for the intersection of halfspaces. Throws DegenerateError when
/// the region is empty, lower-dimensional, or unbounded.
HullResult halfspace_intersection(const std::vector<Halfspace>& halfspaces, int dim, double tol = kGeomTol);

// ---- functionals ---------------------------------------------------------

double support(const ConvexBody& K, const Vec& u);
double radial(const ConvexBody& K, const Vec& u);
double minkowski_norm(const ConvexBody& K, const Vec& x);
bool contains(const ConvexBody& K, const Vec& x, double tol = kGeomTol);
bool origin_interior(const ConvexBody& K, double tol = kGeomTol);

struct Box {
  Vec lo;
  Vec hi;
};
Box bounding_box(const ConvexBody& K);

// ---- transformations -----------------------------------------------------

ConvexBody polar(const ConvexBody& K);
/// Polar body with respect to the centre z: z + (K - z)^*.
ConvexBody polar_about(const ConvexBody& K, const Vec& z);
ConvexBody translate(const ConvexBody& K, const Vec& v);
ConvexBody affine_map(const ConvexBody& K, const Mat& A, const Vec& b);
/// Orthogonal projection onto S, in the coordinates of S's basis.
ConvexBody project(const ConvexBody& K, const Subspace& S);
ConvexBody convert(const ConvexBody& K, Representation target);

}  // namespace cvxsec
