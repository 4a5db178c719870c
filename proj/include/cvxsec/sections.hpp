#pragma once

// Sections of convex bodies by affine flats and by cones F + C, and the
// section-volume function f(x) = |K ∩ (F + x)| on the orthogonal complement of F.

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "cvxsec/bodies.hpp"

namespace cvxsec {

/// K ∩ flat in the flat's own coordinates. A flat that misses K, or only
/// touches its boundary, gives an empty section of volume zero.
struct SectionResult {
  enum class Kind { Empty, Point, Body };
  Kind kind = Kind::Empty;
  std::optional<ConvexBody> body;

  bool empty() const { return kind == Kind::Empty; }
  /// Intrinsic volume; a 0-dimensional flat meeting K counts 1.
  double volume() const;
};

SectionResult section(const ConvexBody& K, const Flat& flat);

/// K ∩ {x : <normal, x> <= offset}; empty when the halfspace misses K's interior.
SectionResult clip(const ConvexBody& K, const Halfspace& h);

/// Simplicial cone {sum lambda_i g_i : lambda >= 0} with linearly independent
/// generators, lying in `ambient` (typically F^⊥). Pairwise orthogonal
/// generators give the orthant cones {x in span : <x, u_i> >= 0}.
class PolyhedralCone {
 public:
  PolyhedralCone(Subspace ambient, std::vector<Vec> generators);
  static PolyhedralCone ray(const Subspace& ambient, const Vec& direction);

  int p() const { return static_cast<int>(generators_.size()); }
  const Subspace& ambient() const { return ambient_; }
  const std::vector<Vec>& generators() const { return generators_; }
  /// G = span of the generators; its basis fixes the coordinates below.
  const Subspace& span() const { return span_; }
  /// Generators as columns, in the coordinates of span().
  const Mat& generator_coords() const { return coords_; }
  /// The cone as {y : <a_i, y> <= 0} in the coordinates of span().
  std::vector<Halfspace> halfspaces_in_span() const;
  bool contains(const Vec& x, double tol = 1e-12) const;
  PolyhedralCone negated() const;
  bool orthogonal_generators(double tol = 1e-12) const;
  /// Fraction of the unit sphere of span() covered by the cone. Closed forms
  /// for p <= 3 and for pairwise orthogonal generators.
  double solid_angle_fraction() const;

 private:
  Subspace ambient_;
  std::vector<Vec> generators_;
  Subspace span_;
  Mat coords_;
};

/// |K ∩ (F + C)| by intersecting K with F ⊕ span(C) and the cone's facets.
double cone_section_volume_polyhedral(const ConvexBody& K, const Subspace& F, const PolyhedralCone& C);

/// |K ∩ (F + G)| with G = span(C).
double span_section_volume(const ConvexBody& K, const Subspace& F, const Subspace& G);

struct RadialQuadSpec {
  /// Gauss-Legendre order per simplex direction for p >= 3; doubled until the
  /// relative change drops below rel_tol.
  int order = 4;
  int max_order = 32;
  double rel_tol = 1e-6;
};

struct RadialVolume {
  double value = 0.0;
  double error = 0.0;
  int rays = 0;
};

/// |K ∩ (F + C)| as the integral over directions theta in C of
/// ∫_0^∞ t^{p-1} f(t theta) dt, each ray integrated by Gauss-Legendre on the
/// pieces where f is polynomial.
RadialVolume cone_section_volume_radial(const ConvexBody& K, const Subspace& F, const PolyhedralCone& C,
                                        const RadialQuadSpec& spec = {});

/// ∫_0^∞ t^{p-1} |K ∩ (F + t d)| dt for an ambient unit direction d ⟂ F,
/// by quadrature of section volumes along the ray.
double ray_integral_quadrature(const ConvexBody& K, const Subspace& F, const Vec& d, double p);

/// The same integral as a polynomial moment of the polytope
/// K ∩ (F ⊕ R_+ d); integer p >= 1 only.
double ray_integral_exact(const ConvexBody& K, const Subspace& F, const Vec& d, int p);

/// f(x) = |K ∩ (F + x)|_{n-k} for x in F^⊥, taken in the coordinates of an
/// orthonormal basis of F^⊥ (so f is a function on R^k). For F = {0} (k = n)
/// f is the indicator of K. Evaluations are memoised on a 1e-10 grid.
class SectionVolumeFunction {
 public:
  SectionVolumeFunction(ConvexBody K, Subspace F);

  const ConvexBody& body() const { return K_; }
  const Subspace& flat_direction() const { return F_; }
  /// Orthonormal basis of F^⊥ giving the coordinates of f's argument.
  const Subspace& normal_space() const { return N_; }
  int k() const { return N_.dim(); }
  /// Concavity index m = n - k: f^{1/m} is concave on its support.
  int m() const { return F_.dim(); }

  double operator()(const Vec& x) const;
  /// ∫_0^∞ t^{p-1} f(t theta) dt, exact for integer p and polytopes.
  double ray_integral(const Vec& theta, double p) const;
  /// Largest t with f(t theta) > 0, theta a unit vector of R^k.
  double support_radius(const Vec& theta) const;
  std::size_t cache_size() const;

 private:
  ConvexBody K_;
  Subspace F_;
  Subspace N_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<long long>, double> memo_;
};

}  // namespace cvxsec
