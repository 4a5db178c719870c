#pragma once

// Radial functions of the intersection body I(K) and of the convex
// intersection body CI(K). r_CI(u) is the minimum over z of
//   Phi(z) = ∫_{K ∩ u^⊥} (1 - <z,y>)^{-n} dy,
// a convex function on the interior of P_u K^* = (K ∩ u^⊥)^*.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvxsec/bodies.hpp"
#include "cvxsec/sections.hpp"
#include "cvxsec/volume.hpp"

namespace cvxsec {

/// r_I(u) = |K ∩ u^⊥|_{n-1}.
double intersection_radial(const ConvexBody& K, const Vec& u);

/// The central section K ∩ u^⊥ in the coordinates of an orthonormal basis
/// of u^⊥, with the CI objective and its derivatives. Arguments z are
/// (n-1)-vectors in those coordinates.
class CISection {
 public:
  CISection(const ConvexBody& K, const Vec& u);

  int n() const { return n_; }
  const Vec& direction() const { return u_; }
  const Subspace& hyperplane() const { return plane_; }
  /// The section as an (n-1)-dimensional body.
  const ConvexBody& body() const { return *section_.body; }
  double volume() const { return volume_; }
  /// Largest |y| over the section.
  double radius() const { return radius_; }

  /// max over the section of <z, y>; z is admissible when this is < 1.
  double max_pairing(const Vec& z) const;
  bool admissible(const Vec& z, double bound = 1.0) const { return max_pairing(z) < bound; }

  /// Closed form: a simplex S with vertices v_i contributes |S| / prod (1 - <z, v_i>).
  double objective(const Vec& z) const;
  Vec gradient(const Vec& z) const;
  Mat hessian(const Vec& z) const;
  /// Collapsed Gauss rule on each simplex, with edge bisection where the
  /// kernel is steep; the independent route for cross-checks.
  double objective_quadrature(const Vec& z, int order = 8, double rel_tol = 1e-10) const;
  /// |K ∩ u^⊥ ∩ z^+|.
  double halfspace_volume(const Vec& z) const;

 private:
  int n_ = 0;
  Vec u_;
  Subspace plane_;
  SectionResult section_;
  double volume_ = 0.0;
  double radius_ = 0.0;
  std::vector<Simplex> simplices_;
  std::optional<ConvexBody::Ellipsoid> ellipsoid_;
};

/// Phi(z) for an ambient z in u^⊥. Throws DomainError when z is not in the
/// interior of P_u K^*.
double ci_objective(const ConvexBody& K, const Vec& u, const Vec& z);
/// Gradient of Phi as an ambient vector in u^⊥.
Vec ci_objective_gradient(const ConvexBody& K, const Vec& u, const Vec& z);

struct CIEvaluation {
  Vec direction;
  double i_radius = 0.0;
  double ci_radius = 0.0;
  /// Ambient point of u^⊥.
  Vec minimizer_z;
  int iterations = 0;
  /// |grad Phi| * radius(section) / Phi at the minimizer.
  double certified_gap = 0.0;
  bool certified = false;
  std::string method;
};

struct CIOptions {
  double tol = 1e-8;
  int max_iterations = 10000;
  /// Iterates stay in {z : max <z,y> <= 1 - shrink}.
  double shrink = 1e-6;
};

/// Damped Newton descent from z = 0 with Armijo backtracking (1e-4, factor
/// 0.5), rejecting inadmissible steps; compass search if Newton stalls.
CIEvaluation ci_radial(const ConvexBody& K, const Vec& u, const CIOptions& options = {});
CIEvaluation ci_radial(const CISection& s, const CIOptions& options = {});

/// Derivative-free coordinate search from z = 0, for cross-validation.
CIEvaluation ci_radial_compass(const CISection& s, const CIOptions& options = {});

struct CIReport {
  std::vector<CIEvaluation> records;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int num_uncertified = 0;
  /// ci <= i (1 + 1e-9) at every direction.
  bool upper_inclusion = true;
};

/// `num_dirs` seeded uniform directions, evaluated with up to `jobs` threads.
CIReport ci_inclusion_report(const ConvexBody& K, int num_dirs, std::uint64_t seed, const CIOptions& options = {},
                             int jobs = 1);

/// Exactly `count` seeded uniform unit vectors of R^n.
std::vector<Vec> random_directions(int n, int count, std::uint64_t seed);

}  // namespace cvxsec
