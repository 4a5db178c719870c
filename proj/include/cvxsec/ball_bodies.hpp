#pragma once

// Ball's bodies L_p(f) of log-concave functions, given as radial oracles:
// the ray integrals I_p(f, x), the moment identity, the Berwald inclusion
// constants and the derived lemmas, and geometric distances between star
// bodies.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cvxsec/bodies.hpp"
#include "cvxsec/quadrature.hpp"
#include "cvxsec/sections.hpp"

namespace cvxsec {

/// A non-negative function on R^k that is 1/m-concave on its support (or
/// only log-concave when `concavity_index` is empty).
struct ConcaveFunctionOracle {
  int dim = 0;
  std::function<double(const Vec&)> evaluate;
  std::optional<double> concavity_index;
  /// f vanishes outside support_radius * B_2^k.
  double support_radius = 0.0;
  bool barycenter_zero = false;
  std::string label;

  /// Optional: ∫_0^∞ t^{p-1} f(t theta) dt for a unit theta.
  std::function<double(const Vec&, double)> ray_moment;
  /// Optional: ∫_{R^k} <x,u>^p f(x) dx for integer p >= 0.
  std::function<double(const Vec&, int)> moment;
  /// Optional: the matrix ∫ x x^T f(x) dx.
  std::function<Mat()> second_moments;

  double operator()(const Vec& x) const { return evaluate(x); }
};

/// f(x) = |K ∩ (F + x)|, m = dim F. The section function is shared, so
/// copies of the oracle share its memo table.
ConcaveFunctionOracle section_oracle(std::shared_ptr<const SectionVolumeFunction> f);
ConcaveFunctionOracle section_oracle(const ConvexBody& K, const Subspace& F);

/// Indicator of r B_2^k, 1/m-concave for every m > 0 (m is recorded as given).
ConcaveFunctionOracle ball_indicator_oracle(int k, double r = 1.0, double m = 1.0);

/// f(x) = exp(-|x|), log-concave only.
ConcaveFunctionOracle exponential_oracle(int k);

/// Direction -> radius map of a star body about the origin.
struct StarBodyOracle {
  int dim = 0;
  std::function<double(const Vec&)> radial;
  std::string label;

  double operator()(const Vec& theta) const { return radial(theta); }
  /// Minkowski functional |x| / r(x / |x|).
  double gauge(const Vec& x) const;
};

StarBodyOracle star_of(const ConvexBody& K, std::string label = "body");

/// ∫_0^∞ t^{p-1} f(t x) dt, by the oracle's hook when present, otherwise by
/// adaptive quadrature up to the support radius.
double ray_moment(const ConcaveFunctionOracle& f, const Vec& x, double p);

/// I_p(f, x) = (∫_0^∞ t^{p-1} f(t x) dt)^{1/p}; 0 when f vanishes on the ray.
double I_p(const ConcaveFunctionOracle& f, const Vec& x, double p);

/// L_p(f) as a radial oracle.
StarBodyOracle ball_body(const ConcaveFunctionOracle& f, double p);

/// Seeded uniform directions on S^{k-1} followed by the ±e_i.
std::vector<Vec> sphere_directions(int k, int count, std::uint64_t seed);

/// Hull of r(theta) theta over sphere_directions(k, num_dirs, seed);
/// num_dirs <= 0 selects 2^(k+4).
ConvexBody polytope_approximation(const StarBodyOracle& L, int num_dirs = 0, std::uint64_t seed = 1);

/// ∫_{S^{k-1}} g(theta) dtheta. k = 1 sums the two points, k = 2 integrates
/// the angle adaptively, k = 3 refines the radially projected octahedron
/// adaptively. Returns the estimate and an error indicator.
QuadResult sphere_integral(int k, const std::function<double(const Vec&)>& g, double rel_tol = 1e-8,
                           int max_evals = 400000);

struct MomentIdentity {
  /// ∫_{L_{k+p}(f)} <x,u>^p dx, integrated in polar coordinates from the
  /// radial function of L_{k+p}(f).
  double lhs = 0.0;
  /// (1/(k+p)) ∫ <x,u>^p f(x) dx, from the oracle's moment hook (exact for
  /// section functions) or quadrature.
  double rhs = 0.0;
  /// Same left side from the polytope approximation of L_{k+p}(f); reported only.
  double lhs_polytope = 0.0;
  double quadrature_error = 0.0;
};

/// approx_dirs < 0 skips the polytope approximation.
MomentIdentity moment_identity_check(const ConcaveFunctionOracle& f, const Vec& u, int p, int approx_dirs = 0,
                                     std::uint64_t seed = 1, int max_evals = 400000);

struct BerwaldConstants {
  double lower = 0.0;
  double upper = 0.0;
};

/// The factors of the inclusion chain L_q -> L_p for 0 < p <= q: lower =
/// B(p,m+1)^{1/p} / B(q,m+1)^{1/q}, upper = q^{1/q} / p^{1/p}.
BerwaldConstants berwald_inclusion_constants(double p, double q, double m);

/// (1 + k/(m+1))^m, the bound on max f / f(0) for a barycentred 1/m-concave f.
double fradelizi_factor(int k, double m);

/// Factor of the -L_p(f) ⊂ c L_p(f) inclusion:
/// k (1+k/(m+1))^{m/p} ((k+1)B(k+1,m+1))^{1/(k+1)} / (p B(p,m+1))^{1/p}.
double lemma6_factor(int k, double m, double p);

/// Bound on d_g(L_{k+1}(f), L_p(f)), the same expression without the leading k.
double lp_distance_bound(int k, double m, double p);

/// max_theta r_A / r_B times max_theta r_B / r_A over the given directions;
/// a lower bound for the geometric distance.
double geometric_distance_lb(const StarBodyOracle& A, const StarBodyOracle& B, const std::vector<Vec>& directions);
double geometric_distance_lb(const StarBodyOracle& A, const StarBodyOracle& B, int num_dirs, std::uint64_t seed);

struct Maximum {
  Vec argmax;
  double value = 0.0;
};

/// max f by grid seeding and multi-start direct search with random
/// direction sets; any local maximum of a 1/m-concave function is global.
Maximum maximize(const ConcaveFunctionOracle& f, std::uint64_t seed = 1);

/// Second moments ∫ x x^T f from the hook, else by sphere quadrature.
Mat second_moment_matrix(const ConcaveFunctionOracle& f);

// ---- checks on polytopes -------------------------------------------------

/// max over directions of r_L(-theta) / r_L(theta), exact on vertex and
/// facet directions plus the given sample.
double negative_radial_ratio(const ConvexBody& L, const std::vector<Vec>& directions);

struct KlsSandwich {
  double lower = 0.0;   // h_L(u)^2 / (k(k+2))
  double middle = 0.0;  // (1/|L|) ∫_L <x,u>^2
  double upper = 0.0;   // k/(k+2) h_L(u)^2
};
KlsSandwich kls_sandwich(const ConvexBody& L, const Vec& u);

struct IsotropySandwich {
  double beta = 0.0;
  double r = 1.0;
  /// Inradius and circumradius of L about the origin.
  double min_radius = 0.0;
  double max_radius = 0.0;
};
/// beta(L) = sqrt(gamma / |L|) sqrt((k+2)/k) with gamma and gamma r^2 the
/// extreme values of ∫_L <x,u>^2 over unit u.
IsotropySandwich isotropy_sandwich(const ConvexBody& L);

}  // namespace cvxsec
