#pragma once

// Checkable predicates for the inequalities, identities and sharpness
// examples, the explicit constants, and a corpus runner.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cvxsec/ball_bodies.hpp"
#include "cvxsec/bodies.hpp"
#include "cvxsec/sections.hpp"

namespace cvxsec {

/// One evaluated predicate. One-sided checks pass when lhs <= rhs (1 +
/// slack); `notes` records any other convention. Report-only records have
/// assertable == false and always pass.
struct CheckResult {
  std::string name;
  std::string body_spec;
  std::map<std::string, double> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool passed = false;
  bool assertable = true;
  std::string notes;

  double ratio() const { return rhs != 0.0 ? lhs / rhs : 0.0; }
};

struct ExplicitConstant {
  std::string name;
  int n = 0;
  int k = 0;
  double p = 0.0;
  double m = 0.0;
  double value = 0.0;
};

/// k^p (1 + k/(n+1-k))^{n-k} C(n+p-k, p) C(n+1, k+1)^{-p/(k+1)}.
ExplicitConstant theorem1_constant(int n, int k, int p);
/// (1 + 1/n)^{-n}.
ExplicitConstant gruenbaum_constant(int n);
/// k^2 (1 + k/(n-k+1))^{n-k-1}, the explicit part of the one-ray bound.
double corollary1_shape(int n, int k);

/// Cone shapes used by the theorem grids.
enum class ConeKind { Ray, Orthant, Simplicial };

struct Configuration {
  Subspace F;
  PolyhedralCone C;
};

/// Seeded random F of dimension n-k and a p-generator cone in F^⊥: a ray
/// (p = 1), orthonormal generators, or Gaussian generators.
Configuration random_configuration(int n, int k, int p, ConeKind kind, std::uint64_t seed);

// ---- Gruenbaum and the main theorem ----------------------------------------

/// lhs = (1+1/n)^{-n} |K|, rhs = |K ∩ u^+|; passes when rhs >= lhs (1 - 1e-9).
CheckResult check_gruenbaum(const ConvexBody& K, const Vec& u, const std::string& body_spec);

/// |K ∩ (F-C)| / |K ∩ (F+C)| against theorem1_constant, slack 1e-6.
CheckResult check_theorem_part1(const ConvexBody& K, const Subspace& F, const PolyhedralCone& C,
                                const std::string& body_spec);

/// The n^p branch for a K in isotropic position: n^{-p} B <= R_K <= n^p B
/// with R = |.∩(F+C)| / |.∩(F+G)| and B the same ratio for B_2^n. lhs and
/// rhs hold R_K and B; passes when both sides of the sandwich hold with
/// slack 1e-6. The other branch contains an unspecified constant and is
/// noted only.
CheckResult check_theorem_part2(const ConvexBody& K_isotropic, const Subspace& F, const PolyhedralCone& C,
                                const std::string& body_spec);

/// Ray case: |K∩(F+R_+θ)| / |K∩(F+R_-θ)| <= theorem1_constant(n, k, 1).
/// Parameter "c_empirical" is the ratio over corollary1_shape(n, k).
CheckResult check_corollary1(const ConvexBody& K, const Subspace& F, const Vec& theta, const std::string& body_spec);

/// Half-sections of K ∩ u^⊥ split by v, v != ±u. Asserts max(ratio,
/// 1/ratio) <= theorem1_constant(n, 2, 1); "c_empirical" = that maximum.
CheckResult check_corollary2(const ConvexBody& K, const Vec& u, const Vec& v, const std::string& body_spec);

/// Isotropic K, subspace E and orthogonal u_1..u_p in E. Asserts
/// |K ∩ E ∩ {<x,u_i> >= 0}| >= (2n)^{-p} |K ∩ E| (1 - 1e-6); reports the
/// smallest c with exp(-ckp) below the observed fraction.
CheckResult check_corollary3(const ConvexBody& K_isotropic, const Subspace& E, const std::vector<Vec>& u,
                             const std::string& body_spec);

// ---- remarks -----------------------------------------------------------------

/// |Δ_n ∩ E_l ∩ f_{l+1}^+| / |Δ_n ∩ E_l| against (l/(n+1))^l, 1e-6 relative.
CheckResult experiment_remark1(int n, int l);

/// Vertex set of [-1,1]^n on the facet x_1 = 1 that is pairwise orthogonal
/// (rows of the Sylvester-Hadamard matrix), n a power of two.
std::vector<Vec> hadamard_vertices(int n);

/// |[-1,1]^n ∩ C| for the cone on hadamard_vertices(n) against n^{n/2}/n!.
CheckResult experiment_remark3_cube(int n);

struct SharpnessRow {
  double epsilon = 0.0;
  double half_angle = 0.0;
  double ratio = 0.0;
};
struct SharpnessTable {
  int n = 0;
  double target = 0.0;
  std::vector<SharpnessRow> rows;
  /// Each ratio is at least 0.99 times the previous one.
  bool monotone = true;
};

/// |C ∩ Δ| / |(-C) ∩ Δ| for cones with generators v + eps s_i around a
/// vertex direction v of the centred regular simplex; s_i are the vertices of
/// a regular simplex in v^⊥ scaled to unit length.
SharpnessTable experiment_remark2_sharpness(int n, const std::vector<double>& epsilons);
/// 1, 0.5, 0.2, 0.1, 0.05, 0.02 and, for n <= 4, 0.01.
std::vector<double> default_sharpness_epsilons(int n);

struct AlphaRow {
  std::string body;
  double value = 0.0;  // 2 (|K ∩ orthant| / |K|)^{1/n}
};
struct AlphaEstimate {
  int n = 0;
  int trials = 0;
  double min_value = 0.0;
  std::vector<AlphaRow> rows;
};

/// Random isotropic polytopes against random orthonormal bases; also the
/// cube in its coordinate basis and the regular simplex.
AlphaEstimate experiment_alpha_n(int n, int trials, std::uint64_t seed);

// ---- lemma wrappers ------------------------------------------------------------

CheckResult check_fradelizi(const ConcaveFunctionOracle& f, std::uint64_t seed = 1);
/// Worst r_L(-θ)/r_L(θ) against k, slack 1e-9.
CheckResult check_lemma5(const ConvexBody& L, const std::string& body_spec, int num_dirs = 64,
                         std::uint64_t seed = 1);
/// Worst r_{L_p}(-θ)/r_{L_p}(θ) against lemma6_factor(k, m, p), slack 1e-6.
CheckResult check_lemma6(const ConcaveFunctionOracle& f, double p, int num_dirs = 32, std::uint64_t seed = 1);
/// Lower and upper halves of the KLS sandwich, slack 1e-9.
std::vector<CheckResult> check_lemma7(const ConvexBody& L, const Vec& u, const std::string& body_spec);
/// Inner and outer balls beta B ⊂ L ⊂ r k beta B, slack 1e-7.
std::vector<CheckResult> check_prop8(const ConvexBody& L, const std::string& body_spec);
/// Lower and upper sides of the Berwald chain, worst direction, slack 1e-6.
/// max_f <= 0 computes max f with maximize().
std::vector<CheckResult> check_berwald(const ConcaveFunctionOracle& f, double p, double q, int num_dirs = 32,
                                       std::uint64_t seed = 1, double max_f = 0.0);
/// Moment identity: |lhs - rhs| <= 1e-4 scale, scale = |rhs| for even p and
/// sqrt(∫f ∫<x,u>^2 f) / (k+1) for p = 1.
CheckResult check_lemma2(const ConcaveFunctionOracle& f, const Vec& u, int p, int max_evals = 60000);
/// Brunn concavity of f^{1/m} along random chords, tolerance 1e-7 max(f)^{1/m}.
CheckResult check_concavity(const ConcaveFunctionOracle& f, int chords = 200, std::uint64_t seed = 1);
/// Report only: the extreme values of f(0)^{-1/((k+1)(k+2))} r_{L_{k+1}} / r_{L_{k+2}}.
CheckResult report_lemma4(const ConcaveFunctionOracle& f, int num_dirs = 32, std::uint64_t seed = 1);
/// Report only: a d_g(L_{k+1}(f), B_2^k) lower bound and the implied a.
CheckResult report_prop9(const ConcaveFunctionOracle& f, int num_dirs = 32, std::uint64_t seed = 1);
/// Report only: CI(K) against I(K) over seeded directions; asserts only the
/// upper inclusion and certification.
CheckResult check_ci_inclusion(const ConvexBody& K, const std::string& body_spec, int num_dirs, std::uint64_t seed);

// ---- corpus ----------------------------------------------------------------------

struct CorpusReport {
  std::vector<CheckResult> results;
  int failed = 0;
  int report_only = 0;
};

/// Runs the checks described by a corpus manifest (JSON text). Results are
/// ordered by (name, body, parameters) whatever the completion order.
CorpusReport run_corpus(const std::string& manifest_json, int jobs = 1);

/// Orders results by (name, body_spec, parameters).
void sort_results(std::vector<CheckResult>& results);

}  // namespace cvxsec
