// Acceptance run: one PASS/FAIL line per criterion with its pinned tolerance
// and runtime budget. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvxsec/ball_bodies.hpp"
#include "cvxsec/intersection_bodies.hpp"
#include "cvxsec/io.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/special.hpp"
#include "cvxsec/verify.hpp"
#include "cvxsec/volume.hpp"

using namespace cvxsec;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool on_time = dt <= budget_s;
  const bool ok = o.pass && on_time;
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s; %.2f s (budget %.0f s%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt,
              budget_s, on_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::string corpus_with_checks(const json& checks) {
  std::ifstream in(CVXSEC_DEFAULT_CORPUS);
  json m = json::parse(in);
  m["checks"] = checks;
  return m.dump();
}

Outcome corpus_outcome(const CorpusReport& rep) {
  int errors = 0;
  for (const auto& r : rep.results)
    if (r.notes.rfind("error:", 0) == 0) ++errors;
  Outcome o;
  o.pass = rep.failed == 0;
  o.detail = std::to_string(rep.results.size()) + " records, " + std::to_string(rep.failed) + " violations (" +
             std::to_string(errors) + " errors)";
  for (const auto& r : rep.results)
    if (r.assertable && !r.passed) {
      o.detail += "; first: " + r.name + " " + r.body_spec + " " + r.notes;
      break;
    }
  return o;
}

}  // namespace

int main() {
  criterion(1, "Remark 1 ratio (l/(n+1))^l, n=3..6, rel 1e-6", 10, [] {
    double worst = 0;
    int bad = 0;
    for (int n = 3; n <= 6; ++n)
      for (int l = 1; l < n; ++l) {
        const CheckResult r = experiment_remark1(n, l);
        worst = std::max(worst, std::abs(r.lhs - r.rhs) / r.rhs);
        bad += !r.passed;
      }
    return Outcome{bad == 0, fmt("max rel err %.2e over 14 cases", worst)};
  });

  criterion(2, "Remark 3 cube cone n^{n/2}/n!, n=2,4,8, rel 1e-6", 30, [] {
    std::string d;
    bool ok = true;
    for (int n : {2, 4, 8}) {
      const CheckResult r = experiment_remark3_cube(n);
      ok = ok && r.passed;
      d += fmt("n=%g %.10g vs %.10g; ", n, r.lhs, r.rhs);
    }
    return Outcome{ok, d};
  });

  criterion(3, "Gruenbaum equality on cones (1e-9) and 200 random polytopes x 20 dirs", 60, [] {
    double eq_err = 0;
    for (int n = 2; n <= 4; ++n) {
      const ConvexBody K(make_pyramid(n));
      const CheckResult r = check_gruenbaum(K, Vec::Unit(n, n - 1), "pyramid");
      eq_err = std::max(eq_err, std::abs(r.parameters.at("fraction") - gruenbaum_constant(n).value));
    }
    int violations = 0, total = 0;
    double tightest = 1e9;
    for (int i = 0; i < 200; ++i) {
      const int n = 2 + i % 4;
      const ConvexBody K(random_centered_polytope(n, 2 * n + 2 + i % 3, 30000 + i));
      for (const Vec& u : random_directions(n, 20, 40000 + i)) {
        const CheckResult r = check_gruenbaum(K, u, "random");
        violations += !r.passed;
        ++total;
        tightest = std::min(tightest, r.rhs / r.lhs);
      }
    }
    return Outcome{eq_err <= 1e-9 && violations == 0,
                   fmt("equality err %.2e; %g checks, %g violations, tightest |K∩u+|/bound %.6f", eq_err, total,
                       violations, tightest)};
  });

  criterion(4, "Beta identity p B(p,q+1) C(p+q,p) = 1, 1<=p,q<=10, 1e-12", 1, [] {
    double worst = 0;
    for (int p = 1; p <= 10; ++p)
      for (int q = 1; q <= 10; ++q) worst = std::max(worst, std::abs(p * beta_fn(p, q + 1) * binom(p + q, p) - 1));
    return Outcome{worst <= 1e-12, fmt("max err %.2e", worst)};
  });

  criterion(5, "Theorem part (1) explicit bound, 50 random polytopes per n=3..6, slack 1e-6", 600, [] {
    int total = 0, violations = 0, errors = 0;
    double worst = 0;
    for (int n = 3; n <= 6; ++n)
      for (int b = 0; b < 50; ++b) {
        const ConvexBody K(random_centered_polytope(n, 2 * n + 2, 50000 + 100 * n + b));
        for (int k = 1; k <= n; ++k)
          for (int p = 1; p <= std::min(k, 2); ++p) {
            std::vector<ConeKind> kinds{ConeKind::Ray};
            if (p == 2) kinds = {ConeKind::Orthant, ConeKind::Simplicial};
            for (ConeKind kind : kinds) {
              const std::uint64_t s = 7 * (1000 * n + 10 * b + k) + p + 3 * static_cast<int>(kind);
              try {
                const Configuration cf = random_configuration(n, k, p, kind, s);
                const CheckResult r = check_theorem_part1(K, cf.F, cf.C, "random");
                violations += !r.passed;
                worst = std::max(worst, r.lhs / r.rhs);
              } catch (const std::exception&) {
                ++errors;
              }
              ++total;
            }
          }
      }
    return Outcome{violations == 0 && errors == 0,
                   fmt("%g cases, %g violations, %g errors, max ratio/constant %.4f", total, violations, errors, worst)};
  });

  criterion(6, "Theorem part (2) n^p sandwich, isotropic simplex/cube/random, n<=5", 300, [] {
    int total = 0, violations = 0;
    double tight = 1e9;
    for (int n = 2; n <= 5; ++n) {
      std::vector<ConvexBody> bodies{ConvexBody(make_regular_simplex(n)), ConvexBody(make_cube(n))};
      for (int b = 0; b < 10; ++b) bodies.emplace_back(random_centered_polytope(n, 2 * n + 2, 60000 + 100 * n + b));
      for (std::size_t i = 0; i < bodies.size(); ++i) {
        const ConvexBody Ki = isotropic_position(bodies[i]).body;
        for (int k = 1; k <= n; ++k)
          for (int p = 1; p <= std::min(k, 2); ++p) {
            const Configuration cf =
                random_configuration(n, k, p, p == 1 ? ConeKind::Ray : ConeKind::Orthant, 900 * n + 31 * i + 5 * k + p);
            const CheckResult r = check_theorem_part2(Ki, cf.F, cf.C, "iso");
            violations += !r.passed;
            ++total;
            tight = std::min({tight, r.lhs / r.parameters.at("lower"), r.parameters.at("upper") / r.lhs});
          }
      }
    }
    return Outcome{violations == 0, fmt("%g cases, %g violations, smallest margin factor %.3f", total, violations, tight)};
  });

  criterion(7, "Lemma 2 moment identity, p=0,1,2, k<=3, rel 1e-4", 120, [] {
    int total = 0, bad = 0;
    double worst = 0;
    auto run = [&](const ConcaveFunctionOracle& f, const Vec& u) {
      for (int p = 0; p <= 2; ++p) {
        const CheckResult r = check_lemma2(f, u, p);
        bad += !r.passed;
        ++total;
        worst = std::max(worst, std::abs(r.lhs - r.rhs) / r.parameters.at("scale"));
      }
    };
    for (int k = 1; k <= 3; ++k) {
      run(ball_indicator_oracle(k, 1.3, 2.0), random_directions(k, 1, 70 + k).front());
      for (int b = 0; b < (k < 3 ? 2 : 1); ++b) {
        const int n = k + 1 + b;
        const ConvexBody K(random_centered_polytope(n, 2 * n + 2, 71000 + 10 * k + b));
        CounterRng rng(72000 + 10 * k + b, 1);
        const Mat Q = random_orthogonal(n, rng);
        run(section_oracle(K, Subspace(n, Q.leftCols(n - k))), random_directions(k, 1, 73 + k + b).front());
      }
    }
    return Outcome{bad == 0, fmt("%g identities, max rel deviation %.2e", total, worst)};
  });

  criterion(8, "Lemma 5 / Lemma 7 / Prop. 8 over the corpus (slack 1e-9 / 1e-7)", 120, [] {
    const json checks = {{"lemma5", {{"dirs", 64}}}, {"lemma7", {{"dirs", 4}}}, {"prop8", json::object()}};
    return corpus_outcome(run_corpus(corpus_with_checks(checks), 1));
  });

  criterion(9, "Berwald chain and Fradelizi bound on the oracle corpus, slack 1e-6", 120, [] {
    const json checks = {{"fradelizi", {{"max_n", 5}, {"k", {1, 2}}}},
                         {"berwald", {{"max_n", 5}, {"k", {1, 2}}, {"dirs", 8}}}};
    CorpusReport rep = run_corpus(corpus_with_checks(checks), 1);
    for (int k = 1; k <= 3; ++k)
      for (double m : {1.0, 4.0}) {
        const ConcaveFunctionOracle f = ball_indicator_oracle(k, 1.0, m);
        rep.results.push_back(check_fradelizi(f));
        for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{0.5, double(k + 2)}})
          for (auto& r : check_berwald(f, p, q, 16)) rep.results.push_back(r);
      }
    rep.failed = 0;
    for (const auto& r : rep.results) rep.failed += r.assertable && !r.passed;
    return corpus_outcome(rep);
  });

  criterion(10, "CI upper inclusion, 50 dirs, n=3,4; symmetric equality 1e-6; all certified", 300, [] {
    int bad = 0, uncertified = 0;
    double sym_err = 0, sym_z = 0, lo = 1;
    for (int n : {3, 4}) {
      std::vector<std::pair<ConvexBody, bool>> bodies{{ConvexBody(make_regular_simplex(n)), false},
                                                     {ConvexBody(make_cube(n)), true},
                                                     {ConvexBody(make_cross_polytope(n)), true}};
      for (int b = 0; b < 3; ++b) bodies.push_back({ConvexBody(random_centered_polytope(n, 2 * n + 2, 80000 + 10 * n + b)), false});
      for (const auto& [K, symmetric] : bodies) {
        const CIReport rep = ci_inclusion_report(K, 50, 81000 + n);
        bad += !rep.upper_inclusion;
        uncertified += rep.num_uncertified;
        lo = std::min(lo, rep.min_ratio);
        if (symmetric)
          for (const auto& e : rep.records) {
            sym_err = std::max(sym_err, std::abs(e.ci_radius - e.i_radius) / e.i_radius);
            sym_z = std::max(sym_z, e.minimizer_z.norm() / (2 * std::sqrt(static_cast<double>(n))));
          }
      }
    }
    return Outcome{bad == 0 && uncertified == 0 && sym_err <= 1e-6 && sym_z <= 1e-6,
                   fmt("inclusion failures %g, uncertified %g, symmetric rel err %.1e, |z|/diam %.1e", bad, uncertified,
                       sym_err, sym_z) +
                       fmt(", min CI/I %.4f", lo)};
  });

  criterion(11, "Cone volume routes agree (20 cases, 1e-3); Monte Carlo within 3 sigma", 300, [] {
    double worst = 0;
    int cases = 0;
    for (int i = 0; cases < 20; ++i) {
      const int n = 3 + i % 3;
      const int k = 1 + i % n;
      const int p = std::min(k, 1 + i % 2);
      const ConvexBody K(random_centered_polytope(n, 2 * n + 2, 50000 + 100 * n + i));
      const Configuration cf = random_configuration(n, k, p, p == 1 ? ConeKind::Ray : ConeKind::Simplicial, 90000 + i);
      const double a = cone_section_volume_polyhedral(K, cf.F, cf.C);
      const double b = cone_section_volume_radial(K, cf.F, cf.C).value;
      worst = std::max(worst, std::abs(a - b) / a);
      ++cases;
    }
    int outside = 0;
    const ConvexBody K(random_centered_polytope(3, 10, 91000));
    const double exact = moments(K).volume;
    for (int t = 0; t < 100; ++t) {
      const MonteCarloEstimate mc = monte_carlo_volume(K, 20000, 92000 + t);
      outside += std::abs(mc.estimate - exact) > 3 * mc.stderr_;
    }
    return Outcome{worst <= 1e-3 && outside <= 1,
                   fmt("route rel diff max %.2e over %g cases; %g of 100 MC trials outside 3 sigma (allowance 1)", worst,
                       cases, outside)};
  });

  criterion(12, "Unspecified constants tabulated; Remark 2 ratios monotone within 1%", 120, [] {
    bool mono = true;
    std::string d = "Remark 2 last/target:";
    for (int n = 2; n <= 5; ++n) {
      const SharpnessTable t = experiment_remark2_sharpness(n, default_sharpness_epsilons(n));
      mono = mono && t.monotone;
      d += fmt(" %.3f", t.rows.back().ratio / t.target);
    }
    bool finite = true;
    for (int n = 2; n <= 5; ++n) finite = finite && std::isfinite(experiment_alpha_n(n, 3, 1).min_value);
    const ConvexBody K(random_centered_polytope(4, 10, 93000));
    const ConcaveFunctionOracle f = section_oracle(K, Subspace(4, Mat::Identity(4, 4).leftCols(2)));
    const CheckResult l4 = report_lemma4(f, 16, 1);
    const CheckResult p9 = report_prop9(f, 16, 1);
    const CheckResult c1 = check_corollary1(K, Subspace(4, Mat::Identity(4, 4).leftCols(2)), Vec::Unit(4, 3), "random");
    finite = finite && std::isfinite(l4.parameters.at("c_empirical")) && std::isfinite(p9.parameters.at("a_empirical")) &&
             std::isfinite(c1.parameters.at("c_empirical"));
    return Outcome{mono && finite, d + fmt("; lemma4 c~%.3f, prop9 a~%.3f, corollary1 c~%.3f",
                                           l4.parameters.at("c_empirical"), p9.parameters.at("a_empirical"),
                                           c1.parameters.at("c_empirical"))};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
