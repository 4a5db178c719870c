// Command-line front end: load bodies and cones, run checks and experiments,
// write JSON or CSV reports.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvxsec/ball_bodies.hpp"
#include "cvxsec/intersection_bodies.hpp"
#include "cvxsec/io.hpp"
#include "cvxsec/rng.hpp"
#include "cvxsec/sections.hpp"
#include "cvxsec/verify.hpp"
#include "cvxsec/version.hpp"
#include "cvxsec/volume.hpp"

using namespace cvxsec;

namespace {

struct Config {
  std::string command;
  std::string name;  // check / experiment name
  std::string body = "simplex";
  std::string cone;
  std::string manifest;
  int n = 3;
  int k = 1;
  int p = 1;
  int l = 0;
  int dirs = 16;
  int trials = 10;
  int points = 0;
  int jobs = 1;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

NamedBody load_body(const Config& c) {
  if (std::filesystem::exists(c.body) || c.body.ends_with(".json")) return body_from_json(read_json_file(c.body));
  return builtin_body(c.body, c.n, c.points, c.seed);
}

json config_echo(const Config& c) {
  return {{"command", c.command}, {"name", c.name},     {"body", c.body},     {"cone", c.cone},
          {"n", c.n},             {"k", c.k},           {"p", c.p},           {"l", c.l},
          {"dirs", c.dirs},       {"trials", c.trials}, {"points", c.points}, {"seed", c.seed},
          {"tol", c.tol},         {"jobs", c.jobs},     {"format", c.format}};
}

// F of dimension n-k and a cone in F^⊥, from --cone or drawn from --seed.
Configuration load_configuration(const Config& c, int n) {
  if (!c.cone.empty()) {
    auto [F, C] = cone_from_json(read_json_file(c.cone), n);
    return {F, C};
  }
  const ConeKind kind = c.p == 1 ? ConeKind::Ray : ConeKind::Orthant;
  return random_configuration(n, c.k, c.p, kind, c.seed);
}

ConcaveFunctionOracle section_function(const Config& c, const NamedBody& B) {
  const int n = B.body.dim();
  if (c.k < 1 || c.k > n) throw DomainError("need 1 <= k <= n");
  CounterRng rng(c.seed, 0x5345);
  const Mat Q = random_orthogonal(n, rng);
  ConcaveFunctionOracle f = section_oracle(B.body, Subspace(n, Q.leftCols(n - c.k)));
  f.label = B.label + "|section(k=" + std::to_string(c.k) + ",seed=" + std::to_string(c.seed) + ")";
  return f;
}

std::vector<CheckResult> run_check(const Config& c) {
  const std::string& name = c.name;
  if (name == "remark1" || name == "remark3") throw ConfigError("use `experiment " + name + "`");
  const NamedBody B = load_body(c);
  const ConvexBody& K = B.body;
  const int n = K.dim();
  std::vector<CheckResult> out;
  if (name == "gruenbaum") {
    for (const Vec& u : random_directions(n, c.dirs, c.seed)) out.push_back(check_gruenbaum(K, u, B.label));
  } else if (name == "theorem1") {
    const Configuration cf = load_configuration(c, n);
    out.push_back(check_theorem_part1(K, cf.F, cf.C, B.label));
  } else if (name == "theorem2") {
    const Configuration cf = load_configuration(c, n);
    out.push_back(check_theorem_part2(isotropic_position(K).body, cf.F, cf.C, B.label));
  } else if (name == "corollary1") {
    const Configuration cf = random_configuration(n, c.k, 1, ConeKind::Ray, c.seed);
    out.push_back(check_corollary1(K, cf.F, cf.C.generators().front(), B.label));
  } else if (name == "corollary2") {
    const auto d = random_directions(n, 2 * c.dirs, c.seed);
    for (int i = 0; i < c.dirs; ++i) out.push_back(check_corollary2(K, d[2 * i], d[2 * i + 1], B.label));
  } else if (name == "corollary3") {
    // E = F ⊕ span(u_i) from a random configuration with orthonormal generators.
    const Configuration cf = random_configuration(n, c.k, c.p, c.p == 1 ? ConeKind::Ray : ConeKind::Orthant, c.seed);
    const Subspace E = cf.F.direct_sum(cf.C.span());
    out.push_back(check_corollary3(isotropic_position(K).body, E, cf.C.generators(), B.label));
  } else if (name == "lemma5") {
    out.push_back(check_lemma5(K, B.label, c.dirs, c.seed));
  } else if (name == "lemma7") {
    for (const Vec& u : random_directions(n, c.dirs, c.seed))
      for (auto& r : check_lemma7(K, u, B.label)) out.push_back(r);
  } else if (name == "prop8") {
    out = check_prop8(K, B.label);
  } else if (name == "ci") {
    out.push_back(check_ci_inclusion(K, B.label, c.dirs, c.seed));
  } else {
    const ConcaveFunctionOracle f = section_function(c, B);
    if (name == "fradelizi") {
      out.push_back(check_fradelizi(f, c.seed));
    } else if (name == "berwald") {
      out = check_berwald(f, c.p, c.p + 1.0, c.dirs, c.seed);
    } else if (name == "lemma6") {
      out.push_back(check_lemma6(f, c.p, c.dirs, c.seed));
    } else if (name == "lemma2") {
      for (int p = 0; p <= 2; ++p)
        out.push_back(check_lemma2(f, random_directions(f.dim, 1, c.seed).front(), p));
    } else if (name == "concavity") {
      out.push_back(check_concavity(f, 200, c.seed));
    } else if (name == "lemma4") {
      out.push_back(report_lemma4(f, c.dirs, c.seed));
    } else if (name == "prop9") {
      out.push_back(report_prop9(f, c.dirs, c.seed));
    } else {
      throw ConfigError("unknown check \"" + name + "\"");
    }
  }
  sort_results(out);
  return out;
}

json run_experiment(const Config& c, std::vector<CheckResult>& checks) {
  const std::string& name = c.name;
  if (name == "remark1") {
    const int lo = c.l > 0 ? c.l : 1;
    const int hi = c.l > 0 ? c.l : c.n - 1;
    for (int l = lo; l <= hi; ++l) checks.push_back(experiment_remark1(c.n, l));
    return nullptr;
  }
  if (name == "remark3") {
    checks.push_back(experiment_remark3_cube(c.n));
    return nullptr;
  }
  if (name == "remark2") return to_json(experiment_remark2_sharpness(c.n, default_sharpness_epsilons(c.n)));
  if (name == "alpha") return to_json(experiment_alpha_n(c.n, c.trials, c.seed));
  if (name == "constants") {
    json rows = json::array();
    for (int k = 1; k <= c.n; ++k)
      for (int p = 1; p <= k; ++p) {
        const ExplicitConstant e = theorem1_constant(c.n, k, p);
        rows.push_back({{"n", e.n}, {"k", e.k}, {"p", e.p}, {"value", e.value},
                        {"corollary1_shape", p == 1 ? corollary1_shape(c.n, k) : 0.0}});
      }
    return {{"theorem1", rows}, {"gruenbaum", gruenbaum_constant(c.n).value}};
  }
  throw ConfigError("unknown experiment \"" + name + "\"");
}

json run_geometry(const Config& c, std::string& csv) {
  const NamedBody B = load_body(c);
  const ConvexBody& K = B.body;
  const int n = K.dim();
  std::ostringstream rows;
  json data;
  if (c.command == "volume") {
    const MomentSummary m = moments(K);
    data = {{"body", B.label}, {"volume", m.volume}, {"centroid", vec_to_json(m.centroid)}};
    rows << "body,volume\n\"" << B.label << "\"," << json(m.volume).dump() << '\n';
  } else if (c.command == "section") {
    CounterRng rng(c.seed, 0x5345);
    const Mat Q = random_orthogonal(n, rng);
    const Subspace F(n, Q.leftCols(n - c.k));
    const double v = section(K, Flat::through_origin(F)).volume();
    data = {{"body", B.label}, {"dim", n - c.k}, {"volume", v}};
    rows << "body,dim,volume\n\"" << B.label << "\"," << n - c.k << ',' << json(v).dump() << '\n';
  } else if (c.command == "cone-volume") {
    const Configuration cf = load_configuration(c, n);
    const double plus = cone_section_volume_polyhedral(K, cf.F, cf.C);
    const double minus = cone_section_volume_polyhedral(K, cf.F, cf.C.negated());
    data = {{"body", B.label}, {"k", n - cf.F.dim()}, {"p", cf.C.p()}, {"plus", plus}, {"minus", minus}};
    if (cf.C.p() <= 3 || cf.C.orthogonal_generators()) {
      const RadialVolume r = cone_section_volume_radial(K, cf.F, cf.C);
      data["plus_radial"] = r.value;
      data["plus_radial_error"] = r.error;
    }
    rows << "body,plus,minus\n\"" << B.label << "\"," << json(plus).dump() << ',' << json(minus).dump() << '\n';
  } else if (c.command == "ball-body") {
    const ConcaveFunctionOracle f = section_function(c, B);
    const StarBodyOracle L = ball_body(f, c.p);
    json recs = json::array();
    rows << "theta,radius\n";
    for (const Vec& th : sphere_directions(f.dim, c.dirs, c.seed)) {
      const double r = L(th);
      recs.push_back({{"theta", vec_to_json(th)}, {"radius", r}});
      rows << '"' << vec_to_json(th).dump() << "\"," << json(r).dump() << '\n';
    }
    data = {{"function", f.label}, {"p", c.p}, {"records", recs}};
  } else if (c.command == "intersection-body") {
    json recs = json::array();
    rows << "u,radius\n";
    for (const Vec& u : random_directions(n, c.dirs, c.seed)) {
      const double r = intersection_radial(K, u);
      recs.push_back({{"u", vec_to_json(u)}, {"radius", r}});
      rows << '"' << vec_to_json(u).dump() << "\"," << json(r).dump() << '\n';
    }
    data = {{"body", B.label}, {"records", recs}};
  } else if (c.command == "ci-body") {
    CIOptions opts;
    opts.tol = c.tol;
    const CIReport rep = ci_inclusion_report(K, c.dirs, c.seed, opts, c.jobs);
    data = to_json(rep);
    data["body"] = B.label;
    rows << "u,i_radius,ci_radius,iterations,certified\n";
    for (const auto& e : rep.records)
      rows << '"' << vec_to_json(e.direction).dump() << "\"," << json(e.i_radius).dump() << ','
           << json(e.ci_radius).dump() << ',' << e.iterations << ',' << (e.certified ? "true" : "false") << '\n';
  }
  csv = rows.str();
  return data;
}

std::string default_manifest() {
  if (const char* env = std::getenv("CVXSEC_CORPUS")) return env;
  return CVXSEC_DEFAULT_CORPUS;
}

int run(Config& c) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> checks;
  json data = nullptr;
  std::string csv;
  bool failed = false;

  if (c.command == "check") {
    checks = run_check(c);
  } else if (c.command == "experiment") {
    data = run_experiment(c, checks);
  } else if (c.command == "corpus") {
    if (c.manifest.empty()) c.manifest = default_manifest();
    std::ifstream in(c.manifest);
    if (!in) throw ConfigError("cannot open corpus manifest " + c.manifest);
    std::stringstream ss;
    ss << in.rdbuf();
    const CorpusReport rep = run_corpus(ss.str(), c.jobs);
    checks = rep.results;
  } else {
    data = run_geometry(c, csv);
    if (c.command == "ci-body") failed = !data["summary"]["upper_inclusion"].get<bool>() ||
                                         data["summary"]["num_uncertified"].get<int>() > 0;
  }
  for (const auto& r : checks)
    if (r.assertable && !r.passed) failed = true;

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string body;
  if (c.format == "csv") {
    body = checks.empty() ? csv : results_csv(checks);
  } else {
    json report;
    report["meta"] = {{"version", kVersion}, {"config", config_echo(c)}, {"wall_clock_seconds", wall}};
    if (!checks.empty() || c.command == "check" || c.command == "corpus") {
      json arr = json::array();
      int n_failed = 0, n_report = 0;
      for (const auto& r : checks) {
        arr.push_back(to_json(r));
        if (!r.assertable) ++n_report;
        else if (!r.passed) ++n_failed;
      }
      report["results"] = arr;
      report["summary"] = {{"total", checks.size()}, {"failed", n_failed}, {"report_only", n_report}};
    }
    if (!data.is_null()) report["data"] = data;
    body = report.dump(2) + "\n";
  }
  if (c.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream o(c.out);
    if (!o) throw ConfigError("cannot write " + c.out);
    o << body;
  }
  return failed ? 1 : 0;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--body", c.body, "builtin body name (simplex, cube, cross, ball, pyramid, random) or JSON file");
  sub->add_option("--n", c.n, "dimension of a builtin body")->check(CLI::Range(1, kMaxDim));
  sub->add_option("--k", c.k, "codimension of the flat F");
  sub->add_option("--p", c.p, "number of cone generators, or the moment order");
  sub->add_option("--dirs", c.dirs, "number of seeded directions")->check(CLI::PositiveNumber);
  sub->add_option("--points", c.points, "points for random bodies (default 2n+2)");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--tol", c.tol, "optimiser tolerance (ci-body, default 1e-8)");
  sub->add_option("--cone", c.cone, "cone spec JSON file");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Cone sections of convex bodies: volumes, checks and experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  const std::pair<const char*, const char*> plain[] = {
      {"volume", "volume, centroid and second moments"},
      {"section", "central section by a flat of codimension k"},
      {"cone-volume", "|K ∩ (F+C)| and |K ∩ (F-C)| by both routes"},
      {"ball-body", "radial function of L_p of a section function"},
      {"intersection-body", "radial function of I(K)"},
      {"ci-body", "CI(K) against I(K) over seeded directions"}};
  for (const auto& [cmd, help] : plain) add_common(app.add_subcommand(cmd, help), c);
  auto* check = app.add_subcommand("check", "run a named check");
  check->add_option("name", c.name, "gruenbaum, theorem1, theorem2, corollary1..3, lemma2, lemma4..7, prop8, prop9, "
                                    "fradelizi, berwald, concavity, ci")->required();
  add_common(check, c);
  auto* exp = app.add_subcommand("experiment", "run an experiment");
  exp->add_option("name", c.name, "remark1, remark2, remark3, alpha, constants")->required();
  exp->add_option("--l", c.l, "subspace dimension for remark1 (default: all)");
  exp->add_option("--trials", c.trials, "trials for alpha");
  add_common(exp, c);
  auto* corpus = app.add_subcommand("corpus", "run a corpus manifest");
  corpus->add_option("--manifest", c.manifest, "manifest JSON (default $CVXSEC_CORPUS or the bundled corpus)");
  add_common(corpus, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    return run(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
