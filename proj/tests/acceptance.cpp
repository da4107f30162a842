// Verification gate.  Runs every acceptance criterion end to end, prints one
// PASS/FAIL line per criterion with the measured margins, and exits with the
// number of failures.  Tolerances and runtime budgets are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "polyft/congruence.hpp"
#include "polyft/corpus.hpp"
#include "polyft/covariogram.hpp"
#include "polyft/fourier.hpp"
#include "polyft/hypersurface.hpp"
#include "polyft/io.hpp"
#include "polyft/polytope.hpp"
#include "polyft/rng.hpp"

#ifdef __unix__
#include <sys/wait.h>
#endif

using namespace polyft;

namespace {

namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int hw_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::string data_path(const std::string& name) {
  return std::string(TESTS_DATA_DIR) + "/" + name;
}

Vec v2(double a, double b) { return make_vec({a, b}); }
Vec v3(double a, double b, double c) { return make_vec({a, b, c}); }

Polytope unit_cube() {
  std::vector<Vec> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back(v3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
  return convex_hull(pts);
}

// Uniform draw from the ball |s| <= radius.
Vec ball_s(RandomStream& rng, int dim, double radius) {
  Vec dir(dim);
  double norm = 0.0;
  do {
    for (int j = 0; j < dim; ++j) dir[j] = rng.gaussian();
    norm = dir.norm();
  } while (norm < 1e-12);
  double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  return dir * (r / norm);
}

std::vector<Vec> efunction_edges(const EFunction& f) {
  std::vector<Vec> edges;
  for (const auto& t : f.terms)
    for (const auto& c : t.coefficients)
      for (const auto& e : c.edges) edges.push_back(e);
  return edges;  // unit vectors; duplicates are harmless
}

// Random unit vector orthogonal to the (unit) axis.
Vec unit_orthogonal(RandomStream& rng, const Vec& axis) {
  for (;;) {
    Vec g(axis.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) g[j] = rng.gaussian();
    Vec w = g - axis.dot(g) * axis;
    double n = w.norm();
    if (n > 1e-6) return w / n;
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// --- criterion 1: closed-form and sampling oracles agree with polytope_ft --

Outcome transform_oracles() {
  RandomStream body_rng(101);
  std::vector<Polytope> bodies;
  while (bodies.size() < 20) {
    std::vector<Vec> pts;
    for (int i = 0; i < 4; ++i)
      pts.push_back(
          v3(body_rng.gaussian(), body_rng.gaussian(), body_rng.gaussian()));
    try {
      Polytope t = convex_hull(pts);
      if (volume(t) >= 1e-2) bodies.push_back(std::move(t));
    } catch (const DegenerateInput&) {
      continue;  // coplanar draw; redraw
    }
  }
  bodies.push_back(unit_cube());

  double worst_se_ratio = 0.0;
  int mc_checks = 0, mc_failures = 0;
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    RandomStream s_rng(501 + static_cast<std::uint64_t>(k));
    std::vector<Vec> ss;
    for (int i = 0; i < 10; ++i) ss.push_back(ball_s(s_rng, 3, 5.0));
    std::vector<FtEstimate> est = brute_force_ft(
        bodies[k], std::span<const Vec>(ss), 10'000'000,
        9001 + static_cast<std::uint64_t>(k));
    for (int i = 0; i < 10; ++i) {
      double diff = std::abs(polytope_ft(bodies[k], ss[i]) - est[i].value);
      double ratio = diff / est[i].std_error;
      worst_se_ratio = std::max(worst_se_ratio, ratio);
      ++mc_checks;
      if (ratio > 3.0) ++mc_failures;
    }
  }

  RandomStream box_rng(601);
  double worst_box_rel = 0.0;
  for (int b = 0; b < 10; ++b) {
    Vec lo(3), hi(3);
    for (int j = 0; j < 3; ++j) {
      lo[j] = box_rng.uniform(-2.0, 0.0);
      hi[j] = lo[j] + box_rng.uniform(0.2, 2.5);
    }
    std::vector<Vec> pts;
    for (int mask = 0; mask < 8; ++mask) {
      Vec p(3);
      for (int j = 0; j < 3; ++j) p[j] = (mask >> j) & 1 ? hi[j] : lo[j];
      pts.push_back(p);
    }
    Polytope box = convex_hull(pts);
    for (int i = 0; i < 10; ++i) {
      Vec s = ball_s(box_rng, 3, 5.0);
      Complex closed = oracle::box_ft(lo, hi, s);
      double rel = std::abs(polytope_ft(box, s) - closed) /
                   std::max(std::abs(closed), 1e-6);
      worst_box_rel = std::max(worst_box_rel, rel);
    }
  }

  Outcome out;
  out.ok = mc_failures == 0 && worst_box_rel <= 1e-9;
  out.detail = "21 bodies, " + std::to_string(mc_checks) +
               " sampling checks, worst |dF|/SE " + fmt(worst_se_ratio) +
               " (limit 3); box closed form worst rel " + fmt(worst_box_rel) +
               " (limit 1e-9)";
  return out;
}

// --- criterion 2: covariogram transform equals the squared modulus ---------

Outcome covariogram_identity() {
  struct Job {
    Polytope p;
    double h;
    double tol;
  };
  std::vector<Job> jobs;
  jobs.push_back({convex_hull({v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)}),
                  0.02, 1e-3});
  jobs.push_back({convex_hull({v2(0, 0), v2(1, 0), v2(0, 1)}), 0.02, 1e-3});
  jobs.push_back({load_polytope(data_path("cube.json")), 0.05, 5e-3});
  jobs.push_back({load_polytope(data_path("tetrahedron.json")), 0.05, 5e-3});

  Outcome out;
  out.ok = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    RandomStream rng(201 + static_cast<std::uint64_t>(k));
    std::vector<Vec> ss;
    for (int i = 0; i < 10; ++i)
      ss.push_back(ball_s(rng, jobs[k].p.dim(), 3.0));
    Theorem1Report rep =
        verify_theorem1(jobs[k].p, jobs[k].h, ss, jobs[k].tol, hw_jobs());
    worst = std::max(worst, rep.max_rel_error / rep.tolerance);
    if (!rep.passed) out.ok = false;
  }
  out.detail =
      "square/triangle at h=0.02 tol 1e-3, cube/tetrahedron at h=0.05 tol "
      "5e-3, 10 random |s|<=3 each; worst error/tol " +
      fmt(worst);
  return out;
}

// --- criterion 3: cone expansion equals direct evaluation off singularities

Outcome path_equivalence(const std::vector<Polytope>& corpus) {
  RandomStream rng(301);
  double worst_rel = 0.0;
  int guard_errors = 0;
  for (const auto& p : corpus) {
    EFunction f = vertex_cone_efunction(p);
    std::vector<Vec> edges = efunction_edges(f);

    int done = 0;
    while (done < 100) {
      Vec s = ball_s(rng, 3, 3.0);
      double sn = s.norm();
      if (sn < 1e-9) continue;
      double align = std::numeric_limits<double>::infinity();
      for (const auto& e : edges)
        align = std::min(align, std::abs(e.dot(s)) / sn);
      if (align <= 1e-7) continue;  // stay 10x clear of the guard
      // The term sum is conditioned by the smallest cone denominator
      // product, so "non-singular" also means that product is not tiny.
      double min_prod = std::numeric_limits<double>::infinity();
      for (const auto& t : f.terms)
        for (const auto& c : t.coefficients) {
          double prod = 1.0;
          for (const auto& e : c.edges) prod *= std::abs(e.dot(s));
          min_prod = std::min(min_prod, prod);
        }
      if (min_prod <= 1e-4) continue;
      Complex cone = efunction_eval(f, s);
      Complex direct = polytope_ft(p, s);
      double rel = std::abs(cone - direct) /
                   std::max(std::abs(direct), 1e-6);
      worst_rel = std::max(worst_rel, rel);
      ++done;
    }

    // The near-singular guard must trip exactly at tau_sing |s|.
    const Vec& e = edges.front();
    Vec w = unit_orthogonal(rng, e);
    auto aligned_s = [&](double c) {
      return Vec(3.0 * (c * e + std::sqrt(1.0 - c * c) * w));
    };
    bool threw_below = false;
    try {
      efunction_eval(f, aligned_s(0.5 * tau_sing));
    } catch (const NearSingular&) {
      threw_below = true;
    }
    if (!threw_below) ++guard_errors;

    bool above_ok = false;
    for (int attempt = 0; attempt < 100 && !above_ok; ++attempt) {
      Vec s = aligned_s(2.0 * tau_sing);
      double clear = std::numeric_limits<double>::infinity();
      for (const auto& g : edges)
        clear = std::min(clear, std::abs(g.dot(s)) / s.norm());
      if (clear <= 1.5 * tau_sing) {  // another edge interferes; new plane
        w = unit_orthogonal(rng, e);
        continue;
      }
      try {
        efunction_eval(f, s);
        above_ok = true;
      } catch (const NearSingular&) {
        above_ok = false;
        break;
      }
    }
    if (!above_ok) ++guard_errors;
  }

  Outcome out;
  out.ok = worst_rel <= 1e-9 && guard_errors == 0;
  out.detail = std::to_string(corpus.size()) +
               " corpus bodies x 100 s, worst rel " + fmt(worst_rel) +
               " (limit 1e-9); guard trip errors " +
               std::to_string(guard_errors);
  return out;
}

// --- criterion 4: values converge approaching a singular direction ---------

Outcome singular_stability(const std::vector<Polytope>& corpus) {
  std::vector<Polytope> bodies;
  bodies.push_back(unit_cube());
  bodies.push_back(load_polytope(data_path("tetrahedron.json")));
  for (std::size_t i = 0; i < corpus.size(); i += 30)
    bodies.push_back(corpus[i]);

  RandomStream rng(401);
  int failures = 0;
  double worst_final = 0.0;
  for (const auto& p : bodies) {
    EFunction f = vertex_cone_efunction(p);
    const Vec e = efunction_edges(f).front();
    Vec w = unit_orthogonal(rng, e);
    Vec s_star = 3.0 * w;  // exactly singular for edge e

    bool threw = false;
    try {
      efunction_eval(f, s_star);
    } catch (const NearSingular&) {
      threw = true;  // the cone path refuses; the direct path takes over
    }
    Complex limit = polytope_ft(p, s_star);
    double d[3];
    const double deltas[3] = {1e-3, 1e-5, 1e-7};
    for (int k = 0; k < 3; ++k)
      d[k] = std::abs(polytope_ft(p, Vec(s_star + deltas[k] * e)) - limit);
    worst_final = std::max(worst_final, d[2]);
    if (!(threw && d[0] > d[1] && d[1] > d[2] && d[2] < 1e-6)) ++failures;
  }

  Outcome out;
  out.ok = failures == 0;
  out.detail = std::to_string(bodies.size()) +
               " bodies, offsets 1e-3/1e-5/1e-7 along a singular edge: "
               "differences shrink monotonically, final max " +
               fmt(worst_final) + " (limit 1e-6)";
  return out;
}

// --- criterion 5: randomized congruence corpus is consistent ---------------

Outcome corpus_consistency(CorpusReport* report_out) {
  CorpusConfig config;
  config.pairs = 1000;
  config.seed = 1;
  config.samples_per_patch = 200;
  config.jobs = hw_jobs();
  CorpusReport rep = run_corpus(config);
  if (report_out) *report_out = rep;

  Outcome out;
  out.ok = rep.inconsistent == 0 && rep.max_rel_diff_congruent <= 1e-7 &&
           rep.min_rel_diff_distinct >= 1e-2;
  out.detail = "1000 pairs: inconsistent " + std::to_string(rep.inconsistent) +
               ", congruent max rel " + fmt(rep.max_rel_diff_congruent) +
               " (limit 1e-7), distinct min rel " +
               fmt(rep.min_rel_diff_distinct) + " (limit 1e-2)";
  return out;
}

// --- criterion 6: squared-modulus exponents are the vertex differences -----

Outcome exponent_support_matches(const std::vector<Polytope>& corpus) {
  int mismatches = 0;
  for (const auto& p : corpus) {
    DifferenceMultiset expected = difference_multiset(p.vertices());
    DifferenceMultiset got =
        exponent_support(squared_modulus_efunction(vertex_cone_efunction(p)));
    if (!got.approx_equal(expected, tau_geom)) ++mismatches;
  }
  Outcome out;
  out.ok = mismatches == 0;
  out.detail = std::to_string(corpus.size()) +
               " corpus bodies, multiset mismatches " +
               std::to_string(mismatches);
  return out;
}

// --- criterion 7: patch condition gates ------------------------------------

Outcome patch_gates() {
  RandomStream rng(701);
  int failures = 0;
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::Vector3d c(rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1));
    RpSurface s = sphere(c, rng.uniform(0.5, 3.0));
    double lo1 = rng.uniform(0.2, 1.0);
    double lo2 = rng.uniform(-0.9, 0.0);
    PatchDomain d{{{lo1, lo1 + rng.uniform(0.3, 1.0), lo2,
                    lo2 + rng.uniform(0.3, 0.8)}}};
    if (!check_hyperplane_condition(s, d, 10).satisfied) ++failures;
    if (!check_inner_point_condition(s, d).satisfied) ++failures;
  }

  // Negative controls: a plane and a curve must fail both gates.
  auto rational = [](std::vector<Poly2::Term> num) {
    Rational2 r;
    r.num.terms = std::move(num);
    r.den = Poly2::constant(1.0);
    return r;
  };
  RpSurface planar({rational({{1, 0, 1.0}}), rational({{0, 1, 1.0}}),
                    rational({})},
                   Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero(),
                   "plane");
  RpSurface curve({rational({{0, 0, 1.0}}),
                   rational({{1, 0, 1.0}, {0, 1, 1.0}}),
                   rational({{2, 0, 1.0}, {1, 1, 2.0}, {0, 2, 1.0}})},
                  Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero(),
                  "curve");
  PatchDomain box{{{0.5, 1.5, -0.5, 0.5}}};
  int control_hits = 0;
  if (!check_hyperplane_condition(planar, box, 12).satisfied) ++control_hits;
  if (!check_inner_point_condition(planar, box).satisfied) ++control_hits;
  if (!check_hyperplane_condition(curve, box, 12).satisfied) ++control_hits;
  if (!check_inner_point_condition(curve, box).satisfied) ++control_hits;

  Outcome out;
  out.ok = failures == 0 && control_hits == 4;
  out.detail = "20 random sphere patches, gate failures " +
               std::to_string(failures) + "; negative controls rejected " +
               std::to_string(control_hits) + "/4";
  return out;
}

// --- criterion 8: CLI runs are byte-deterministic ---------------------------

int run_cli(const std::string& args) {
  std::string cmd =
      std::string(POLYFT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
#ifdef __unix__
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
#endif
  return rc;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<unreadable " + path + ">";
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

Outcome cli_determinism() {
  fs::path dir = fs::temp_directory_path() / "polyft_acceptance";
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };

  // A 2d body for the planar diffraction run.
  save_polytope(convex_hull({v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)}),
                at("square.json"));

  struct Run {
    std::string name;
    std::string args_a, args_b;
    std::vector<std::pair<std::string, std::string>> outputs;
    int expect;
  };
  std::vector<Run> runs;
  runs.push_back({"ft",
                  "ft --polytope " + data_path("cube.json") +
                      " --s 1,2,3 --s 0.5,0.25,-0.75 --out " + at("ft_a.csv") +
                      " --efunction " + at("ft_a.json"),
                  "ft --polytope " + data_path("cube.json") +
                      " --s 1,2,3 --s 0.5,0.25,-0.75 --out " + at("ft_b.csv") +
                      " --efunction " + at("ft_b.json"),
                  {{at("ft_a.csv"), at("ft_b.csv")},
                   {at("ft_a.json"), at("ft_b.json")}},
                  0});
  runs.push_back({"covariogram",
                  "covariogram --polytope " + data_path("tetrahedron.json") +
                      " --h 0.25 --out " + at("cov_a.csv") + " --text " +
                      at("cov_a.txt"),
                  "covariogram --polytope " + data_path("tetrahedron.json") +
                      " --h 0.25 --out " + at("cov_b.csv") + " --text " +
                      at("cov_b.txt"),
                  {{at("cov_a.csv"), at("cov_b.csv")},
                   {at("cov_a.txt"), at("cov_b.txt")}},
                  0});
  runs.push_back({"verify-theorem1",
                  "verify-theorem1 --polytope " + data_path("cube.json") +
                      " --h 0.2 --samples 3 --tol 0.5 --seed 3 --report " +
                      at("ver_a.json"),
                  "verify-theorem1 --polytope " + data_path("cube.json") +
                      " --h 0.2 --samples 3 --tol 0.5 --seed 3 --report " +
                      at("ver_b.json"),
                  {{at("ver_a.json"), at("ver_b.json")}},
                  0});
  runs.push_back({"diffract-3d",
                  "diffract --polytope " + data_path("cube.json") +
                      " --mode 3d --grid 12x6 --out " + at("pat_a.csv") +
                      " --pgm " + at("pat_a.pgm"),
                  "diffract --polytope " + data_path("cube.json") +
                      " --mode 3d --grid 12x6 --jobs 2 --out " +
                      at("pat_b.csv") + " --pgm " + at("pat_b.pgm"),
                  {{at("pat_a.csv"), at("pat_b.csv")},
                   {at("pat_a.pgm"), at("pat_b.pgm")}},
                  0});
  runs.push_back({"diffract-2d",
                  "diffract --polytope " + at("square.json") +
                      " --mode 2d --grid 8 --out " + at("pat2_a.csv"),
                  "diffract --polytope " + at("square.json") +
                      " --mode 2d --grid 8 --out " + at("pat2_b.csv"),
                  {{at("pat2_a.csv"), at("pat2_b.csv")}},
                  0});
  runs.push_back({"compare",
                  "compare --a " + data_path("cube.json") + " --b " +
                      data_path("tetrahedron.json") +
                      " --sphere 0,0,0,2 --patch 0.5,1.5,-0.5,0.5 --report " +
                      at("cmp_a.json"),
                  "compare --a " + data_path("cube.json") + " --b " +
                      data_path("tetrahedron.json") +
                      " --sphere 0,0,0,2 --patch 0.5,1.5,-0.5,0.5 --report " +
                      at("cmp_b.json"),
                  {{at("cmp_a.json"), at("cmp_b.json")}},
                  0});
  runs.push_back({"check-conditions",
                  "check-conditions --sphere 0,0,0,2 --patch "
                  "0.5,1.5,-0.5,0.5 --report " +
                      at("chk_a.json"),
                  "check-conditions --sphere 0,0,0,2 --patch "
                  "0.5,1.5,-0.5,0.5 --report " +
                      at("chk_b.json"),
                  {{at("chk_a.json"), at("chk_b.json")}},
                  0});
  runs.push_back({"corpus",
                  "corpus --pairs 4 --samples 50 --seed 2 --report " +
                      at("cor_a.json"),
                  "corpus --pairs 4 --samples 50 --seed 2 --jobs 2 --report " +
                      at("cor_b.json"),
                  {{at("cor_a.json"), at("cor_b.json")}},
                  0});

  std::string problems;
  for (const auto& run : runs) {
    int rc_a = run_cli(run.args_a);
    int rc_b = run_cli(run.args_b);
    if (rc_a != run.expect || rc_b != run.expect) {
      problems += " " + run.name + ":exit(" + std::to_string(rc_a) + "," +
                  std::to_string(rc_b) + ")";
      continue;
    }
    for (const auto& [a, b] : run.outputs)
      if (slurp(a) != slurp(b)) problems += " " + run.name + ":bytes";
  }

  Outcome out;
  out.ok = problems.empty();
  out.detail = std::to_string(runs.size()) +
               " subcommand invocations run twice" +
               (problems.empty() ? ", all outputs byte-identical"
                                 : "; mismatches:" + problems);
  return out;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;
  auto report = [&](int number, const char* name, const Outcome& outcome,
                    double seconds, double budget) {
    bool ok = outcome.ok && (budget <= 0.0 || seconds <= budget);
    if (!ok) ++failures;
    std::printf("%s  %d. %-38s %7.1fs  %s%s\n", ok ? "PASS" : "FAIL", number,
                name, seconds, outcome.detail.c_str(),
                (outcome.ok && !ok) ? " [over time budget]" : "");
    std::fflush(stdout);
  };
  auto timed = [&](auto&& fn) {
    auto t0 = clock::now();
    Outcome o = fn();
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    return std::pair<Outcome, double>(o, secs);
  };

  {
    auto [o, t] = timed(transform_oracles);
    report(1, "transform oracle equivalence", o, t, 120.0);
  }
  {
    auto [o, t] = timed(covariogram_identity);
    report(2, "covariogram transform identity", o, t, 300.0);
  }

  auto corpus_t0 = clock::now();
  CorpusConfig corpus_config;  // the defaults are the corpus definition
  corpus_config.pairs = 1000;
  corpus_config.seed = 1;
  std::vector<Polytope> corpus = corpus_polytopes(corpus_config);
  double corpus_gen_secs =
      std::chrono::duration<double>(clock::now() - corpus_t0).count();
  std::printf("      (corpus: %zu bodies regenerated in %.1fs)\n",
              corpus.size(), corpus_gen_secs);
  std::fflush(stdout);

  {
    auto [o, t] = timed([&] { return path_equivalence(corpus); });
    report(3, "evaluation path equivalence", o, t, 0.0);
  }
  {
    auto [o, t] = timed([&] { return singular_stability(corpus); });
    report(4, "stability near singular directions", o, t, 0.0);
  }
  {
    auto [o, t] = timed([&] { return corpus_consistency(nullptr); });
    report(5, "randomized congruence corpus", o, t, 600.0);
  }
  {
    auto [o, t] = timed([&] { return exponent_support_matches(corpus); });
    report(6, "squared-modulus exponent support", o, t, 0.0);
  }
  {
    auto [o, t] = timed(patch_gates);
    report(7, "surface patch condition gates", o, t, 0.0);
  }
  {
    auto [o, t] = timed(cli_determinism);
    report(8, "cli determinism", o, t, 0.0);
  }

  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures;
}
