// Command-line front end: wires polytope files and numeric flags to the
// library modules.  Exit codes: 0 success, 1 verification failure, 2 usage or
// configuration error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyft/congruence.hpp"
#include "polyft/corpus.hpp"
#include "polyft/covariogram.hpp"
#include "polyft/diffraction.hpp"
#include "polyft/fourier.hpp"
#include "polyft/hypersurface.hpp"
#include "polyft/io.hpp"
#include "polyft/polytope.hpp"
#include "polyft/rng.hpp"

namespace {

using namespace polyft;
using ordered_json = nlohmann::ordered_json;

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "expected comma-separated numbers");
    }
  }
  return out;
}

// Uniform draw from the ball |s| <= radius.
Vec random_s(RandomStream& rng, int dim, double radius) {
  Vec dir(dim);
  double norm = 0.0;
  do {
    for (int j = 0; j < dim; ++j) dir[j] = rng.gaussian();
    norm = dir.norm();
  } while (norm < 1e-12);
  double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  return dir * (r / norm);
}

ordered_json vec_json(const Vec& v) {
  ordered_json row = ordered_json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) row.push_back(v[j]);
  return row;
}

struct FtArgs {
  std::string polytope, points, out, efunction;
  std::vector<std::string> s_values;
};

int run_ft(const FtArgs& args) {
  Polytope p = load_polytope(args.polytope);
  std::vector<Vec> ss;
  for (const auto& text : args.s_values) {
    auto vals = parse_doubles(text, "--s");
    if (static_cast<int>(vals.size()) != p.dim())
      throw CLI::ValidationError("--s", "arity does not match polytope dim");
    Vec s(p.dim());
    for (int j = 0; j < p.dim(); ++j) s[j] = vals[j];
    ss.push_back(std::move(s));
  }
  if (!args.points.empty()) {
    std::istringstream in(read_text_file(args.points));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos)
        continue;  // header or comment
      auto vals = parse_doubles(line, "--points");
      if (static_cast<int>(vals.size()) != p.dim())
        throw CLI::ValidationError("--points",
                                   "row arity does not match polytope dim");
      Vec s(p.dim());
      for (int j = 0; j < p.dim(); ++j) s[j] = vals[j];
      ss.push_back(std::move(s));
    }
  }
  if (ss.empty())
    throw CLI::ValidationError("--s", "no evaluation points given");

  FourierEvaluator ft(p);
  std::ostringstream out;
  out << (p.dim() == 2 ? "s1,s2,re,im,modulus" : "s1,s2,s3,re,im,modulus")
      << '\n';
  for (const auto& s : ss) {
    Complex v = ft(s);
    for (int j = 0; j < p.dim(); ++j) out << format_double(s[j]) << ',';
    out << format_double(v.real()) << ',' << format_double(v.imag()) << ','
        << format_double(std::abs(v)) << '\n';
  }
  write_text_file(args.out, out.str());

  if (!args.efunction.empty())
    save_efunction(vertex_cone_efunction(p), args.efunction);
  std::cout << "wrote " << ss.size() << " evaluations to " << args.out
            << "\n";
  return 0;
}

struct CovArgs {
  std::string polytope, out, text;
  double h = 0.1;
  int jobs = 1;
};

int run_covariogram(const CovArgs& args) {
  Polytope p = load_polytope(args.polytope);
  CovariogramField field = sample_field(p, args.h, args.jobs);
  if (!args.out.empty()) save_field_csv(field, args.out);
  if (!args.text.empty()) save_field_text(field, args.text);
  std::cout << "sampled covariogram field, " << field.values.size()
            << " lattice values at step " << format_double(args.h) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string polytope, report;
  double h = 0.05;
  int samples = 10;
  double tol = 5e-3;
  double smax = 3.0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int run_verify_theorem1(const VerifyArgs& args) {
  Polytope p = load_polytope(args.polytope);
  if (args.smax * args.h >= 1.0)
    throw CLI::ValidationError("--smax",
                               "resolution guard requires smax * h < 1");
  RandomStream rng(args.seed);
  std::vector<Vec> ss;
  for (int i = 0; i < args.samples; ++i)
    ss.push_back(random_s(rng, p.dim(), args.smax));

  Theorem1Report report =
      verify_theorem1(p, args.h, ss, args.tol, args.jobs);

  if (!args.report.empty()) {
    ordered_json j;
    j["polytope"] = args.polytope;
    j["h"] = report.h;
    j["tolerance"] = report.tolerance;
    j["seed"] = args.seed;
    j["samples"] = ordered_json::array();
    for (std::size_t i = 0; i < report.s_values.size(); ++i) {
      ordered_json row;
      row["s"] = vec_json(report.s_values[i]);
      row["field_ft"] = report.lhs[i];
      row["modulus_squared"] = report.rhs[i];
      row["rel_error"] = report.rel_errors[i];
      j["samples"].push_back(std::move(row));
    }
    j["max_rel_error"] = report.max_rel_error;
    j["max_imag"] = report.max_imag;
    j["passed"] = report.passed;
    write_text_file(args.report, j.dump(2) + "\n");
  }
  std::cout << (report.passed ? "PASS" : "FAIL")
            << " max relative error " << format_double(report.max_rel_error)
            << " at tolerance " << format_double(report.tolerance) << "\n";
  return report.passed ? 0 : 1;
}

struct DiffractArgs {
  std::string polytope, mode = "3d", grid = "64x64", out, pgm;
  std::string phi_range, theta_range;
  double scale = 1.0;
  int jobs = 1;
};

int run_diffract(const DiffractArgs& args) {
  Polytope p = load_polytope(args.polytope);
  GridSpec grid;
  ScatterConfig config;
  config.wavelength_scale = args.scale;

  auto x = args.grid.find('x');
  grid.n_phi = std::stoi(args.grid.substr(0, x));
  grid.n_theta = x == std::string::npos
                     ? 1
                     : std::stoi(args.grid.substr(x + 1));

  const double pi = std::numbers::pi;
  int mode = args.mode == "2d" ? 2 : args.mode == "3d" ? 3 : 0;
  if (mode == 0)
    throw CLI::ValidationError("--mode", "must be 2d or 3d");
  if (mode == 2) {
    grid.phi_lo = 0.0;
    grid.phi_hi = pi;
  } else {
    grid.phi_lo = 0.0;
    grid.phi_hi = 2.0 * pi;
    grid.theta_lo = 0.0;
    grid.theta_hi = pi / 2.0;
  }
  if (!args.phi_range.empty()) {
    auto r = parse_doubles(args.phi_range, "--phi-range");
    if (r.size() != 2)
      throw CLI::ValidationError("--phi-range", "expected a,b");
    grid.phi_lo = r[0];
    grid.phi_hi = r[1];
  }
  if (!args.theta_range.empty()) {
    auto r = parse_doubles(args.theta_range, "--theta-range");
    if (r.size() != 2)
      throw CLI::ValidationError("--theta-range", "expected a,b");
    grid.theta_lo = r[0];
    grid.theta_hi = r[1];
  }

  DiffractionPattern pat = render_pattern(p, mode, grid, config, args.jobs);
  pat.polytope_id = std::filesystem::path(args.polytope).stem().string();
  export_pattern_csv(pat, args.out);
  if (!args.pgm.empty()) export_pattern_pgm(pat, args.pgm);
  std::cout << "rendered " << pat.intensities.size() << " intensities to "
            << args.out << "\n";
  return 0;
}

struct CompareArgs {
  std::string a, b, sphere_text, patch_text, report;
  int samples = 200;
  std::uint64_t seed = 0;
  double tol_patch = 1e-7;
  double tol_cong = 1e-8;
};

int run_compare(const CompareArgs& args) {
  Polytope pa = load_polytope(args.a);
  Polytope pb = load_polytope(args.b);
  auto sph = parse_doubles(args.sphere_text, "--sphere");
  if (sph.size() != 4)
    throw CLI::ValidationError("--sphere", "expected cx,cy,cz,r");
  auto box = parse_doubles(args.patch_text, "--patch");
  if (box.size() != 4)
    throw CLI::ValidationError("--patch", "expected lo1,hi1,lo2,hi2");

  RpSurface surf = sphere({sph[0], sph[1], sph[2]}, sph[3]);
  PatchDomain domain{{{box[0], box[1], box[2], box[3]}}};

  UniquenessReport rep = uniqueness_experiment(
      pa, pb, surf, domain, args.samples, args.seed, args.tol_patch,
      args.tol_cong);

  ordered_json j;
  j["a"] = args.a;
  j["b"] = args.b;
  j["sphere"] = {{"center", {sph[0], sph[1], sph[2]}}, {"radius", sph[3]}};
  j["patch"] = {box[0], box[1], box[2], box[3]};
  j["samples"] = args.samples;
  j["seed"] = args.seed;
  j["tol_patch"] = args.tol_patch;
  j["tol_cong"] = args.tol_cong;
  j["hyperplane_condition"] = rep.hyperplane_ok;
  j["inner_point_condition"] = rep.inner_point_ok;
  ordered_json patch;
  patch["max_rel_diff"] = rep.patch.max_rel_diff;
  patch["verdict"] = rep.patch.equal_on_patch ? "equal-on-patch" : "distinct";
  patch["samples"] = ordered_json::array();
  for (std::size_t i = 0; i < rep.patch.s_values.size(); ++i) {
    ordered_json row;
    row["s"] = vec_json(rep.patch.s_values[i]);
    row["modulus_a"] = rep.patch.moduli_a[i];
    row["modulus_b"] = rep.patch.moduli_b[i];
    patch["samples"].push_back(std::move(row));
  }
  j["patch_comparison"] = std::move(patch);
  ordered_json cong;
  cong["congruent"] = rep.congruence.congruent;
  cong["eps"] = rep.congruence.eps;
  cong["shift"] = vec_json(rep.congruence.shift);
  cong["residual"] = rep.congruence.residual;
  j["congruence"] = std::move(cong);
  j["consistent"] = rep.consistent;
  write_text_file(args.report, j.dump(2) + "\n");

  std::cout << "verdict "
            << (rep.patch.equal_on_patch ? "equal-on-patch" : "distinct")
            << ", congruent " << (rep.congruence.congruent ? "yes" : "no")
            << ", consistent " << (rep.consistent ? "yes" : "no") << "\n";
  return rep.consistent ? 0 : 1;
}

struct CheckArgs {
  std::string sphere_text, patch_text, report;
  int m = 10;
};

int run_check_conditions(const CheckArgs& args) {
  auto sph = parse_doubles(args.sphere_text, "--sphere");
  if (sph.size() != 4)
    throw CLI::ValidationError("--sphere", "expected cx,cy,cz,r");
  auto box = parse_doubles(args.patch_text, "--patch");
  if (box.size() != 4)
    throw CLI::ValidationError("--patch", "expected lo1,hi1,lo2,hi2");
  RpSurface surf = sphere({sph[0], sph[1], sph[2]}, sph[3]);
  PatchDomain domain{{{box[0], box[1], box[2], box[3]}}};

  bool margin_ok = patch_avoids_first_coordinate_zero(surf, domain);
  HyperplaneConditionReport hyper =
      check_hyperplane_condition(surf, domain, args.m);
  InnerPointConditionReport inner = check_inner_point_condition(surf, domain);

  if (!args.report.empty()) {
    ordered_json j;
    j["sphere"] = {{"center", {sph[0], sph[1], sph[2]}}, {"radius", sph[3]}};
    j["patch"] = {box[0], box[1], box[2], box[3]};
    j["first_coordinate_margin_ok"] = margin_ok;
    j["hyperplane_condition"] = {{"satisfied", hyper.satisfied},
                                 {"affine_rank", hyper.affine_rank},
                                 {"linear_rank", hyper.linear_rank},
                                 {"singular_value_ratio",
                                  hyper.smallest_ratio}};
    j["inner_point_condition"] = {
        {"satisfied", inner.satisfied},
        {"best_jacobian_ratio", inner.best_ratio},
        {"witness", {inner.witness[0], inner.witness[1]}}};
    write_text_file(args.report, j.dump(2) + "\n");
  }
  std::cout << "hyperplane condition "
            << (hyper.satisfied ? "satisfied" : "violated")
            << " (affine rank " << hyper.affine_rank << ", linear rank "
            << hyper.linear_rank << "), inner point condition "
            << (inner.satisfied ? "satisfied" : "violated") << "\n";
  return hyper.satisfied && inner.satisfied && margin_ok ? 0 : 1;
}

struct CorpusArgs {
  std::string report;
  int pairs = 1000;
  std::uint64_t seed = 1;
  int samples = 200;
  int jobs = 1;
};

int run_corpus_cmd(const CorpusArgs& args) {
  CorpusConfig config;
  config.pairs = args.pairs;
  config.seed = args.seed;
  config.samples_per_patch = args.samples;
  config.jobs = args.jobs;
  CorpusReport rep = run_corpus(config);

  if (!args.report.empty()) {
    ordered_json j;
    j["pairs"] = rep.pairs;
    j["seed"] = args.seed;
    j["samples_per_patch"] = args.samples;
    j["inconsistent"] = rep.inconsistent;
    j["max_rel_diff_congruent"] = rep.max_rel_diff_congruent;
    j["min_rel_diff_distinct"] = rep.min_rel_diff_distinct;
    j["results"] = ordered_json::array();
    for (const auto& r : rep.results) {
      ordered_json row;
      row["constructed_congruent"] = r.congruent_pair;
      row["equal_on_patch"] = r.equal_on_patch;
      row["congruence_detected"] = r.congruence_detected;
      row["consistent"] = r.consistent;
      row["max_rel_diff"] = r.max_rel_diff;
      j["results"].push_back(std::move(row));
    }
    write_text_file(args.report, j.dump(2) + "\n");
  }
  std::cout << "corpus " << rep.pairs << " pairs, inconsistent "
            << rep.inconsistent << ", congruent max_rel_diff "
            << format_double(rep.max_rel_diff_congruent)
            << ", distinct min_rel_diff "
            << format_double(rep.min_rel_diff_distinct) << "\n";
  return rep.inconsistent == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fourier transforms, covariograms, and diffraction "
               "patterns of convex polytopes"};
  app.require_subcommand(1);
  // --h is a real option on some subcommands, so the help flag is long-only.
  app.set_help_flag("--help", "print help and exit");

  auto add_sub = [&app](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help and exit");
    return sub;
  };

  FtArgs ft_args;
  auto* ft = add_sub(
      "ft", "Evaluate the polytope Fourier transform at given s points");
  ft->add_option("--polytope", ft_args.polytope, "polytope JSON file")
      ->required();
  ft->add_option("--s", ft_args.s_values,
                 "evaluation point s1,s2[,s3] (repeatable)");
  ft->add_option("--points", ft_args.points,
                 "CSV file of evaluation points, one s per row");
  ft->add_option("--out", ft_args.out, "output CSV (s,re,im,modulus rows)")
      ->required();
  ft->add_option("--efunction", ft_args.efunction,
                 "also write the vertex-cone EFunction as JSON");

  CovArgs cov_args;
  auto* cov = add_sub(
      "covariogram", "Sample the covariogram field on a lattice");
  cov->add_option("--polytope", cov_args.polytope, "polytope JSON file")
      ->required();
  cov->add_option("--h", cov_args.h, "lattice spacing")
      ->capture_default_str();
  cov->add_option("--out", cov_args.out, "output CSV (x,value rows)");
  cov->add_option("--text", cov_args.text, "output text field (golden format)");
  cov->add_option("--jobs", cov_args.jobs, "worker threads")
      ->capture_default_str();

  VerifyArgs ver_args;
  auto* ver = add_sub(
      "verify-theorem1",
      "Cross-check the covariogram transform against the squared FT modulus");
  ver->add_option("--polytope", ver_args.polytope, "polytope JSON file")
      ->required();
  ver->add_option("--h", ver_args.h, "lattice spacing")
      ->capture_default_str();
  ver->add_option("--samples", ver_args.samples, "number of random s values")
      ->capture_default_str();
  ver->add_option("--tol", ver_args.tol, "relative error tolerance")
      ->capture_default_str();
  ver->add_option("--smax", ver_args.smax, "max |s| of random samples")
      ->capture_default_str();
  ver->add_option("--seed", ver_args.seed, "random seed")
      ->capture_default_str();
  ver->add_option("--jobs", ver_args.jobs, "worker threads")
      ->capture_default_str();
  ver->add_option("--report", ver_args.report, "write JSON report here");

  DiffractArgs dif_args;
  auto* dif = add_sub(
      "diffract", "Render a diffraction pattern over an angular grid");
  dif->add_option("--polytope", dif_args.polytope, "polytope JSON file")
      ->required();
  dif->add_option("--mode", dif_args.mode, "2d or 3d")->capture_default_str();
  dif->add_option("--grid", dif_args.grid, "N (2d) or NxM (3d, phi x theta)")
      ->capture_default_str();
  dif->add_option("--phi-range", dif_args.phi_range,
                  "a,b (default 0,pi for 2d; 0,2pi for 3d)");
  dif->add_option("--theta-range", dif_args.theta_range,
                  "a,b (default 0,pi/2)");
  dif->add_option("--out", dif_args.out, "output CSV")->required();
  dif->add_option("--pgm", dif_args.pgm, "optional 16-bit PGM image");
  dif->add_option("--scale", dif_args.scale,
                  "wavelength scale applied to scattering vectors")
      ->capture_default_str();
  dif->add_option("--jobs", dif_args.jobs, "worker threads")
      ->capture_default_str();

  CompareArgs cmp_args;
  auto* cmp = add_sub(
      "compare",
      "Compare Fourier moduli of two polytopes on a sphere patch and decide "
      "congruence");
  cmp->add_option("--a", cmp_args.a, "first polytope JSON")->required();
  cmp->add_option("--b", cmp_args.b, "second polytope JSON")->required();
  cmp->add_option("--sphere", cmp_args.sphere_text, "cx,cy,cz,r")
      ->required();
  cmp->add_option("--patch", cmp_args.patch_text,
                  "parameter box lo1,hi1,lo2,hi2")
      ->required();
  cmp->add_option("--samples", cmp_args.samples, "patch sample count")
      ->capture_default_str();
  cmp->add_option("--seed", cmp_args.seed, "random seed")
      ->capture_default_str();
  cmp->add_option("--tol-patch", cmp_args.tol_patch,
                  "relative modulus tolerance")
      ->capture_default_str();
  cmp->add_option("--tol-cong", cmp_args.tol_cong, "vertex match tolerance")
      ->capture_default_str();
  cmp->add_option("--report", cmp_args.report, "output JSON report")
      ->required();

  CheckArgs chk_args;
  auto* chk = add_sub(
      "check-conditions",
      "Check the hyperplane and inner-point conditions on a sphere patch");
  chk->add_option("--sphere", chk_args.sphere_text, "cx,cy,cz,r")->required();
  chk->add_option("--patch", chk_args.patch_text,
                  "parameter box lo1,hi1,lo2,hi2")
      ->required();
  chk->add_option("--m", chk_args.m, "hyperplane-condition sample count")
      ->capture_default_str();
  chk->add_option("--report", chk_args.report, "output JSON report");

  CorpusArgs cor_args;
  auto* cor = add_sub(
      "corpus",
      "Run the randomized congruence/uniqueness corpus experiment");
  cor->add_option("--pairs", cor_args.pairs, "number of polytope pairs")
      ->capture_default_str();
  cor->add_option("--seed", cor_args.seed, "random seed")
      ->capture_default_str();
  cor->add_option("--samples", cor_args.samples, "patch samples per pair")
      ->capture_default_str();
  cor->add_option("--jobs", cor_args.jobs, "worker threads")
      ->capture_default_str();
  cor->add_option("--report", cor_args.report, "output JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (ft->parsed()) return run_ft(ft_args);
    if (cov->parsed()) return run_covariogram(cov_args);
    if (ver->parsed()) return run_verify_theorem1(ver_args);
    if (dif->parsed()) return run_diffract(dif_args);
    if (cmp->parsed()) return run_compare(cmp_args);
    if (chk->parsed()) return run_check_conditions(chk_args);
    if (cor->parsed()) return run_corpus_cmd(cor_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
