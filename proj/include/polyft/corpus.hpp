#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyft/congruence.hpp"
#include "polyft/polytope.hpp"
#include "polyft/rng.hpp"

namespace polyft {

// Hull of random unit-sphere points, count drawn from [min_points,
// max_points]; points are redrawn until pairwise distances exceed min_sep,
// which keeps the hulls away from tolerance-stressing degeneracies.
Polytope random_polytope(RandomStream& rng, int dim, int min_points,
                         int max_points, double min_sep = 0.1);

struct CorpusConfig {
  int pairs = 1000;
  std::uint64_t seed = 1;
  int samples_per_patch = 200;
  int jobs = 1;
  double tol_patch = 1e-7;
  double tol_cong = 1e-8;
  // Sphere and patch for the scattering-modulus comparison.
  Eigen::Vector3d sphere_center = Eigen::Vector3d::Zero();
  double sphere_radius = 2.0;
  PatchDomain patch{{{0.5, 1.5, -0.5, 0.5}}};
};

struct CorpusPairResult {
  bool congruent_pair = false;  // constructed as eps p + v
  bool equal_on_patch = false;
  bool congruence_detected = false;
  bool consistent = false;
  double max_rel_diff = 0.0;
};

struct CorpusReport {
  int pairs = 0;
  int inconsistent = 0;
  // Patch-moduli separation observed across the corpus.
  double max_rel_diff_congruent = 0.0;  // sits near roundoff
  double min_rel_diff_distinct = 0.0;   // sits many orders higher
  std::vector<CorpusPairResult> results;
};

// Alternates constructed-congruent pairs (random eps, shift) with independent
// pairs and runs the uniqueness experiment on each.  Deterministic for a
// fixed seed, any job count.
CorpusReport run_corpus(const CorpusConfig& config);

// The distinct bodies behind run_corpus with this config: the base hull of
// every pair plus the independent partner of odd pairs (even partners are
// congruent copies of their base).  Order follows the pair index.
std::vector<Polytope> corpus_polytopes(const CorpusConfig& config);

}  // namespace polyft
