#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyft/hypersurface.hpp"
#include "polyft/polytope.hpp"
#include "polyft/types.hpp"

namespace polyft {

// Certificate for q = eps * p + v (vertex sets matched bijectively).
struct CongruenceResult {
  bool congruent = false;
  int eps = 0;            // +1 or -1 when congruent
  Vec shift;              // v when congruent
  double residual = 0.0;  // max vertex mismatch of the best candidate
};

// Decides strong congruence by centroid-aligned matching for eps = +1, -1.
CongruenceResult strong_congruence(const Polytope& p, const Polytope& q,
                                   double tol = 1e-8);

// Comparison of Fourier moduli |F_p| and |F_q| on scattering vectors drawn
// from a surface patch.
struct PatchComparison {
  std::vector<Vec> s_values;
  std::vector<double> moduli_a;
  std::vector<double> moduli_b;
  double max_rel_diff = 0.0;   // denominator max(|F_p|, 1e-300)
  bool equal_on_patch = false;
  double tolerance = 0.0;
};

PatchComparison compare_moduli_on_patch(const Polytope& p, const Polytope& q,
                                        const RpSurface& surf,
                                        const PatchDomain& domain, int count,
                                        std::uint64_t seed,
                                        double tol = 1e-7);

enum class Theorem5Verdict {
  congruent_by_difference_set,  // V' - V' == V - V in general position
  difference_sets_differ,
  not_general_position,
};

// Difference-multiset test for vertex sets in general position.
Theorem5Verdict theorem5_decision(const std::vector<Vec>& v,
                                  const std::vector<Vec>& v_prime,
                                  double tol = 1e-8);

// One run of the uniqueness experiment: patch comparison plus congruence
// check plus the consistency bit (equal moduli on a valid patch must not
// occur for incongruent bodies).
struct UniquenessReport {
  bool hyperplane_ok = false;
  bool inner_point_ok = false;
  PatchComparison patch;
  CongruenceResult congruence;
  bool consistent = false;
};

UniquenessReport uniqueness_experiment(const Polytope& p, const Polytope& q,
                                       const RpSurface& surf,
                                       const PatchDomain& domain, int count,
                                       std::uint64_t seed,
                                       double tol_patch = 1e-7,
                                       double tol_cong = 1e-8);

}  // namespace polyft
