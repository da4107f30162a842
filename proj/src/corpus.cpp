#include "polyft/corpus.hpp"

#include <cmath>
#include <limits>

#include "parallel.hpp"

namespace polyft {

Polytope random_polytope(RandomStream& rng, int dim, int min_points,
                         int max_points, double min_sep) {
  if (min_points < dim + 1 || max_points < min_points)
    throw std::invalid_argument("random_polytope: bad point count range");
  for (int attempt = 0; attempt < 64; ++attempt) {
    int span = max_points - min_points + 1;
    int count =
        min_points + std::min(span - 1,
                              static_cast<int>(rng.uniform() * span));
    std::vector<Vec> pts;
    int tries = 0;
    while (static_cast<int>(pts.size()) < count && tries < 10000) {
      ++tries;
      Vec p(dim);
      for (int j = 0; j < dim; ++j) p[j] = rng.gaussian();
      double norm = p.norm();
      if (norm < 1e-6) continue;
      p /= norm;
      bool ok = true;
      for (const auto& q : pts)
        if ((p - q).norm() < min_sep) {
          ok = false;
          break;
        }
      if (ok) pts.push_back(std::move(p));
    }
    if (static_cast<int>(pts.size()) < count) continue;
    try {
      return convex_hull(pts);
    } catch (const DegenerateInput&) {
      continue;  // essentially impossible for sphere points; redraw
    }
  }
  throw std::runtime_error("random_polytope: could not draw a valid hull");
}

namespace {

// Per-pair stream, independent of job scheduling.
std::uint64_t pair_seed(std::uint64_t corpus_seed, int pair) {
  return corpus_seed +
         0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(pair) + 1);
}

}  // namespace

CorpusReport run_corpus(const CorpusConfig& config) {
  CorpusReport report;
  report.pairs = config.pairs;
  report.min_rel_diff_distinct = std::numeric_limits<double>::infinity();
  report.results.resize(config.pairs);

  RpSurface surf = sphere(config.sphere_center, config.sphere_radius);

  detail::parallel_for(0, config.pairs, config.jobs, [&](int i) {
    RandomStream rng(pair_seed(config.seed, i));

    Polytope p = random_polytope(rng, 3, 6, 20);
    const bool make_congruent = i % 2 == 0;
    CorpusPairResult& r = report.results[i];
    r.congruent_pair = make_congruent;

    std::uint64_t patch_seed = pair_seed(config.seed, i) ^ 0x5DEECE66DULL;
    if (make_congruent) {
      int eps = rng.uniform() < 0.5 ? 1 : -1;
      Vec v(3);
      for (int j = 0; j < 3; ++j) v[j] = rng.gaussian() * 0.5;
      Polytope q = transform(p, eps, v);
      UniquenessReport u =
          uniqueness_experiment(p, q, surf, config.patch,
                                config.samples_per_patch, patch_seed,
                                config.tol_patch, config.tol_cong);
      r.equal_on_patch = u.patch.equal_on_patch;
      r.congruence_detected = u.congruence.congruent;
      r.consistent = u.consistent;
      r.max_rel_diff = u.patch.max_rel_diff;
    } else {
      Polytope q = random_polytope(rng, 3, 6, 20);
      UniquenessReport u =
          uniqueness_experiment(p, q, surf, config.patch,
                                config.samples_per_patch, patch_seed,
                                config.tol_patch, config.tol_cong);
      r.equal_on_patch = u.patch.equal_on_patch;
      r.congruence_detected = u.congruence.congruent;
      r.consistent = u.consistent;
      r.max_rel_diff = u.patch.max_rel_diff;
    }
  });

  for (const auto& r : report.results) {
    if (!r.consistent) ++report.inconsistent;
    if (r.congruent_pair)
      report.max_rel_diff_congruent =
          std::max(report.max_rel_diff_congruent, r.max_rel_diff);
    else
      report.min_rel_diff_distinct =
          std::min(report.min_rel_diff_distinct, r.max_rel_diff);
  }
  return report;
}

std::vector<Polytope> corpus_polytopes(const CorpusConfig& config) {
  std::vector<Polytope> bodies;
  bodies.reserve(static_cast<std::size_t>(config.pairs) * 3 / 2);
  for (int i = 0; i < config.pairs; ++i) {
    RandomStream rng(pair_seed(config.seed, i));
    bodies.push_back(random_polytope(rng, 3, 6, 20));
    if (i % 2 != 0) bodies.push_back(random_polytope(rng, 3, 6, 20));
  }
  return bodies;
}

}  // namespace polyft
