#include "polyft/congruence.hpp"

#include <algorithm>
#include <cmath>

#include "polyft/fourier.hpp"

namespace polyft {

namespace {

Vec vertex_mean(const std::vector<Vec>& pts) {
  Vec c = Vec::Zero(pts[0].size());
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

// Greedy nearest-neighbour matching of eps * a + v against b, one target per
// source.  Returns the max match distance (infinity when sizes differ).
double match_point_sets(const std::vector<Vec>& a, const std::vector<Vec>& b,
                        int eps, const Vec& v) {
  if (a.size() != b.size())
    return std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (const auto& x : a) {
    Vec m = eps * x + v;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = (m - b[j]).norm();
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

struct PointSetCongruence {
  bool congruent = false;
  int eps = 0;
  Vec shift;
  double residual = 0.0;
};

// The vertex mean is equivariant under x -> eps x + v, so each eps admits
// exactly one candidate shift.
PointSetCongruence point_set_congruence(const std::vector<Vec>& a,
                                        const std::vector<Vec>& b,
                                        double tol) {
  PointSetCongruence result;
  result.residual = std::numeric_limits<double>::infinity();
  if (a.size() != b.size() || a.empty()) return result;
  Vec ca = vertex_mean(a);
  Vec cb = vertex_mean(b);
  for (int eps : {1, -1}) {
    Vec v = cb - eps * ca;
    double r = match_point_sets(a, b, eps, v);
    if (r < result.residual) {
      result.residual = r;
      result.eps = eps;
      result.shift = v;
    }
    if (r <= tol) {
      result.congruent = true;
      result.eps = eps;
      result.shift = v;
      result.residual = r;
      return result;
    }
  }
  return result;
}

}  // namespace

CongruenceResult strong_congruence(const Polytope& p, const Polytope& q,
                                   double tol) {
  CongruenceResult out;
  out.shift = Vec::Zero(p.dim());
  if (p.dim() != q.dim()) return out;
  PointSetCongruence r = point_set_congruence(p.vertices(), q.vertices(), tol);
  out.congruent = r.congruent;
  out.eps = r.eps;
  if (r.eps != 0) out.shift = r.shift;
  out.residual = std::isfinite(r.residual) ? r.residual : -1.0;
  return out;
}

PatchComparison compare_moduli_on_patch(const Polytope& p, const Polytope& q,
                                        const RpSurface& surf,
                                        const PatchDomain& domain, int count,
                                        std::uint64_t seed, double tol) {
  if (count < 1)
    throw std::invalid_argument("compare_moduli_on_patch: count must be >= 1");
  PatchComparison out;
  out.tolerance = tol;
  FourierEvaluator fp(p), fq(q);
  for (const auto& x : sample_patch(surf, domain, count, seed)) {
    Vec s = make_vec({x[0], x[1], x[2]});
    double ma = std::abs(fp(s));
    double mb = std::abs(fq(s));
    out.s_values.push_back(s);
    out.moduli_a.push_back(ma);
    out.moduli_b.push_back(mb);
    double rel = std::abs(ma - mb) / std::max(ma, 1e-300);
    out.max_rel_diff = std::max(out.max_rel_diff, rel);
  }
  out.equal_on_patch = out.max_rel_diff <= tol;
  return out;
}

Theorem5Verdict theorem5_decision(const std::vector<Vec>& v,
                                  const std::vector<Vec>& v_prime,
                                  double tol) {
  if (v.empty() || v_prime.empty())
    throw std::invalid_argument("theorem5_decision: empty point list");
  if (!general_position_check(v) || !general_position_check(v_prime))
    return Theorem5Verdict::not_general_position;

  DifferenceMultiset dv = difference_multiset(v);
  DifferenceMultiset dvp = difference_multiset(v_prime);
  if (!dv.approx_equal(dvp, tol))
    return Theorem5Verdict::difference_sets_differ;

  // Equal difference multisets in general position force congruence of the
  // point sets; a mismatch here indicts the numerics, not the statement.
  PointSetCongruence c = point_set_congruence(v, v_prime, std::max(tol, 1e-8));
  if (!c.congruent)
    throw std::logic_error(
        "theorem5_decision: equal difference sets without point congruence");
  return Theorem5Verdict::congruent_by_difference_set;
}

UniquenessReport uniqueness_experiment(const Polytope& p, const Polytope& q,
                                       const RpSurface& surf,
                                       const PatchDomain& domain, int count,
                                       std::uint64_t seed, double tol_patch,
                                       double tol_cong) {
  UniquenessReport report;
  report.hyperplane_ok =
      check_hyperplane_condition(surf, domain, 10).satisfied;
  report.inner_point_ok = check_inner_point_condition(surf, domain).satisfied;
  report.patch =
      compare_moduli_on_patch(p, q, surf, domain, count, seed, tol_patch);
  report.congruence = strong_congruence(p, q, tol_cong);
  const bool patch_valid = report.hyperplane_ok && report.inner_point_ok;
  report.consistent = !(patch_valid && report.patch.equal_on_patch &&
                        !report.congruence.congruent);
  return report;
}

}  // namespace polyft
