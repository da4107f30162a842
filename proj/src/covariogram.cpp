#include "polyft/covariogram.hpp"

#include <cmath>

#include "parallel.hpp"

namespace polyft {

double covariogram(const Polytope& p, const Vec& x) {
  auto shifted = transform(p, 1, x);
  auto cap = intersect(p, shifted);
  return cap ? volume(*cap) : 0.0;
}

Polytope covariogram_support(const Polytope& p) {
  const auto& verts = p.vertices();
  std::vector<Vec> diffs;
  diffs.reserve(verts.size() * verts.size());
  for (const auto& a : verts)
    for (const auto& b : verts) diffs.push_back(a - b);
  return convex_hull(diffs);
}

std::size_t CovariogramField::index(const std::vector<int>& k) const {
  std::size_t idx = 0;
  for (int j = 0; j < dim; ++j)
    idx = idx * static_cast<std::size_t>(2 * counts[j] + 1) +
          static_cast<std::size_t>(k[j] + counts[j]);
  return idx;
}

Vec CovariogramField::point(const std::vector<int>& k) const {
  Vec x(dim);
  for (int j = 0; j < dim; ++j) x[j] = step * k[j];
  return x;
}

CovariogramField sample_field(const Polytope& p, double h, int jobs) {
  if (h <= 0.0) throw std::invalid_argument("sample_field: h must be > 0");
  const int n = p.dim();
  auto [lo, hi] = p.bounding_box();

  CovariogramField field;
  field.dim = n;
  field.step = h;
  // The support of g_p is the difference body; its bounding box is the
  // symmetric box of per-axis vertex extents.  ceil() pads the lattice out to
  // the first all-zero layer.
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) {
    double extent = hi[j] - lo[j];
    int k = static_cast<int>(std::ceil(extent / h - 1e-9));
    field.counts.push_back(k);
    total *= static_cast<std::size_t>(2 * k + 1);
  }
  field.values.assign(total, 0.0);

  const int k1 = field.counts[0];
  detail::parallel_for(-k1, k1 + 1, jobs, [&](int i) {
    std::vector<int> k(n, 0);
    k[0] = i;
    if (n == 2) {
      for (k[1] = -field.counts[1]; k[1] <= field.counts[1]; ++k[1])
        field.values[field.index(k)] = covariogram(p, field.point(k));
    } else {
      for (k[1] = -field.counts[1]; k[1] <= field.counts[1]; ++k[1])
        for (k[2] = -field.counts[2]; k[2] <= field.counts[2]; ++k[2])
          field.values[field.index(k)] = covariogram(p, field.point(k));
    }
  });
  return field;
}

Complex field_ft(const CovariogramField& field, const Vec& s) {
  if (s.norm() * field.step >= 1.0)
    throw ResolutionExceeded("field_ft: |s| h >= 1, grid too coarse");
  const int n = field.dim;
  Complex sum = 0.0;
  std::vector<int> k(n, -1);
  for (int j = 0; j < n; ++j) k[j] = -field.counts[j];
  for (;;) {
    double w = 1.0;
    double theta = 0.0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(k[j]) == field.counts[j]) w *= 0.5;
      theta -= s[j] * field.step * k[j];
    }
    double g = field.values[field.index(k)];
    if (g != 0.0)
      sum += w * g * Complex(std::cos(theta), std::sin(theta));
    int j = n - 1;
    for (; j >= 0; --j) {
      if (++k[j] <= field.counts[j]) break;
      k[j] = -field.counts[j];
    }
    if (j < 0) break;
  }
  double cell = std::pow(field.step, n);
  return sum * cell;
}

Theorem1Report verify_theorem1(const Polytope& p, double h,
                               const std::vector<Vec>& s_values,
                               double tolerance, int jobs) {
  Theorem1Report report;
  report.h = h;
  report.s_values = s_values;
  report.tolerance = tolerance;

  CovariogramField field = sample_field(p, h, jobs);
  FourierEvaluator ft(p);
  for (const auto& s : s_values) {
    Complex lhs = field_ft(field, s);
    double rhs = std::norm(ft(s));
    report.lhs.push_back(lhs.real());
    report.rhs.push_back(rhs);
    report.rel_errors.push_back(std::abs(lhs.real() - rhs) / rhs);
    report.max_imag = std::max(report.max_imag, std::abs(lhs.imag()));
  }
  report.max_rel_error = 0.0;
  for (double e : report.rel_errors)
    report.max_rel_error = std::max(report.max_rel_error, e);
  report.passed = report.max_rel_error <= tolerance;
  return report;
}

}  // namespace polyft
