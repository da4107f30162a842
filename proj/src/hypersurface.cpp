#include "polyft/hypersurface.hpp"

#include <algorithm>
#include <cmath>

namespace polyft {

double Poly2::eval(double t1, double t2) const {
  double sum = 0.0;
  for (const auto& term : terms) {
    double v = term.c;
    for (int k = 0; k < term.i; ++k) v *= t1;
    for (int k = 0; k < term.j; ++k) v *= t2;
    sum += v;
  }
  return sum;
}

Poly2 Poly2::constant(double c) { return Poly2{{{0, 0, c}}}; }

double Rational2::eval(double t1, double t2) const {
  return num.eval(t1, t2) / den.eval(t1, t2);
}

double PatchDomain::area() const {
  double a = 0.0;
  for (const auto& b : boxes) a += (b.hi1 - b.lo1) * (b.hi2 - b.lo2);
  return a;
}

bool PatchDomain::contains(double t1, double t2) const {
  for (const auto& b : boxes)
    if (t1 > b.lo1 && t1 < b.hi1 && t2 > b.lo2 && t2 < b.hi2) return true;
  return false;
}

RpSurface::RpSurface(std::array<Rational2, 3> components, Eigen::Matrix3d a,
                     Eigen::Vector3d b, std::string description)
    : components_(std::move(components)),
      a_(std::move(a)),
      b_(std::move(b)),
      description_(std::move(description)) {}

Eigen::Vector3d RpSurface::eval(double t1, double t2) const {
  Eigen::Vector3d r(components_[0].eval(t1, t2), components_[1].eval(t1, t2),
                    components_[2].eval(t1, t2));
  return a_ * r + b_;
}

double RpSurface::first_coordinate(double t1, double t2) const {
  return eval(t1, t2)[0];
}

Eigen::Vector2d RpSurface::normalized(double t1, double t2) const {
  Eigen::Vector3d s = eval(t1, t2);
  if (std::abs(s[0]) <= tau_patch)
    throw FirstCoordinateVanishes("normalized map: first coordinate within "
                                  "tau_patch of zero");
  return {s[1] / s[0], s[2] / s[0]};
}

Eigen::Vector3d unit_sphere_param(double t1, double t2) {
  double d1 = 1.0 + t1 * t1;
  double d2 = 1.0 + t2 * t2;
  return {2.0 * t1 / d1 * (1.0 - t2 * t2) / d2, 2.0 * t1 / d1 * 2.0 * t2 / d2,
          (1.0 - t1 * t1) / d1};
}

RpSurface sphere(const Eigen::Vector3d& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("sphere: radius must be > 0");
  // x1 = 2 t1 (1 - t2^2) / ((1+t1^2)(1+t2^2))
  Rational2 x1{Poly2{{{1, 0, 2.0}, {1, 2, -2.0}}},
               Poly2{{{0, 0, 1.0}, {2, 0, 1.0}, {0, 2, 1.0}, {2, 2, 1.0}}}};
  // x2 = 4 t1 t2 / ((1+t1^2)(1+t2^2))
  Rational2 x2{Poly2{{{1, 1, 4.0}}},
               Poly2{{{0, 0, 1.0}, {2, 0, 1.0}, {0, 2, 1.0}, {2, 2, 1.0}}}};
  // x3 = (1 - t1^2) / (1 + t1^2)
  Rational2 x3{Poly2{{{0, 0, 1.0}, {2, 0, -1.0}}},
               Poly2{{{0, 0, 1.0}, {2, 0, 1.0}}}};
  Eigen::Matrix3d a = radius * Eigen::Matrix3d::Identity();
  std::string desc = "sphere center (" + std::to_string(center[0]) + ", " +
                     std::to_string(center[1]) + ", " +
                     std::to_string(center[2]) + ") radius " +
                     std::to_string(radius) + ", domain t1 > 0";
  return RpSurface({x1, x2, x3}, a, center, desc);
}

namespace {

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double x = 0.0;
  while (i > 0) {
    x += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return x;
}

}  // namespace

std::vector<Eigen::Vector2d> sample_patch_params(const PatchDomain& domain,
                                                 int count,
                                                 std::uint64_t seed) {
  if (count < 1)
    throw std::invalid_argument("sample_patch: count must be >= 1");
  if (domain.boxes.empty())
    throw std::invalid_argument("sample_patch: empty domain");

  // Largest-remainder split of the budget across boxes by area.
  const double total = domain.area();
  std::vector<int> quota(domain.boxes.size(), 0);
  std::vector<std::pair<double, std::size_t>> fractions;
  int assigned = 0;
  for (std::size_t b = 0; b < domain.boxes.size(); ++b) {
    const auto& box = domain.boxes[b];
    double share = count * (box.hi1 - box.lo1) * (box.hi2 - box.lo2) / total;
    quota[b] = static_cast<int>(share);
    assigned += quota[b];
    fractions.emplace_back(-(share - quota[b]), b);
  }
  std::sort(fractions.begin(), fractions.end());
  for (int r = 0; r < count - assigned; ++r)
    quota[fractions[static_cast<std::size_t>(r) % fractions.size()].second]++;

  std::vector<Eigen::Vector2d> out;
  out.reserve(count);
  std::uint64_t idx = 1 + seed * 7919;  // distinct streams per seed
  for (std::size_t b = 0; b < domain.boxes.size(); ++b) {
    const auto& box = domain.boxes[b];
    for (int i = 0; i < quota[b]; ++i, ++idx) {
      double u = radical_inverse(idx, 2);
      double v = radical_inverse(idx, 3);
      out.emplace_back(box.lo1 + u * (box.hi1 - box.lo1),
                       box.lo2 + v * (box.hi2 - box.lo2));
    }
  }
  return out;
}

std::vector<Eigen::Vector3d> sample_patch(const RpSurface& surf,
                                          const PatchDomain& domain, int count,
                                          std::uint64_t seed) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(count);
  for (const auto& t : sample_patch_params(domain, count, seed))
    out.push_back(surf.eval(t[0], t[1]));
  return out;
}

bool patch_avoids_first_coordinate_zero(const RpSurface& surf,
                                        const PatchDomain& domain) {
  constexpr int grid = 32;
  for (const auto& b : domain.boxes) {
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        double t1 = b.lo1 + (i + 0.5) * (b.hi1 - b.lo1) / grid;
        double t2 = b.lo2 + (j + 0.5) * (b.hi2 - b.lo2) / grid;
        if (std::abs(surf.first_coordinate(t1, t2)) <= tau_patch) return false;
      }
  }
  return true;
}

HyperplaneConditionReport check_hyperplane_condition(const RpSurface& surf,
                                                     const PatchDomain& domain,
                                                     int m) {
  if (m < 4)
    throw std::invalid_argument(
        "check_hyperplane_condition: need at least n + 1 = 4 samples");
  auto params = sample_patch_params(domain, m, 0);
  Eigen::MatrixXd x(m, 3);
  for (int i = 0; i < m; ++i) {
    Eigen::Vector3d p = surf.eval(params[i][0], params[i][1]);
    x.row(i) = p.transpose();
  }

  auto rank_of = [](const Eigen::MatrixXd& mat, double* ratio) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
    const auto& sv = svd.singularValues();
    double top = sv[0];
    if (ratio) *ratio = top > 0.0 ? sv[sv.size() - 1] / top : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > tau_rank * top) ++rank;
    return rank;
  };

  HyperplaneConditionReport report;
  Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  report.affine_rank = rank_of(centered, &report.smallest_ratio);
  report.linear_rank = rank_of(x, nullptr);
  report.satisfied = report.affine_rank == 3;
  return report;
}

InnerPointConditionReport check_inner_point_condition(
    const RpSurface& surf, const PatchDomain& domain) {
  if (domain.boxes.empty())
    throw std::invalid_argument("check_inner_point_condition: empty domain");
  constexpr double fd_step = 1e-5;
  auto params = sample_patch_params(domain, 25, 1);

  InnerPointConditionReport report;
  for (const auto& t : params) {
    const double stencil[4][2] = {{t[0] + fd_step, t[1]},
                                  {t[0] - fd_step, t[1]},
                                  {t[0], t[1] + fd_step},
                                  {t[0], t[1] - fd_step}};
    bool usable = true;
    Eigen::Vector2d vals[4];
    for (int k = 0; k < 4 && usable; ++k) {
      if (!domain.contains(stencil[k][0], stencil[k][1])) usable = false;
      else if (std::abs(surf.first_coordinate(stencil[k][0], stencil[k][1])) <=
               tau_patch)
        usable = false;
      else
        vals[k] = surf.normalized(stencil[k][0], stencil[k][1]);
    }
    if (!usable) continue;

    Eigen::Matrix2d jac;
    jac.col(0) = (vals[0] - vals[1]) / (2.0 * fd_step);
    jac.col(1) = (vals[2] - vals[3]) / (2.0 * fd_step);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(jac);
    double top = svd.singularValues()[0];
    double ratio = top > 0.0 ? svd.singularValues()[1] / top : 0.0;
    if (ratio > report.best_ratio) {
      report.best_ratio = ratio;
      report.witness = t;
    }
  }
  report.satisfied = report.best_ratio > tau_rank;
  return report;
}

}  // namespace polyft
