#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace polyft {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Tolerances assume model units: coordinates of order one.  They are shared
// across modules so that equality decisions made in one place (hull merging,
// multiset comparison, singularity guards) stay consistent everywhere.
inline constexpr double tau_geom = 1e-9;   // vertex merge / coplanarity
inline constexpr double tau_ang = 1e-9;    // parallelism of difference vectors
inline constexpr double tau_sing = 1e-8;   // normalized |edge . s| singularity guard
inline constexpr double tau_rank = 1e-6;   // singular value ratio for rank decisions
inline constexpr double tau_patch = 1e-6;  // margin keeping sigma_1 away from zero

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace polyft
