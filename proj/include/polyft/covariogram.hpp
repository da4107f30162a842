#pragma once

#include <string>
#include <vector>

#include "polyft/fourier.hpp"
#include "polyft/polytope.hpp"
#include "polyft/types.hpp"

namespace polyft {

// g_p(x) = vol(p intersect (p + x)); 0 when the shifted copy misses p.
double covariogram(const Polytope& p, const Vec& x);

// Support of g_p: the difference body p - p (hull of vertex differences).
Polytope covariogram_support(const Polytope& p);

// Covariogram sampled on the symmetric lattice h * k, |k_j| <= counts[j],
// covering the support box.  Values are stored with k_n fastest.
struct CovariogramField {
  int dim = 0;
  double step = 0.0;
  std::vector<int> counts;      // K_j: indices run -K_j .. K_j
  std::vector<double> values;   // (2K_1+1) * ... * (2K_n+1) entries

  std::size_t index(const std::vector<int>& k) const;
  Vec point(const std::vector<int>& k) const;
};

CovariogramField sample_field(const Polytope& p, double h, int jobs = 1);

// Trapezoid transform of a sampled field: sum_k w_k g(x_k) e^{-i s.x_k} h^n
// with half weights on the boundary layers.  Throws ResolutionExceeded when
// |s| h >= 1.
Complex field_ft(const CovariogramField& field, const Vec& s);

// Checks field_ft(sample_field(p, h)) against |polytope_ft(p, s)|^2 on a set
// of s values: the convolution identity for g_p = chi_p * chi_-p.
struct Theorem1Report {
  double h = 0.0;
  std::vector<Vec> s_values;
  std::vector<double> lhs;         // Re field_ft (imaginary part ~ 0)
  std::vector<double> rhs;         // |F_p|^2
  std::vector<double> rel_errors;  // |lhs - rhs| / rhs
  double max_rel_error = 0.0;
  double max_imag = 0.0;
  bool passed = false;
  double tolerance = 0.0;
};

Theorem1Report verify_theorem1(const Polytope& p, double h,
                               const std::vector<Vec>& s_values,
                               double tolerance, int jobs = 1);

}  // namespace polyft
