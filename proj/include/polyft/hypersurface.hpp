#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polyft/errors.hpp"
#include "polyft/types.hpp"

namespace polyft {

// Sparse bivariate polynomial sum c t1^i t2^j.
struct Poly2 {
  struct Term {
    int i = 0;
    int j = 0;
    double c = 0.0;
  };
  std::vector<Term> terms;

  double eval(double t1, double t2) const;

  static Poly2 constant(double c);
};

struct Rational2 {
  Poly2 num;
  Poly2 den;

  double eval(double t1, double t2) const;
};

// Axis-aligned open box in parameter space, optionally several per domain.
struct PatchDomain {
  struct Box {
    double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
  };
  std::vector<Box> boxes;

  double area() const;
  bool contains(double t1, double t2) const;
};

// Rationally parameterized surface patch in R^3: an affine image
// t -> A r(t) + b of componentwise-rational r.  Supports curves and constant
// maps as degenerate members (negative controls for the rank conditions).
class RpSurface {
 public:
  RpSurface(std::array<Rational2, 3> components, Eigen::Matrix3d a,
            Eigen::Vector3d b, std::string description);

  Eigen::Vector3d eval(double t1, double t2) const;
  double first_coordinate(double t1, double t2) const;

  // sigma_hat = (sigma_2 / sigma_1, sigma_3 / sigma_1); throws
  // FirstCoordinateVanishes when |sigma_1| <= tau_patch.
  Eigen::Vector2d normalized(double t1, double t2) const;

  const std::string& description() const { return description_; }

 private:
  std::array<Rational2, 3> components_;
  Eigen::Matrix3d a_;
  Eigen::Vector3d b_;
  std::string description_;
};

// Rational parameterization of the unit sphere minus a meridian segment,
// domain t1 > 0:
//   x1 = 2 t1 (1 - t2^2) / ((1 + t1^2)(1 + t2^2))
//   x2 = 4 t1 t2 / ((1 + t1^2)(1 + t2^2))
//   x3 = (1 - t1^2) / (1 + t1^2)
Eigen::Vector3d unit_sphere_param(double t1, double t2);

// Sphere of radius r around c as an RpSurface (affine image of the above).
RpSurface sphere(const Eigen::Vector3d& center, double radius);

// Low-discrepancy parameter samples (Halton 2,3) in the domain, area-weighted
// across boxes.  Same seed, same list.
std::vector<Eigen::Vector2d> sample_patch_params(const PatchDomain& domain,
                                                 int count,
                                                 std::uint64_t seed);

// Surface points sigma(t) at low-discrepancy parameters.
std::vector<Eigen::Vector3d> sample_patch(const RpSurface& surf,
                                          const PatchDomain& domain, int count,
                                          std::uint64_t seed);

// True when every coarse-grid sample of the domain keeps |sigma_1| above
// tau_patch, i.e. the normalized map is defined on the whole patch.
bool patch_avoids_first_coordinate_zero(const RpSurface& surf,
                                        const PatchDomain& domain);

struct HyperplaneConditionReport {
  int affine_rank = 0;       // rank of centered samples
  int linear_rank = 0;       // rank of raw samples
  double smallest_ratio = 0.0;  // min/max singular value, centered
  bool satisfied = false;    // affine_rank == 3: no hyperplane through patch
};

// Samples m >= 4 surface points and rank-tests them: satisfied when the
// patch does not fit inside any plane (affine) -- the report also carries the
// linear rank for patches near the origin.
HyperplaneConditionReport check_hyperplane_condition(const RpSurface& surf,
                                                     const PatchDomain& domain,
                                                     int m);

struct InnerPointConditionReport {
  bool satisfied = false;
  double best_ratio = 0.0;       // largest sigma_min/sigma_max seen
  Eigen::Vector2d witness = Eigen::Vector2d::Zero();
};

// Searches the patch for a point where the Jacobian of the normalized map has
// full rank 2 (central differences, step 1e-5, ratio threshold tau_rank).
InnerPointConditionReport check_inner_point_condition(const RpSurface& surf,
                                                      const PatchDomain& domain);

}  // namespace polyft
