#pragma once

#include <string>
#include <vector>

#include "polyft/errors.hpp"
#include "polyft/polytope.hpp"
#include "polyft/types.hpp"

namespace polyft {

// Angular exclusions and the wavelength scale applied to every scattering
// vector.  Defaults: guard band 1e-6 around each excluded value, phi = pi/2
// excluded in 2D (beam direction), theta = 0 excluded in 3D.
struct ScatterConfig {
  double guard = 1e-6;
  double wavelength_scale = 1.0;
  std::vector<double> extra_excluded_phi;    // 2D only
  std::vector<double> extra_excluded_theta;  // 3D only
};

// 2D elastic scattering with incoming beam (0, 1):
//   q(phi) = scale * (cos phi, sin phi - 1),  phi in (0, pi) \ {pi/2}.
// |q/scale + (0,1)| = 1 always.  Throws ExcludedAngle outside the domain.
Eigen::Vector2d scattering_vector_2d(double phi,
                                     const ScatterConfig& config = {});

// 3D elastic scattering with incoming beam (0, 0, 1), outgoing directions on
// the upper hemisphere:
//   q(phi, theta) = scale * (sin t cos p, sin t sin p, cos t - 1),
//   theta in (0, pi/2], phi in [0, 2 pi).
Eigen::Vector3d scattering_vector_3d(double phi, double theta,
                                     const ScatterConfig& config = {});

// Diffraction intensity |F_p(q)| (modulus, not squared).
double intensity(const Polytope& p, const Vec& q);

// Cell-centered angular grids.
struct GridSpec {
  int n_phi = 0;
  double phi_lo = 0.0, phi_hi = 0.0;
  int n_theta = 1;   // 1 row in 2D
  double theta_lo = 0.0, theta_hi = 0.0;
};

struct DiffractionPattern {
  int mode = 2;                    // 2 or 3 (ambient dimension)
  GridSpec grid;
  std::vector<double> phi;         // size n_phi
  std::vector<double> theta;       // size n_theta (empty meaning in 2D)
  std::vector<double> intensities; // theta-major rows, phi fastest
  std::string polytope_id;
  double wavelength_scale = 1.0;
};

// Evaluates the pattern over the grid; throws std::invalid_argument when a
// grid node lands on an excluded angle.  jobs > 1 splits rows across threads
// with a deterministic merge.
DiffractionPattern render_pattern(const Polytope& p, int mode,
                                  const GridSpec& grid,
                                  const ScatterConfig& config = {},
                                  int jobs = 1);

// CSV rows phi[,theta],q...,intensity with 17 significant digits.
void export_pattern_csv(const DiffractionPattern& pat, const std::string& path);
DiffractionPattern import_pattern_csv(const std::string& path);

// 16-bit big-endian binary PGM, linear scale to the max intensity; the scale
// is recorded in a header comment (0 for an all-zero pattern).
void export_pattern_pgm(const DiffractionPattern& pat, const std::string& path);

}  // namespace polyft
