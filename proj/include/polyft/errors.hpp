#pragma once

#include <stdexcept>
#include <string>

#include "polyft/types.hpp"

namespace polyft {

// Input whose affine hull has dimension below the ambient space, or too few
// points to span one.
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vertex whose tangent cone is not pointed (or whose edge fan could not be
// ordered), which signals a broken facet structure.
struct DegenerateVertex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation point too close to a denominator hyperplane of a rational
// exponential sum.  Carries the offending edge direction.
struct NearSingular : std::runtime_error {
  NearSingular(const std::string& what, Vec edge_direction)
      : std::runtime_error(what), edge(std::move(edge_direction)) {}
  Vec edge;
};

// Scattering angle outside the admissible range or inside an excluded band.
struct ExcludedAngle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normalized surface map requested where the first coordinate vanishes.
struct FirstCoordinateVanishes : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature of a sampled field requested beyond its resolution (|s| h >= 1).
struct ResolutionExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polyft
