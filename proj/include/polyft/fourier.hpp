#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polyft/polytope.hpp"
#include "polyft/types.hpp"

namespace polyft {

// Divided difference of exp over complex nodes, dd[exp](z_0, ..., z_m).
// Stable for confluent and widely spread nodes alike: nodes are mean-shifted,
// then either summed as a Taylor tail (spread < 1/2) or run through
// scaling-and-squaring on the triangular divided-difference matrix.
Complex exp_divided_difference(std::span<const Complex> nodes);

// Integral of e^{-i s.x} over a simplex: n! vol(T) dd[exp](-i s.v_0, ...).
Complex simplex_ft(const Simplex& t, const Vec& s);

// Entire in s; at s = 0 equals vol(p).  Sums simplex_ft over a triangulation.
Complex polytope_ft(const Polytope& p, const Vec& s);

// Caches the triangulation for repeated evaluation (grids, corpora).
class FourierEvaluator {
 public:
  explicit FourierEvaluator(const Polytope& p);
  Complex operator()(const Vec& s) const;

 private:
  std::vector<Simplex> simplices_;
};

// One rational coefficient lambda / prod_e (e . s) with unit edge directions.
struct ConeCoefficient {
  double weight = 0.0;
  std::vector<Vec> edges;
};

// Term P_k(s) e^{-i exponent . s} of an exponential sum with rational
// homogeneous coefficients.  P_k = i^phase * sum of cone coefficients, the
// phase counted in quarter turns.  multiplicity tracks merged duplicates of
// the exponent (squared-modulus construction).
struct EFunctionTerm {
  Vec exponent;
  std::vector<ConeCoefficient> coefficients;
  int phase = 0;
  int multiplicity = 1;
};

struct EFunction {
  int dim = 0;
  int degree = 0;  // homogeneity degree of the coefficients
  std::vector<EFunctionTerm> terms;
};

// Vertex tangent-cone expansion: one term per vertex, degree -n, phase
// (-n mod 4).  Cone generators are unit edge directions; 3D cones are fanned
// into simplicial pieces after cyclic ordering around the interior axis.
// Throws DegenerateVertex when a vertex figure cannot be ordered.
EFunction vertex_cone_efunction(const Polytope& p);

// Evaluates an EFunction away from its singular set.  Throws NearSingular
// (with the offending edge) when |e . s| <= tau_sing |e| |s| for some
// denominator edge, or when s = 0 for a nonempty sum of negative degree.
Complex efunction_eval(const EFunction& f, const Vec& s);

// |f|^2 as an EFunction: exponents are pairwise differences of the input
// exponents (tau_geom-merged with multiplicities), coefficients are products,
// degree doubles, phase cancels to 0.  Values are real nonnegative on real s.
EFunction squared_modulus_efunction(const EFunction& f);

// Exponent multiset of a squared-modulus EFunction.
DifferenceMultiset exponent_support(const EFunction& f);

struct FtEstimate {
  Complex value;
  double std_error = 0.0;       // combined (re, im) standard error
  std::int64_t inside = 0;      // samples that landed in the polytope
};

// Monte Carlo check value: mean of vol(box) chi_p(x) e^{-i s.x} over `budget`
// uniform box samples.  Deterministic for a fixed seed.
FtEstimate brute_force_ft(const Polytope& p, const Vec& s,
                          std::int64_t budget, std::uint64_t seed);

// Same estimator for many s sharing one sample stream: entry k equals what
// brute_force_ft would return if the stream were replayed for s_k alone.
std::vector<FtEstimate> brute_force_ft(const Polytope& p,
                                       std::span<const Vec> s_list,
                                       std::int64_t budget,
                                       std::uint64_t seed);

}  // namespace polyft
