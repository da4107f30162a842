#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polyft/errors.hpp"
#include "polyft/types.hpp"

namespace polyft {

// Closed halfspace { x : normal . x <= offset } with |normal| = 1.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// Facet of a full-dimensional polytope.  In 3D `vertices` is the boundary
// cycle, counter-clockwise seen from outside, starting at its smallest index.
// In 2D it is the edge pair, ordered so the interior lies left of the edge.
struct Facet {
  std::vector<int> vertices;
  Vec normal;       // unit outer normal
  double offset = 0.0;  // normal . v for every v on the facet
};

// Full-dimensional convex polytope in R^2 or R^3, stored as the vertex list
// plus the facet structure over vertex indices.  Instances are produced by
// convex_hull (canonical ordering) or transform (mapped in place).
class Polytope {
 public:
  Polytope(int dim, std::vector<Vec> vertices, std::vector<Facet> facets);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const Vec& x, double tol = tau_geom) const;

  // Unique undirected vertex-index pairs (i < j) that span an edge.
  std::vector<std::pair<int, int>> edges() const;

  // Axis-aligned bounding box, rows (min, max).
  std::pair<Vec, Vec> bounding_box() const;

  // Checks Euler count, facet planarity, vertex irredundancy and outward
  // normals; throws std::logic_error on violation.  Test support.
  void validate() const;

 private:
  int dim_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
};

// Affinely independent vertex tuple (n+1 points in R^n).
class Simplex {
 public:
  Simplex(int dim, std::vector<Vec> vertices);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }

  double volume() const;  // |det E| / n!

 private:
  int dim_;
  std::vector<Vec> vertices_;
};

// Multiset of difference vectors with multiplicities; entries are merged
// within tau_geom and listed in lexicographic order.
struct DifferenceMultiset {
  std::vector<Vec> vectors;
  std::vector<int> multiplicities;

  bool approx_equal(const DifferenceMultiset& other, double tol) const;
};

// Convex hull of points in R^2 or R^3.  Points within tau_geom are merged;
// vertices of the result are sorted lexicographically and facets are listed
// canonically, so equal point sets give identical structures.  Throws
// DegenerateInput when the affine hull is lower-dimensional.
Polytope convex_hull(const std::vector<Vec>& points);

// Partition into simplices sharing vertex 0 (one fan per facet off it).
std::vector<Simplex> triangulate(const Polytope& p);

double volume(const Polytope& p);
double volume(const Simplex& s);

// Volume centroid (not the vertex average).
Vec centroid(const Polytope& p);

// Intersection with a halfspace; Empty (nullopt) when nothing
// full-dimensional survives.  A halfspace containing p returns p unchanged.
std::optional<Polytope> clip(const Polytope& p, const Halfspace& h);

std::optional<Polytope> intersect(const Polytope& p, const Polytope& q);

// x |-> eps * x + v with eps in {+1, -1}; facet structure is mapped, not
// recomputed.
Polytope transform(const Polytope& p, int eps, const Vec& v);

// All ordered pairwise differences p_i - p_j, tau_geom-merged.
DifferenceMultiset difference_multiset(const std::vector<Vec>& points);

// True when no two distinct nonzero difference directions are parallel
// within tau_ang.
bool general_position_check(const std::vector<Vec>& points);

namespace detail {

bool lex_less(const Vec& a, const Vec& b);

// Groups vectors whose pairwise distance is within tol (transitive closure).
// representatives[k] is the lexicographically smallest member of cluster k and
// clusters are ordered by representative, so the grouping is independent of
// input order.  Returns the cluster index of each input vector.
std::vector<int> cluster_vectors(const std::vector<Vec>& vs, double tol,
                                 std::vector<Vec>& representatives);

}  // namespace detail

}  // namespace polyft
