#include "polyft/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace polyft {

namespace detail {

std::vector<int> cluster_vectors(const std::vector<Vec>& vs, double tol,
                                 std::vector<Vec>& representatives) {
  const int m = static_cast<int>(vs.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((vs[i] - vs[j]).norm() <= tol) {
        int a = find(i), b = find(j);
        if (a != b) parent[a] = b;
      }

  // Lexicographically smallest member represents each cluster; clusters are
  // then ordered by representative so the output ignores input order.
  std::map<int, int> root_to_min;
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    auto it = root_to_min.find(r);
    if (it == root_to_min.end())
      root_to_min[r] = i;
    else if (lex_less(vs[i], vs[it->second]))
      it->second = i;
  }
  std::vector<int> mins;
  for (const auto& [r, idx] : root_to_min) mins.push_back(idx);
  std::sort(mins.begin(), mins.end(),
            [&](int a, int b) { return lex_less(vs[a], vs[b]); });

  std::map<int, int> root_to_cluster;
  representatives.clear();
  for (std::size_t k = 0; k < mins.size(); ++k) {
    root_to_cluster[find(mins[k])] = static_cast<int>(k);
    representatives.push_back(vs[mins[k]]);
  }
  std::vector<int> assignment(m);
  for (int i = 0; i < m; ++i) assignment[i] = root_to_cluster.at(find(i));
  return assignment;
}

}  // namespace detail

// ----------------------------------------------------------------- Polytope

Polytope::Polytope(int dim, std::vector<Vec> vertices,
                   std::vector<Facet> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (dim_ != 2 && dim_ != 3)
    throw DegenerateInput("Polytope: only dimensions 2 and 3 supported");
  if (vertices_.size() < static_cast<std::size_t>(dim_ + 1) ||
      facets_.size() < static_cast<std::size_t>(dim_ + 1))
    throw DegenerateInput("Polytope: not full-dimensional");
}

bool Polytope::contains(const Vec& x, double tol) const {
  for (const auto& f : facets_)
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

std::vector<std::pair<int, int>> Polytope::edges() const {
  std::set<std::pair<int, int>> es;
  for (const auto& f : facets_) {
    const std::size_t k = f.vertices.size();
    for (std::size_t i = 0; i < k; ++i) {
      int a = f.vertices[i];
      int b = f.vertices[(i + 1) % k];
      if (dim_ == 2 && i + 1 == k) break;  // 2D facet is a single segment
      es.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return {es.begin(), es.end()};
}

std::pair<Vec, Vec> Polytope::bounding_box() const {
  Vec lo = vertices_[0];
  Vec hi = vertices_[0];
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

void Polytope::validate() const {
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& f : facets_) {
    if (std::abs(f.normal.norm() - 1.0) > 1e-9)
      throw std::logic_error("facet normal not unit");
    for (int idx : f.vertices) {
      if (idx < 0 || idx >= nv) throw std::logic_error("facet index range");
      if (std::abs(f.normal.dot(vertices_[idx]) - f.offset) > 1e-7)
        throw std::logic_error("facet not planar");
    }
    for (const auto& v : vertices_)
      if (f.normal.dot(v) > f.offset + 1e-7)
        throw std::logic_error("vertex outside facet plane");
  }
  std::vector<int> degree(nv, 0);
  for (const auto& f : facets_)
    for (int idx : f.vertices) ++degree[idx];
  for (int d : degree)
    if (d < dim_) throw std::logic_error("vertex on too few facets");
  if (dim_ == 3) {
    long e = static_cast<long>(edges().size());
    if (nv - e + static_cast<long>(facets_.size()) != 2)
      throw std::logic_error("Euler characteristic violated");
  } else {
    if (facets_.size() != vertices_.size())
      throw std::logic_error("2D vertex/edge count mismatch");
  }
}

// ------------------------------------------------------------------ Simplex

Simplex::Simplex(int dim, std::vector<Vec> vertices)
    : dim_(dim), vertices_(std::move(vertices)) {
  if (static_cast<int>(vertices_.size()) != dim_ + 1)
    throw DegenerateInput("Simplex: needs n + 1 vertices");
  Mat e(dim_, dim_);
  for (int j = 0; j < dim_; ++j) e.col(j) = vertices_[j + 1] - vertices_[0];
  if (std::abs(e.determinant()) <= 1e-14)
    throw DegenerateInput("Simplex: vertices affinely dependent");
}

double Simplex::volume() const {
  Mat e(dim_, dim_);
  for (int j = 0; j < dim_; ++j) e.col(j) = vertices_[j + 1] - vertices_[0];
  double fact = dim_ == 2 ? 2.0 : 6.0;
  return std::abs(e.determinant()) / fact;
}

// --------------------------------------------------------------- operations

std::vector<Simplex> triangulate(const Polytope& p) {
  const auto& verts = p.vertices();
  std::vector<Simplex> out;
  for (const auto& f : p.facets()) {
    if (std::find(f.vertices.begin(), f.vertices.end(), 0) !=
        f.vertices.end())
      continue;  // facets through the apex contribute no volume
    if (p.dim() == 2) {
      out.emplace_back(2, std::vector<Vec>{verts[0], verts[f.vertices[0]],
                                           verts[f.vertices[1]]});
    } else {
      for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i)
        out.emplace_back(
            3, std::vector<Vec>{verts[0], verts[f.vertices[0]],
                                verts[f.vertices[i]],
                                verts[f.vertices[i + 1]]});
    }
  }
  return out;
}

double volume(const Simplex& s) { return s.volume(); }

double volume(const Polytope& p) {
  double v = 0.0;
  for (const auto& s : triangulate(p)) v += s.volume();
  return v;
}

Vec centroid(const Polytope& p) {
  Vec c = Vec::Zero(p.dim());
  double total = 0.0;
  for (const auto& s : triangulate(p)) {
    Vec m = Vec::Zero(p.dim());
    for (const auto& v : s.vertices()) m += v;
    m /= static_cast<double>(p.dim() + 1);
    double w = s.volume();
    c += w * m;
    total += w;
  }
  return c / total;
}

std::optional<Polytope> clip(const Polytope& p, const Halfspace& h) {
  const auto& verts = p.vertices();
  std::vector<double> d(verts.size());
  bool any_out = false;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    d[i] = h.normal.dot(verts[i]) - h.offset;
    if (d[i] > tau_geom) any_out = true;
  }
  if (!any_out) return p;

  std::vector<Vec> pts;
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (d[i] <= tau_geom) pts.push_back(verts[i]);
  for (const auto& [i, j] : p.edges()) {
    if ((d[i] > tau_geom && d[j] < -tau_geom) ||
        (d[j] > tau_geom && d[i] < -tau_geom)) {
      double t = d[i] / (d[i] - d[j]);
      pts.push_back(verts[i] + t * (verts[j] - verts[i]));
    }
  }
  if (pts.size() < static_cast<std::size_t>(p.dim() + 1)) return std::nullopt;
  try {
    return convex_hull(pts);
  } catch (const DegenerateInput&) {
    return std::nullopt;  // lower-dimensional remainder counts as empty
  }
}

std::optional<Polytope> intersect(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim())
    throw DegenerateInput("intersect: dimension mismatch");
  std::optional<Polytope> r = p;
  for (const auto& f : q.facets()) {
    r = clip(*r, Halfspace{f.normal, f.offset});
    if (!r) return std::nullopt;
  }
  return r;
}

Polytope transform(const Polytope& p, int eps, const Vec& v) {
  if (eps != 1 && eps != -1)
    throw std::invalid_argument("transform: eps must be +1 or -1");
  std::vector<Vec> verts;
  verts.reserve(p.vertices().size());
  for (const auto& x : p.vertices()) verts.push_back(eps * x + v);

  std::vector<Facet> facets = p.facets();
  for (auto& f : facets) {
    f.normal = eps * f.normal;
    // Plane n.x = c maps to (eps n).y = c + (eps n).v.
    f.offset = f.offset + f.normal.dot(v);
    if (eps == -1) {
      // Reflection flips the boundary orientation; restore it, and in 3D
      // re-anchor the cycle at its smallest index.
      std::reverse(f.vertices.begin(), f.vertices.end());
      if (p.dim() == 3) {
        auto mn = std::min_element(f.vertices.begin(), f.vertices.end());
        std::rotate(f.vertices.begin(), mn, f.vertices.end());
      }
    }
  }
  if (eps == -1)
    std::sort(facets.begin(), facets.end(),
              [](const Facet& x, const Facet& y) {
                return x.vertices < y.vertices;
              });
  return Polytope(p.dim(), std::move(verts), std::move(facets));
}

DifferenceMultiset difference_multiset(const std::vector<Vec>& points) {
  if (points.empty())
    throw DegenerateInput("difference_multiset: empty point list");
  std::vector<Vec> diffs;
  diffs.reserve(points.size() * points.size());
  for (const auto& a : points)
    for (const auto& b : points) diffs.push_back(a - b);

  DifferenceMultiset out;
  std::vector<int> assign =
      detail::cluster_vectors(diffs, tau_geom, out.vectors);
  out.multiplicities.assign(out.vectors.size(), 0);
  for (int k : assign) ++out.multiplicities[k];
  return out;
}

bool DifferenceMultiset::approx_equal(const DifferenceMultiset& other,
                                      double tol) const {
  if (vectors.size() != other.vectors.size()) return false;
  std::vector<char> taken(other.vectors.size(), 0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < other.vectors.size(); ++j) {
      if (taken[j] || multiplicities[i] != other.multiplicities[j]) continue;
      if ((vectors[i] - other.vectors[j]).norm() <= tol) {
        taken[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool general_position_check(const std::vector<Vec>& points) {
  const int m = static_cast<int>(points.size());
  std::vector<Vec> dirs;  // one per unordered pair
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec d = points[i] - points[j];
      if (d.norm() > tau_geom) dirs.push_back(std::move(d));
    }
  for (std::size_t a = 0; a < dirs.size(); ++a)
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      double na = dirs[a].squaredNorm();
      double nb = dirs[b].squaredNorm();
      double dot = dirs[a].dot(dirs[b]);
      // sin^2 of the angle between the spanned lines
      double sin2 = 1.0 - (dot * dot) / (na * nb);
      if (sin2 <= tau_ang * tau_ang) return false;
    }
  return true;
}

}  // namespace polyft
