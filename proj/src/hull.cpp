#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "polyft/polytope.hpp"

namespace polyft {

namespace detail {

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace detail

namespace {

std::vector<Vec> merge_close_points(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    bool duplicate = false;
    for (const auto& q : out) {
      if ((p - q).norm() <= tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------- 2D hull

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Polytope hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), detail::lex_less);
  const int m = static_cast<int>(pts.size());
  if (m < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");

  // Monotone chain; collinear points are dropped (area tolerance tau_geom,
  // coordinates assumed of order one).
  std::vector<int> chain(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 &&
           cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= tau_geom)
      --k;
    chain[k++] = i;
  }
  const int lower = k + 1;
  for (int i = m - 2; i >= 0; --i) {
    while (k >= lower &&
           cross2(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= tau_geom)
      --k;
    chain[k++] = i;
  }
  chain.resize(k - 1);  // counter-clockwise cycle
  if (chain.size() < 3)
    throw DegenerateInput("convex_hull: points are collinear within tolerance");

  // Used vertices in lexicographic order; pts is sorted, so the sorted chain
  // indices already give that order.
  std::vector<int> used = chain;
  std::sort(used.begin(), used.end());
  std::vector<int> to_new(m, -1);
  std::vector<Vec> verts;
  verts.reserve(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    to_new[used[i]] = static_cast<int>(i);
    verts.push_back(pts[used[i]]);
  }

  std::vector<Facet> facets;
  facets.reserve(chain.size());
  const std::size_t c = chain.size();
  for (std::size_t i = 0; i < c; ++i) {
    int a = to_new[chain[i]];
    int b = to_new[chain[(i + 1) % c]];
    Facet f;
    f.vertices = {a, b};
    Vec d = verts[b] - verts[a];
    Vec n = make_vec({d[1], -d[0]});
    n /= n.norm();
    f.normal = n;
    f.offset = 0.5 * (n.dot(verts[a]) + n.dot(verts[b]));
    facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
    return x.vertices < y.vertices;
  });
  return Polytope(2, std::move(verts), std::move(facets));
}

// ---------------------------------------------------------------- 3D hull

using V3 = Eigen::Vector3d;

struct Tri {
  std::array<int, 3> v;
  V3 n;
  double off = 0.0;
  bool alive = true;
};

struct EdgeKey {
  int a, b;
  bool operator<(const EdgeKey& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

class HullBuilder {
 public:
  explicit HullBuilder(std::vector<Vec> pts) : pts_(std::move(pts)) {
    for (const auto& p : pts_) p3_.emplace_back(p[0], p[1], p[2]);
  }

  Polytope build();

 private:
  void seed_simplex();
  void add_tri(int a, int b, int c);
  void insert_point(int idx);
  Polytope assemble();

  std::vector<Vec> pts_;
  std::vector<V3> p3_;
  std::vector<Tri> tris_;
  std::map<EdgeKey, int> edge_owner_;  // directed edge -> alive triangle
  std::array<int, 4> seed_{};
};

void HullBuilder::add_tri(int a, int b, int c) {
  Tri t;
  t.v = {a, b, c};
  V3 n = (p3_[b] - p3_[a]).cross(p3_[c] - p3_[a]);
  double norm = n.norm();
  if (norm <= 1e-300)
    throw DegenerateInput("convex_hull: degenerate face encountered");
  t.n = n / norm;
  t.off = t.n.dot(p3_[a]);
  int id = static_cast<int>(tris_.size());
  tris_.push_back(std::move(t));
  edge_owner_[{a, b}] = id;
  edge_owner_[{b, c}] = id;
  edge_owner_[{c, a}] = id;
}

void HullBuilder::seed_simplex() {
  const int m = static_cast<int>(pts_.size());
  int i0 = 0;
  for (int i = 1; i < m; ++i)
    if (detail::lex_less(pts_[i], pts_[i0])) i0 = i;

  int i1 = -1;
  double best = tau_geom;
  for (int i = 0; i < m; ++i) {
    double d = (p3_[i] - p3_[i0]).norm();
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (i1 < 0) throw DegenerateInput("convex_hull: all points coincide");

  int i2 = -1;
  best = tau_geom;
  V3 dir = (p3_[i1] - p3_[i0]).normalized();
  for (int i = 0; i < m; ++i) {
    V3 r = p3_[i] - p3_[i0];
    double d = (r - dir * dir.dot(r)).norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0)
    throw DegenerateInput("convex_hull: points are collinear within tolerance");

  int i3 = -1;
  best = tau_geom;
  V3 n = (p3_[i1] - p3_[i0]).cross(p3_[i2] - p3_[i0]).normalized();
  for (int i = 0; i < m; ++i) {
    double d = std::abs(n.dot(p3_[i] - p3_[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (i3 < 0)
    throw DegenerateInput("convex_hull: points are coplanar within tolerance");

  if ((p3_[i1] - p3_[i0])
          .cross(p3_[i2] - p3_[i0])
          .dot(p3_[i3] - p3_[i0]) < 0)
    std::swap(i2, i3);

  add_tri(i0, i2, i1);
  add_tri(i0, i3, i2);
  add_tri(i0, i1, i3);
  add_tri(i1, i2, i3);
  seed_ = {i0, i1, i2, i3};
}

void HullBuilder::insert_point(int idx) {
  const V3& p = p3_[idx];
  std::vector<char> visible(tris_.size(), 0);
  bool any = false;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (!tris_[t].alive) continue;
    if (tris_[t].n.dot(p) - tris_[t].off > tau_geom) {
      visible[t] = 1;
      any = true;
    }
  }
  if (!any) return;

  std::vector<EdgeKey> horizon;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (!visible[t]) continue;
    const auto& v = tris_[t].v;
    for (int e = 0; e < 3; ++e) {
      int a = v[e];
      int b = v[(e + 1) % 3];
      auto it = edge_owner_.find({b, a});
      if (it == edge_owner_.end() || !visible[it->second])
        horizon.push_back({a, b});
    }
  }

  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (!visible[t]) continue;
    tris_[t].alive = false;
    const auto& v = tris_[t].v;
    for (int e = 0; e < 3; ++e)
      edge_owner_.erase({v[e], v[(e + 1) % 3]});
  }
  for (const auto& e : horizon) add_tri(e.a, e.b, idx);
}

Polytope HullBuilder::assemble() {
  std::vector<int> alive;
  for (std::size_t t = 0; t < tris_.size(); ++t)
    if (tris_[t].alive) alive.push_back(static_cast<int>(t));

  // Merge coplanar neighbours (union-find); a pair merges when each
  // triangle's apex lies on the other's plane within tau_geom.
  std::vector<int> parent(tris_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int t : alive) {
    const auto& v = tris_[t].v;
    for (int e = 0; e < 3; ++e) {
      auto it = edge_owner_.find({v[(e + 1) % 3], v[e]});
      if (it == edge_owner_.end()) continue;
      int u = it->second;
      if (u <= t) continue;
      int apex_u = -1, apex_t = -1;
      for (int x : tris_[u].v)
        if (x != v[e] && x != v[(e + 1) % 3]) apex_u = x;
      for (int x : tris_[t].v)
        if (x != v[e] && x != v[(e + 1) % 3]) apex_t = x;
      bool coplanar =
          std::abs(tris_[t].n.dot(p3_[apex_u]) - tris_[t].off) <= tau_geom &&
          std::abs(tris_[u].n.dot(p3_[apex_t]) - tris_[u].off) <= tau_geom;
      if (coplanar) parent[find(t)] = find(u);
    }
  }

  std::map<int, std::vector<int>> groups;
  for (int t : alive) groups[find(t)].push_back(t);

  struct RawFacet {
    std::vector<int> cycle;  // original point indices
  };
  std::vector<RawFacet> raw;
  for (const auto& [root, members] : groups) {
    std::vector<char> in_group(tris_.size(), 0);
    for (int t : members) in_group[t] = 1;
    std::map<int, int> next;
    for (int t : members) {
      const auto& v = tris_[t].v;
      for (int e = 0; e < 3; ++e) {
        int a = v[e];
        int b = v[(e + 1) % 3];
        auto it = edge_owner_.find({b, a});
        if (it != edge_owner_.end() && in_group[it->second]) continue;
        if (next.count(a))
          throw std::logic_error("convex_hull: non-disk facet merge");
        next[a] = b;
      }
    }
    RawFacet f;
    int start = next.begin()->first;
    int cur = start;
    do {
      f.cycle.push_back(cur);
      cur = next.at(cur);
    } while (cur != start && f.cycle.size() <= next.size());
    if (cur != start)
      throw std::logic_error("convex_hull: open facet boundary");

    // Drop vertices collinear with their cycle neighbours.
    bool changed = true;
    while (changed && f.cycle.size() > 3) {
      changed = false;
      for (std::size_t i = 0; i < f.cycle.size(); ++i) {
        const std::size_t k = f.cycle.size();
        const V3& a = p3_[f.cycle[(i + k - 1) % k]];
        const V3& b = p3_[f.cycle[i]];
        const V3& c = p3_[f.cycle[(i + 1) % k]];
        V3 base = c - a;
        if ((b - a).cross(base).norm() <= tau_geom * base.norm()) {
          f.cycle.erase(f.cycle.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
      }
    }
    raw.push_back(std::move(f));
  }

  // Vertices that survive, lexicographically ordered.
  std::vector<int> used;
  for (const auto& f : raw)
    used.insert(used.end(), f.cycle.begin(), f.cycle.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::sort(used.begin(), used.end(), [&](int x, int y) {
    return detail::lex_less(pts_[x], pts_[y]);
  });
  std::vector<int> to_new(pts_.size(), -1);
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < used.size(); ++i) {
    to_new[used[i]] = static_cast<int>(i);
    verts.push_back(pts_[used[i]]);
  }

  std::vector<Facet> facets;
  for (const auto& f : raw) {
    Facet out;
    for (int x : f.cycle) out.vertices.push_back(to_new[x]);
    // Rotate the cycle to start at its smallest index, orientation kept.
    auto mn = std::min_element(out.vertices.begin(), out.vertices.end());
    std::rotate(out.vertices.begin(), mn, out.vertices.end());

    // Newell normal; the cycle is counter-clockwise from outside.
    V3 n = V3::Zero();
    const std::size_t k = out.vertices.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Vec& a = verts[out.vertices[i]];
      const Vec& b = verts[out.vertices[(i + 1) % k]];
      n[0] += (a[1] - b[1]) * (a[2] + b[2]);
      n[1] += (a[2] - b[2]) * (a[0] + b[0]);
      n[2] += (a[0] - b[0]) * (a[1] + b[1]);
    }
    n.normalize();
    out.normal = make_vec({n[0], n[1], n[2]});
    double off = 0.0;
    for (int x : out.vertices) off += out.normal.dot(verts[x]);
    out.offset = off / static_cast<double>(k);
    facets.push_back(std::move(out));
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
    return x.vertices < y.vertices;
  });
  return Polytope(3, std::move(verts), std::move(facets));
}

Polytope HullBuilder::build() {
  seed_simplex();
  const int m = static_cast<int>(pts_.size());
  for (int i = 0; i < m; ++i) {
    if (i == seed_[0] || i == seed_[1] || i == seed_[2] || i == seed_[3])
      continue;
    insert_point(i);
  }
  return assemble();
}

}  // namespace

Polytope convex_hull(const std::vector<Vec>& points) {
  if (points.empty())
    throw DegenerateInput("convex_hull: empty point list");
  const int dim = static_cast<int>(points[0].size());
  if (dim != 2 && dim != 3)
    throw DegenerateInput("convex_hull: only dimensions 2 and 3 supported");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim)
      throw DegenerateInput("convex_hull: mixed point dimensions");

  std::vector<Vec> pts = merge_close_points(points, tau_geom);
  if (dim == 2) return hull_2d(std::move(pts));
  if (static_cast<int>(pts.size()) < 4)
    throw DegenerateInput("convex_hull: fewer than 4 distinct points");
  return HullBuilder(std::move(pts)).build();
}

}  // namespace polyft
