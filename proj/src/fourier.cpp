#include "polyft/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

#include "polyft/rng.hpp"

namespace polyft {

namespace {

// Divided differences of exp over nodes[first..] by the Taylor recurrence
// d_i = sum_k h_k(w_first..w_i) / (k+i-first)!, where h_k is the complete
// homogeneous symmetric polynomial.  Converges fast when the node spread is
// below 1/2; the caller guarantees that.  Returns the row
// dd[w_first], dd[w_first, w_first+1], ..., dd[w_first..w_last].
std::vector<Complex> taylor_dd_row(std::span<const Complex> nodes,
                                   std::size_t first) {
  const std::size_t r = nodes.size() - first;
  std::vector<Complex> d(r), s(r);
  double fact = 1.0;
  for (std::size_t i = 0; i < r; ++i) {
    if (i > 0) fact *= static_cast<double>(i);
    s[i] = 1.0 / fact;
    d[i] = s[i];
  }
  for (int k = 1; k < 400; ++k) {
    s[0] *= nodes[first] / static_cast<double>(k);
    for (std::size_t i = 1; i < r; ++i)
      s[i] = (nodes[first + i] * s[i] + s[i - 1]) /
             static_cast<double>(k + static_cast<int>(i));
    double smax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      d[i] += s[i];
      smax = std::max(smax, std::abs(s[i]));
      dmax = std::max(dmax, std::abs(d[i]));
    }
    if (smax <= 1e-16 * std::max(dmax, 1e-300)) break;
  }
  return d;
}

}  // namespace

Complex exp_divided_difference(std::span<const Complex> nodes) {
  if (nodes.empty())
    throw std::invalid_argument("exp_divided_difference: no nodes");
  const std::size_t m = nodes.size() - 1;
  if (m == 0) return std::exp(nodes[0]);

  // Mean shift: dd[exp](z) = e^mu dd[exp](z - mu).
  Complex mu = 0.0;
  for (const Complex& z : nodes) mu += z;
  mu /= static_cast<double>(nodes.size());
  std::vector<Complex> w(nodes.begin(), nodes.end());
  for (Complex& z : w) z -= mu;

  double spread = 0.0;
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j)
      spread = std::max(spread, std::abs(w[i] - w[j]));

  if (spread < 0.5)
    return std::exp(mu) * taylor_dd_row(w, 0).back();

  // Scaling and squaring on the triangular divided-difference matrix
  // T_{jl} = dd[exp](b w_j .. b w_l), the Opitz form of exp of the bidiagonal
  // node matrix: conjugating by diag(b^j) turns T into exp(b J), so squaring
  // the scaled matrix k times and undoing the conjugation yields dd over the
  // original nodes.
  int k = std::max(1, static_cast<int>(std::ceil(std::log2(spread / 0.25))));
  double b = std::ldexp(1.0, -k);
  std::vector<Complex> scaled(w);
  for (Complex& z : scaled) z *= b;

  const std::size_t dim = m + 1;
  std::vector<Complex> a(dim * dim, Complex(0.0));
  auto at = [&](std::size_t r, std::size_t c) -> Complex& {
    return a[r * dim + c];
  };
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<Complex> row = taylor_dd_row(scaled, j);
    for (std::size_t l = j; l < dim; ++l)
      at(j, l) = row[l - j] * std::pow(b, static_cast<double>(l - j));
  }
  std::vector<Complex> tmp(dim * dim);
  for (int t = 0; t < k; ++t) {
    std::fill(tmp.begin(), tmp.end(), Complex(0.0));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t p = r; p < dim; ++p)
        for (std::size_t c = p; c < dim; ++c)
          tmp[r * dim + c] += at(r, p) * at(p, c);
    a.swap(tmp);
  }
  return std::exp(mu) * at(0, m);
}

Complex simplex_ft(const Simplex& t, const Vec& s) {
  const auto& verts = t.vertices();
  std::vector<Complex> nodes(verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j)
    nodes[j] = Complex(0.0, -s.dot(verts[j]));
  double fact = t.dim() == 2 ? 2.0 : 6.0;
  return fact * t.volume() * exp_divided_difference(nodes);
}

Complex polytope_ft(const Polytope& p, const Vec& s) {
  Complex sum = 0.0;
  for (const auto& t : triangulate(p)) sum += simplex_ft(t, s);
  return sum;
}

FourierEvaluator::FourierEvaluator(const Polytope& p)
    : simplices_(triangulate(p)) {}

Complex FourierEvaluator::operator()(const Vec& s) const {
  Complex sum = 0.0;
  for (const auto& t : simplices_) sum += simplex_ft(t, s);
  return sum;
}

// --------------------------------------------------------------- EFunction

namespace {

// Projection axis for a 3D vertex cone: the negated sum of incident facet
// normals.  Every edge generator lies on two incident facets and strictly
// inside the rest, so its dot with this axis is strictly positive and the
// gnomonic cross-section is a bounded convex polygon.
Eigen::Vector3d cone_axis(const Polytope& p, int vi) {
  Eigen::Vector3d w = Eigen::Vector3d::Zero();
  for (const auto& f : p.facets())
    if (std::find(f.vertices.begin(), f.vertices.end(), vi) !=
        f.vertices.end())
      w -= Eigen::Vector3d(f.normal[0], f.normal[1], f.normal[2]);
  double n = w.norm();
  if (n <= tau_geom)
    throw DegenerateVertex("vertex cone has no interior axis");
  return w / n;
}

}  // namespace

EFunction vertex_cone_efunction(const Polytope& p) {
  const int n = p.dim();
  const auto& verts = p.vertices();

  std::vector<std::vector<int>> nbrs(verts.size());
  for (const auto& [i, j] : p.edges()) {
    nbrs[i].push_back(j);
    nbrs[j].push_back(i);
  }


  EFunction f;
  f.dim = n;
  f.degree = -n;
  const int phase = ((-n) % 4 + 4) % 4;  // i^{-n} in quarter turns

  for (std::size_t vi = 0; vi < verts.size(); ++vi) {
    EFunctionTerm term;
    term.exponent = verts[vi];
    term.phase = phase;

    std::vector<Vec> gens;
    for (int u : nbrs[vi]) {
      Vec g = verts[u] - verts[vi];
      double len = g.norm();
      if (len <= tau_geom)
        throw DegenerateVertex("zero-length edge generator");
      gens.push_back(g / len);
    }

    if (n == 2) {
      if (gens.size() != 2)
        throw DegenerateVertex("2D vertex without exactly two edges");
      double det = gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0];
      if (std::abs(det) <= tau_geom)
        throw DegenerateVertex("2D vertex cone not pointed");
      ConeCoefficient c;
      c.weight = std::abs(det);
      c.edges = {gens[0], gens[1]};
      term.coefficients.push_back(std::move(c));
    } else {
      if (gens.size() < 3)
        throw DegenerateVertex("3D vertex with fewer than three edges");
      Eigen::Vector3d w = cone_axis(p, static_cast<int>(vi));
      Eigen::Vector3d u1 = w.unitOrthogonal();
      Eigen::Vector3d u2 = w.cross(u1);
      // Gnomonic image of the cross-section is a convex polygon; sorting
      // around its own vertex mean recovers the boundary cycle even when the
      // axis itself lies outside the cone.
      std::vector<Eigen::Vector2d> q(gens.size());
      Eigen::Vector2d qbar = Eigen::Vector2d::Zero();
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Eigen::Vector3d gv(gens[g][0], gens[g][1], gens[g][2]);
        double depth = gv.dot(w);
        if (depth <= tau_geom)
          throw DegenerateVertex("edge generator grazes the projection plane");
        q[g] = Eigen::Vector2d(gv.dot(u1), gv.dot(u2)) / depth;
        qbar += q[g];
      }
      qbar /= static_cast<double>(gens.size());
      std::vector<std::pair<double, int>> order;
      for (std::size_t g = 0; g < gens.size(); ++g)
        order.emplace_back(
            std::atan2(q[g][1] - qbar[1], q[g][0] - qbar[0]),
            static_cast<int>(g));
      std::sort(order.begin(), order.end());

      // Fan over the cyclically ordered vertex figure; flat slivers
      // (coplanar with the fan base) carry zero weight and are dropped.
      for (std::size_t j = 1; j + 1 < order.size(); ++j) {
        const Vec& a = gens[order[0].second];
        const Vec& b = gens[order[j].second];
        const Vec& c = gens[order[j + 1].second];
        Eigen::Matrix3d g3;
        g3.col(0) = Eigen::Vector3d(a[0], a[1], a[2]);
        g3.col(1) = Eigen::Vector3d(b[0], b[1], b[2]);
        g3.col(2) = Eigen::Vector3d(c[0], c[1], c[2]);
        double det = g3.determinant();
        if (std::abs(det) <= 1e-12) continue;
        ConeCoefficient cc;
        cc.weight = std::abs(det);
        cc.edges = {a, b, c};
        term.coefficients.push_back(std::move(cc));
      }
      if (term.coefficients.empty())
        throw DegenerateVertex("vertex cone fan collapsed");
    }
    f.terms.push_back(std::move(term));
  }
  return f;
}

Complex efunction_eval(const EFunction& f, const Vec& s) {
  if (f.terms.empty()) return 0.0;
  const double snorm = s.norm();
  if (snorm <= tau_sing)
    throw NearSingular("efunction_eval: s at the origin",
                       Vec::Zero(f.dim));
  for (const auto& term : f.terms)
    for (const auto& c : term.coefficients)
      for (const auto& e : c.edges)
        if (std::abs(e.dot(s)) <= tau_sing * e.norm() * snorm)
          throw NearSingular("efunction_eval: s near a denominator hyperplane",
                             e);

  // Extended precision throughout: near a denominator hyperplane the dot
  // products cancel catastrophically and the term sum condition number grows
  // like 1 / prod(e.s), so the working precision sets how close to the guard
  // the value stays accurate.
  using LComplex = std::complex<long double>;
  auto ldot = [](const Vec& a, const Vec& b) {
    long double acc = 0.0L;
    for (Eigen::Index j = 0; j < a.size(); ++j)
      acc += static_cast<long double>(a[j]) * static_cast<long double>(b[j]);
    return acc;
  };

  static const LComplex quarter[4] = {
      {1.0L, 0.0L}, {0.0L, 1.0L}, {-1.0L, 0.0L}, {0.0L, -1.0L}};
  LComplex sum = 0.0L;
  for (const auto& term : f.terms) {
    long double rational = 0.0L;
    for (const auto& c : term.coefficients) {
      long double denom = 1.0L;
      for (const auto& e : c.edges) denom *= ldot(e, s);
      rational += static_cast<long double>(c.weight) / denom;
    }
    long double theta = -ldot(term.exponent, s);
    sum += quarter[term.phase] * rational *
           LComplex(std::cos(theta), std::sin(theta));
  }
  return Complex(static_cast<double>(sum.real()),
                 static_cast<double>(sum.imag()));
}

EFunction squared_modulus_efunction(const EFunction& f) {
  for (const auto& t : f.terms)
    if (t.phase != f.terms[0].phase)
      throw std::invalid_argument(
          "squared_modulus_efunction: mixed term phases");

  // |sum_k i^p R_k e^{-i v_k s}|^2 = sum_{k,l} R_k R_l e^{-i (v_k - v_l) s}:
  // the quarter-turn factors cancel pairwise, leaving real products.
  const std::size_t m = f.terms.size();
  std::vector<Vec> diffs;
  diffs.reserve(m * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l)
      diffs.push_back(f.terms[k].exponent - f.terms[l].exponent);

  EFunction out;
  out.dim = f.dim;
  out.degree = 2 * f.degree;
  if (m == 0) return out;

  std::vector<Vec> reps;
  std::vector<int> assign = detail::cluster_vectors(diffs, tau_geom, reps);
  out.terms.resize(reps.size());
  for (std::size_t r = 0; r < reps.size(); ++r) {
    out.terms[r].exponent = reps[r];
    out.terms[r].phase = 0;
    out.terms[r].multiplicity = 0;
  }
  std::size_t pair_idx = 0;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < m; ++l, ++pair_idx) {
      EFunctionTerm& dst = out.terms[assign[pair_idx]];
      dst.multiplicity += 1;
      for (const auto& ck : f.terms[k].coefficients)
        for (const auto& cl : f.terms[l].coefficients) {
          ConeCoefficient prod;
          prod.weight = ck.weight * cl.weight;
          prod.edges = ck.edges;
          prod.edges.insert(prod.edges.end(), cl.edges.begin(),
                            cl.edges.end());
          dst.coefficients.push_back(std::move(prod));
        }
    }
  return out;
}

DifferenceMultiset exponent_support(const EFunction& f) {
  DifferenceMultiset out;
  for (const auto& t : f.terms) {
    out.vectors.push_back(t.exponent);
    out.multiplicities.push_back(t.multiplicity);
  }
  return out;
}

// ------------------------------------------------------------ brute force

std::vector<FtEstimate> brute_force_ft(const Polytope& p,
                                       std::span<const Vec> s_list,
                                       std::int64_t budget,
                                       std::uint64_t seed) {
  if (budget <= 0)
    throw std::invalid_argument("brute_force_ft: budget must be positive");
  const int n = p.dim();
  auto [lo, hi] = p.bounding_box();
  double box_vol = 1.0;
  for (int j = 0; j < n; ++j) box_vol *= hi[j] - lo[j];

  const auto& facets = p.facets();
  const std::size_t nf = facets.size();
  std::vector<double> fn(nf * 3, 0.0), foff(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    for (int j = 0; j < n; ++j) fn[i * 3 + j] = facets[i].normal[j];
    foff[i] = facets[i].offset + tau_geom;
  }

  const std::size_t ns = s_list.size();
  std::vector<double> sv(ns * 3, 0.0);
  for (std::size_t k = 0; k < ns; ++k)
    for (int j = 0; j < n; ++j) sv[k * 3 + j] = s_list[k][j];

  std::vector<double> sum_re(ns, 0.0), sum_im(ns, 0.0);
  std::vector<double> sq_re(ns, 0.0), sq_im(ns, 0.0);
  std::int64_t inside_count = 0;

  RandomStream rng(seed);
  double x[3] = {0.0, 0.0, 0.0};
  for (std::int64_t t = 0; t < budget; ++t) {
    for (int j = 0; j < n; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * rng.uniform();
    bool inside = true;
    for (std::size_t i = 0; i < nf; ++i) {
      double d = fn[i * 3] * x[0] + fn[i * 3 + 1] * x[1] + fn[i * 3 + 2] * x[2];
      if (d > foff[i]) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    ++inside_count;
    for (std::size_t k = 0; k < ns; ++k) {
      double theta =
          sv[k * 3] * x[0] + sv[k * 3 + 1] * x[1] + sv[k * 3 + 2] * x[2];
      double re = box_vol * std::cos(theta);
      double im = -box_vol * std::sin(theta);
      sum_re[k] += re;
      sum_im[k] += im;
      sq_re[k] += re * re;
      sq_im[k] += im * im;
    }
  }

  std::vector<FtEstimate> out(ns);
  const double nb = static_cast<double>(budget);
  for (std::size_t k = 0; k < ns; ++k) {
    double mean_re = sum_re[k] / nb;
    double mean_im = sum_im[k] / nb;
    double var_re = std::max(0.0, sq_re[k] / nb - mean_re * mean_re);
    double var_im = std::max(0.0, sq_im[k] / nb - mean_im * mean_im);
    out[k].value = Complex(mean_re, mean_im);
    out[k].std_error = std::sqrt((var_re + var_im) / nb);
    out[k].inside = inside_count;
  }
  return out;
}

FtEstimate brute_force_ft(const Polytope& p, const Vec& s,
                          std::int64_t budget, std::uint64_t seed) {
  std::vector<Vec> one{s};
  return brute_force_ft(p, std::span<const Vec>(one), budget, seed)[0];
}

}  // namespace polyft
