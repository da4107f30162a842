// Independent reference implementations used only by tests.  Each oracle
// reaches the same quantity as the library through a different algorithm, so
// agreement is evidence rather than tautology.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "polyft/types.hpp"

namespace oracle {

using polyft::Complex;
using polyft::Vec;

// FT of an axis-aligned box [lo, hi]: separable product of 1D integrals
// int_a^b exp(-i s x) dx = exp(-i s m) * w * sinc(s w / 2), m midpoint, w width.
inline Complex box_ft(const Vec& lo, const Vec& hi, const Vec& s) {
  Complex out(1.0, 0.0);
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    double w = hi[j] - lo[j];
    double m = 0.5 * (lo[j] + hi[j]);
    double half = 0.5 * s[j] * w;
    double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0
                                        : std::sin(half) / half;
    out *= std::polar(w * sinc, -s[j] * m);
  }
  return out;
}

namespace detail {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
template <int N>
struct GaussLegendre {
  std::array<double, N> node{}, weight{};
  GaussLegendre() {
    for (int i = 0; i < N; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[i] = 0.5 * (1.0 + x);
      weight[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // already halved for [0,1]
    }
  }
};

}  // namespace detail

// FT of the triangle (v0, v1, v2) by 32x32 Gauss-Legendre on the Duffy-
// collapsed reference square.  Exact to ~1e-13 for |s| up to a few tens.
inline Complex triangle_ft(const Vec& v0, const Vec& v1, const Vec& v2,
                           const Vec& s) {
  static const detail::GaussLegendre<32> gl;
  double jac2 = (v1[0] - v0[0]) * (v2[1] - v0[1]) -
                (v1[1] - v0[1]) * (v2[0] - v0[0]);
  Complex sum(0.0, 0.0);
  for (int a = 0; a < 32; ++a) {
    double u = gl.node[a];
    for (int b = 0; b < 32; ++b) {
      double v = gl.node[b] * (1.0 - u);  // Duffy: (u, v) with u + v <= 1
      double x = v0[0] + u * (v1[0] - v0[0]) + v * (v2[0] - v0[0]);
      double y = v0[1] + u * (v1[1] - v0[1]) + v * (v2[1] - v0[1]);
      double w = gl.weight[a] * gl.weight[b] * (1.0 - u);
      sum += w * std::polar(1.0, -(s[0] * x + s[1] * y));
    }
  }
  return sum * std::abs(jac2);
}

// Divided difference of exp over distinct nodes by partial fractions:
// dd = sum_j exp(z_j) / prod_{k != j} (z_j - z_k).  Long-double arithmetic;
// only valid when nodes are well separated.
inline Complex dd_exp_partial_fractions(std::span<const Complex> nodes) {
  using C = std::complex<long double>;
  C sum(0.0L, 0.0L);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    C zj(nodes[j].real(), nodes[j].imag());
    C denom(1.0L, 0.0L);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k == j) continue;
      denom *= zj - C(nodes[k].real(), nodes[k].imag());
    }
    sum += std::exp(zj) / denom;
  }
  return Complex(static_cast<double>(sum.real()),
                 static_cast<double>(sum.imag()));
}

// Divided difference of exp by the defining recurrence in long double.
// Accurate only when nodes are well separated (no cancellation control).
inline Complex dd_exp_recursive(std::span<const Complex> nodes) {
  using C = std::complex<long double>;
  std::vector<C> col;
  col.reserve(nodes.size());
  for (const auto& z : nodes)
    col.push_back(std::exp(C(z.real(), z.imag())));
  for (std::size_t level = 1; level < nodes.size(); ++level)
    for (std::size_t i = 0; i + level < nodes.size(); ++i) {
      C dz = C(nodes[i + level].real(), nodes[i + level].imag()) -
             C(nodes[i].real(), nodes[i].imag());
      col[i] = (col[i + 1] - col[i]) / dz;
    }
  return Complex(static_cast<double>(col[0].real()),
                 static_cast<double>(col[0].imag()));
}

}  // namespace oracle
