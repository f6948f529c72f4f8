// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "qbundle/hermitian_geometry.hpp"
#include "qbundle/types.hpp"

// Central finite-difference stencils used to cross-validate analytic
// derivatives: chart Jacobians against transitions, the metric against the
// potential, the connection against the metric and the curvature against the
// connection. The acceptance checks and atlas validation run these against
// the closed forms.
namespace qbundle::fd {

/// Holomorphic partial d f / d z_b of a holomorphic map (real-axis central
/// step).
template <typename F>
auto partial_z(F&& f, const Vec& z, int b, double h) {
  Vec plus = z;
  Vec minus = z;
  plus(b) += h;
  minus(b) -= h;
  return (f(plus) - f(minus)) / (2.0 * h);
}

/// Jacobian of a holomorphic map C^n -> C^m, columns by coordinate.
template <typename F>
Mat jacobian(F&& f, const Vec& z, double h) {
  Mat jac;
  for (int b = 0; b < z.size(); ++b) {
    Vec col = partial_z(f, z, b, h);
    if (b == 0) jac.resize(col.size(), z.size());
    jac.col(b) = col;
  }
  return jac;
}

/// Wirtinger derivative d/d z_b of a matrix-valued, not necessarily
/// holomorphic function: (d_x - i d_y) / 2 by central differences.
template <typename F>
Mat wirtinger_z(F&& f, const Vec& z, int b, double h) {
  Vec xp = z, xm = z, yp = z, ym = z;
  xp(b) += h;
  xm(b) -= h;
  yp(b) += Complex{0.0, h};
  ym(b) -= Complex{0.0, h};
  Mat dx = (f(xp) - f(xm)) / (2.0 * h);
  Mat dy = (f(yp) - f(ym)) / (2.0 * h);
  return 0.5 * (dx - Complex{0.0, 1.0} * dy);
}

/// Wirtinger derivative d/d zbar_b: (d_x + i d_y) / 2.
template <typename F>
Mat wirtinger_zbar(F&& f, const Vec& z, int b, double h) {
  Vec xp = z, xm = z, yp = z, ym = z;
  xp(b) += h;
  xm(b) -= h;
  yp(b) += Complex{0.0, h};
  ym(b) -= Complex{0.0, h};
  Mat dx = (f(xp) - f(xm)) / (2.0 * h);
  Mat dy = (f(yp) - f(ym)) / (2.0 * h);
  return 0.5 * (dx + Complex{0.0, 1.0} * dy);
}

/// Mixed Wirtinger Hessian d_i d_jbar of a real scalar by second central
/// differences on the underlying real coordinates.
template <typename F>
Mat mixed_hessian(F&& f, const Vec& z, double h) {
  const int n = static_cast<int>(z.size());
  auto shifted = [&](int coord, bool imag_dir, double offset) {
    Vec w = z;
    w(coord) += imag_dir ? Complex{0.0, offset} : Complex{offset, 0.0};
    return w;
  };
  auto second = [&](int c1, bool i1, int c2, bool i2) {
    if (c1 == c2 && i1 == i2) {
      return (f(shifted(c1, i1, h)) - 2.0 * f(z) + f(shifted(c1, i1, -h))) / (h * h);
    }
    auto shift2 = [&](double o1, double o2) {
      Vec w = shifted(c1, i1, o1);
      w(c2) += i2 ? Complex{0.0, o2} : Complex{o2, 0.0};
      return f(w);
    };
    return (shift2(h, h) - shift2(h, -h) - shift2(-h, h) + shift2(-h, -h)) /
           (4.0 * h * h);
  };
  Mat hess(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double xx = second(i, false, j, false);
      double yy = second(i, true, j, true);
      double xy = second(i, false, j, true);
      double yx = second(i, true, j, false);
      hess(i, j) = 0.25 * Complex{xx + yy, xy - yx};
    }
  }
  return hess;
}

/// Connection Gamma^i_{jk} = g^{i lbar} d_j g_{k lbar} with the derivative
/// taken by differences of the supplied metric function and the inverse
/// taken numerically at the base point.
template <typename MetricFn>
ConnectionCoeffs connection_from_metric(MetricFn&& metric, const Vec& z, double h) {
  const int n = static_cast<int>(z.size());
  Mat g = metric(z);
  // Raised-index inverse: sum_l raised(i, l) g(k, l) = delta_ik.
  Mat raised = g.transpose().inverse();
  ConnectionCoeffs gamma(n);
  for (int j = 0; j < n; ++j) {
    Mat dg = wirtinger_z(metric, z, j, h);  // dg(k, l) = d_j g_{k lbar}
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        Complex sum{0.0, 0.0};
        for (int l = 0; l < n; ++l) sum += raised(i, l) * dg(k, l);
        gamma(i, j, k) = sum;
      }
    }
  }
  return gamma;
}

/// Curvature R^i_{j k lbar} = -d_lbar Gamma^i_{jk} by differences of the
/// supplied connection function.
template <typename ConnFn>
CurvatureTensor curvature_from_connection(ConnFn&& connection, const Vec& z,
                                          double h) {
  const int n = static_cast<int>(z.size());
  CurvatureTensor r(n);
  for (int l = 0; l < n; ++l) {
    auto slice = [&](const Vec& w) -> Mat {
      ConnectionCoeffs gamma = connection(w);
      Mat flat(n, n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) flat(i, j * n + k) = gamma(i, j, k);
      return flat;
    };
    Mat d = wirtinger_zbar(slice, z, l, h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) r(i, j, k, l) = -d(i, j * n + k);
  }
  return r;
}

}  // namespace qbundle::fd
