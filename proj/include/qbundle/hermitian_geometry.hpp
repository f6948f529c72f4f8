// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qbundle/line_bundles.hpp"
#include "qbundle/projective_atlas.hpp"
#include "qbundle/types.hpp"

namespace qbundle {

/// Fubini-Study metric components g_{i jbar} at a point, as the matrix
/// G(i, j) = g_{i jbar}. Hermitian and positive definite.
struct MetricAtPoint {
  AffinePoint point;
  Mat g;
};

/// Chern connection coefficients Gamma^i_{jk} (symmetric in j, k).
class ConnectionCoeffs {
 public:
  ConnectionCoeffs() = default;
  explicit ConnectionCoeffs(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n) {}

  int n() const { return n_; }
  Complex& operator()(int i, int j, int k) { return data_[idx(i, j, k)]; }
  const Complex& operator()(int i, int j, int k) const { return data_[idx(i, j, k)]; }

  /// Contraction A^i_k = Gamma^i_{jk} v^j, the matrix acting on a frame being
  /// transported along a curve with holomorphic velocity v.
  Mat contract_velocity(const Vec& v) const;

  double frobenius_norm() const;

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<Complex> data_;
};

/// Curvature tensor R^i_{j k lbar} of the holomorphic tangent bundle.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int n)
      : n_(n), data_(static_cast<std::size_t>(n) * n * n * n) {}

  int n() const { return n_; }
  Complex& operator()(int i, int j, int k, int l) { return data_[idx(i, j, k, l)]; }
  const Complex& operator()(int i, int j, int k, int l) const {
    return data_[idx(i, j, k, l)];
  }

  double frobenius_norm() const;

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }
  int n_ = 0;
  std::vector<Complex> data_;
};

/// Tangent curvature plus the line-bundle curvature F_{i jbar} for one
/// Picard class, evaluated at the same point.
struct CurvatureAtPoint {
  AffinePoint point;
  CurvatureTensor tangent;
  Mat line;
};

/// Kahler potential K = log(1 + |z|^2) of the Fubini-Study metric in any
/// affine chart.
double kahler_potential(const AffinePoint& p);

/// Coefficient matrix of the Kahler form, Omega(i, j) = d_i d_jbar K,
/// computed by the quotient-rule route (S delta_ij - zbar_i z_j) / S^2.
/// Algebraically equal to the metric; kept as an independent evaluation path
/// for the prequantization identity.
Mat symplectic_form(const AffinePoint& p);

/// Closed-form Fubini-Study metric delta_ij / S - zbar_i z_j / S^2.
MetricAtPoint fs_metric(const AffinePoint& p);

/// Raised inverse metric g^{i lbar} = S (delta_il + z_i zbar_l), satisfying
/// g^{i lbar} g_{k lbar} = delta_ik.
Mat fs_metric_inverse(const AffinePoint& p);

/// Chern connection Gamma^i_{jk} = g^{i lbar} d_j g_{k lbar}; for the
/// Fubini-Study metric this is -(delta_ik zbar_j + delta_ij zbar_k) / S.
ConnectionCoeffs chern_connection(const AffinePoint& p);

/// Tangent curvature R^i_{j k lbar} = -d_lbar Gamma^i_{jk}.
CurvatureTensor curvature_tangent(const AffinePoint& p);

/// Line-bundle curvature F_{i jbar} = l * d_i d_jbar K = l * g_{i jbar};
/// exactly linear in the Picard class.
Mat curvature_line(const AffinePoint& p, PicardClass cls);

/// Connection 1-form coefficients theta_i of the degree-l bundle in the
/// chart gauge: theta_i = -l zbar_i / S. Parallel sections obey
/// s' = -theta(gamma') s.
Vec line_connection(const AffinePoint& p, PicardClass cls);

/// Frobenius norm of curvature_line(p, 1) minus the Kahler-form coefficient
/// matrix. With the convention omega = (i / 2 pi) d dbar K, the
/// prequantization proportionality F = -2 pi i omega reduces to exactly this
/// coefficient identity, so the residual vanishes in exact arithmetic.
double prequantization_residual(const AffinePoint& p);

enum class BundleKind { tangent, line };

/// A circle inside one chart: gamma(t) = center + radius exp(2 pi i t) *
/// direction, t in [0, 1], with direction a unit vector of C^n.
struct Loop {
  AffinePoint center;
  double radius = 1.0;
  Vec direction;  // defaults to the first coordinate axis when empty
  int steps = 1000;
};

struct HolonomyResult {
  Loop loop;
  BundleKind kind = BundleKind::tangent;
  PicardClass cls;
  Mat transport;           // n x n frame for tangent, 1 x 1 for line
  double deviation = 0.0;  // operator-norm distance to the identity
  /// Continuously accumulated rotation angle of the transported scalar; only
  /// for one-dimensional transports (line bundle, or tangent with n = 1),
  /// NaN otherwise. Free of branch ambiguity, so it can be compared against
  /// the enclosed curvature flux directly.
  double unwrapped_angle = 0.0;
};

/// Parallel transport of a fiber frame around the loop with the classical
/// 4th-order one-step integrator: M' = -Gamma(gamma) gamma' M (tangent) or
/// s' = -theta(gamma') s (line). Optionally records the trajectory as
/// (t, frame entries) rows for CSV export.
HolonomyResult holonomy_loop(BundleKind kind, PicardClass cls, const Loop& loop,
                             std::vector<std::pair<double, Vec>>* trajectory = nullptr);

/// Quadrature oracle for the holonomy angle on CP^1: the rotation angle
/// predicted by the curvature enclosed in the disk, 2 * integral of the
/// curvature coefficient over the disk. Throws WrongDimension for n != 1.
double enclosed_curvature_angle(BundleKind kind, PicardClass cls,
                                const AffinePoint& center, double radius,
                                int radial_panels = 64, int angular_points = 64);

enum class IntegralMethod { quadrature, monte_carlo };

struct IntegralResult {
  int n = 1;
  double value = 0.0;            // integral of the unit-normalized volume form
  double estimated_error = 0.0;  // refinement difference or MC standard error
  IntegralMethod method = IntegralMethod::quadrature;
  double scale_factor = 1.0;  // lambda with integral of (lambda omega)^n = n+1
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;

  double scaled_value() const;  // value rescaled by lambda^n
};

/// Integral of the Fubini-Study volume form over the dense chart, evaluated
/// through the metric determinant. The unit-normalized convention
/// omega = (i / 2 pi) d dbar K integrates to exactly 1; the scale factor
/// lambda = (n+1)^{1/n} restores the n+1 normalization. Quadrature (radial
/// tan substitution, composite Gauss rule) supports n = 1; Monte Carlo with
/// the same per-coordinate substitution supports n in {1, 2, 3}. MC results
/// are reproducible for a fixed seed and independent of the worker count
/// (fixed-size sample chunks, deterministic per-chunk seeding, ordered
/// reduction).
IntegralResult volume_integral(int n, IntegralMethod method, std::uint64_t samples,
                               std::uint64_t seed, int workers = 1);

/// Shared fixed-step RK4 frame transport on [0, 1]: M' = A(t) M, M(0) = I.
/// Exposed for atlas-generic holonomy.
Mat integrate_frame_transport(const std::function<Mat(double)>& coefficient,
                              int dim, int steps,
                              std::vector<std::pair<double, Vec>>* trajectory = nullptr,
                              double* unwrapped_angle = nullptr);

}  // namespace qbundle
