// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/hermitian_geometry.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qbundle/tolerances.hpp"

using namespace qbundle;

namespace {

AffinePoint cp1_point(Complex z) { return AffinePoint{0, Vec::Constant(1, z)}; }

AffinePoint cp2_point(Complex a, Complex b) {
  Vec v(2);
  v << a, b;
  return AffinePoint{0, v};
}

}  // namespace

TEST_CASE("Kahler potential values") {
  CHECK(kahler_potential(cp1_point(0.0)) == 0.0);
  CHECK(kahler_potential(cp1_point(1.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(kahler_potential(cp2_point(1.0, 1.0)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("metric closed form at pinned points") {
  CHECK(fs_metric(cp1_point(0.0)).g == Mat::Identity(1, 1));

  CHECK(std::abs(fs_metric(cp1_point(1.0)).g(0, 0) - Complex{0.25, 0.0}) < 1e-15);

  Mat g = fs_metric(cp2_point(1.0, 0.0)).g;
  CHECK(std::abs(g(0, 0) - Complex{0.25, 0.0}) < 1e-15);
  CHECK(std::abs(g(1, 1) - Complex{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(g(0, 1)) < 1e-15);
}

TEST_CASE("metric matches the potential's mixed Hessian") {
  for (int n : {1, 2, 3}) {
    for (const AffinePoint& p : sample_chart(n, 0, 20, 31, 0.3, 1.5)) {
      Mat fd = oracle::mixed_hessian(
          [](const Vec& z) { return kahler_potential(AffinePoint{0, z}); }, p.coords);
      Mat g = fs_metric(p).g;
      CHECK((g - fd).norm() / fd.norm() <= tol::fd_metric_rel);
    }
  }
}

TEST_CASE("metric is Hermitian positive definite; inverse raises indices") {
  for (int n : {1, 2, 3}) {
    for (const AffinePoint& p : sample_chart(n, 0, 25, 8, 0.3, 1.8)) {
      Mat g = fs_metric(p).g;
      CHECK((g - g.adjoint()).norm() <= tol::hermiticity);
      Eigen::SelfAdjointEigenSolver<Mat> eigen(g);
      CHECK(eigen.eigenvalues().minCoeff() > 0.0);

      // sum_l ginv(i, l) g(k, l) = delta_ik
      Mat ginv = fs_metric_inverse(p);
      CHECK((ginv * g.transpose() - Mat::Identity(n, n)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("connection closed form and finite differences") {
  ConnectionCoeffs zero = chern_connection(cp1_point(0.0));
  CHECK(zero(0, 0, 0) == Complex{0.0, 0.0});

  // n = 1 at z = 1: Gamma = -2 zbar / (1 + |z|^2) = -1.
  CHECK(std::abs(chern_connection(cp1_point(1.0))(0, 0, 0) - Complex{-1.0, 0.0}) <
        1e-15);

  for (int n : {1, 2}) {
    auto metric_fn = [](const Vec& z) { return fs_metric(AffinePoint{0, z}).g; };
    for (const AffinePoint& p : sample_chart(n, 0, 15, 77, 0.3, 1.5)) {
      ConnectionCoeffs gamma = chern_connection(p);
      // Oracle route: Gamma^i_{jk} = g^{i lbar} d_j g_{k lbar} with the
      // derivative from central differences and the inverse from Eigen.
      Mat g = metric_fn(p.coords);
      Mat raised = g.transpose().inverse();
      double diff = 0.0;
      double ref = 0.0;
      for (int j = 0; j < n; ++j) {
        Mat dg = oracle::d_z(metric_fn, p.coords, j);
        for (int i = 0; i < n; ++i) {
          for (int k = 0; k < n; ++k) {
            Complex fd{0.0, 0.0};
            for (int l = 0; l < n; ++l) fd += raised(i, l) * dg(k, l);
            diff += std::norm(gamma(i, j, k) - fd);
            ref += std::norm(fd);
          }
        }
      }
      CHECK(std::sqrt(diff / ref) <= tol::fd_connection_rel);
    }
  }
}

TEST_CASE("tangent curvature: nonflat witness and finite differences") {
  CHECK(curvature_tangent(cp1_point(0.0)).frobenius_norm() > tol::nonflat_witness_min);
  // Closed form at the origin of CP^1: R = 2.
  CHECK(std::abs(curvature_tangent(cp1_point(0.0))(0, 0, 0, 0) - Complex{2.0, 0.0}) <
        1e-15);

  for (int n : {1, 2}) {
    auto gamma_fn = [](const Vec& z) { return chern_connection(AffinePoint{0, z}); };
    for (const AffinePoint& p : sample_chart(n, 0, 15, 13, 0.3, 1.5)) {
      CurvatureTensor r = curvature_tangent(p);
      CHECK(r.frobenius_norm() > tol::nonflat_witness_min);
      double diff = 0.0;
      double ref = 0.0;
      for (int l = 0; l < n; ++l) {
        auto slice = [&](const Vec& z) -> Mat {
          ConnectionCoeffs gamma = gamma_fn(z);
          Mat flat(n, n * n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) flat(i, j * n + k) = gamma(i, j, k);
          return flat;
        };
        Mat d = oracle::d_zbar(slice, p.coords, l);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              Complex fd = -d(i, j * n + k);
              diff += std::norm(r(i, j, k, l) - fd);
              ref += std::norm(fd);
            }
      }
      CHECK(std::sqrt(diff / ref) <= tol::fd_curvature_rel);
    }
  }
}

TEST_CASE("line curvature is linear in the class and equals the metric at l=1") {
  for (const AffinePoint& p : sample_chart(2, 0, 20, 3, 0.3, 1.8)) {
    CHECK(curvature_line(p, PicardClass{0}).norm() == 0.0);
    CHECK((curvature_line(p, PicardClass{1}) - fs_metric(p).g).norm() <= 1e-12);
    CHECK((curvature_line(p, PicardClass{3}) - 3.0 * curvature_line(p, PicardClass{1}))
              .norm() <= tol::linearity);
    Mat f = curvature_line(p, PicardClass{2});
    CHECK((f - f.adjoint()).norm() <= tol::line_curvature_hermiticity);
  }
}

TEST_CASE("prequantization identity") {
  CHECK(prequantization_residual(cp1_point(0.0)) <= 1e-14);
  CHECK(prequantization_residual(cp1_point(Complex{1.0, 1.0})) <= tol::prequantization);
  double worst = 0.0;
  for (const AffinePoint& p : sample_chart(2, 0, 50, 23, 0.3, 1.8)) {
    worst = std::max(worst, prequantization_residual(p));
  }
  CHECK(worst <= tol::prequantization);
}

TEST_CASE("holonomy: shrinking loop limit") {
  Loop tiny{cp1_point(0.0), 1e-4, Vec(), 200};
  CHECK(holonomy_loop(BundleKind::tangent, PicardClass{1}, tiny).deviation <=
        tol::holonomy_small_loop);
  CHECK(holonomy_loop(BundleKind::line, PicardClass{1}, tiny).deviation <=
        tol::holonomy_small_loop);
}

TEST_CASE("holonomy on CP^1 matches the enclosed curvature flux") {
  // Degree-1 bundle around the unit circle: angle pi, holonomy -1.
  Loop unit{cp1_point(0.0), 1.0, Vec(), 1000};
  HolonomyResult line = holonomy_loop(BundleKind::line, PicardClass{1}, unit);
  CHECK(line.deviation > tol::holonomy_min_deviation);
  CHECK(std::abs(line.transport(0, 0) - Complex{-1.0, 0.0}) < 1e-8);

  double line_flux = oracle::disk_integral(
      [](Complex z) {
        return curvature_line(cp1_point(z), PicardClass{1})(0, 0).real();
      },
      0.0, 1.0);
  double predicted = 2.0 * line_flux;  // rotation angle from the enclosed flux
  CHECK(std::abs(line.unwrapped_angle - predicted) <=
        tol::holonomy_flux_rel * std::abs(predicted));
  CHECK(line.unwrapped_angle == doctest::Approx(EIGEN_PI).epsilon(1e-6));

  // Tangent bundle at radius 0.5: angle 4 pi r^2 / (1 + r^2) = 0.8 pi.
  Loop half{cp1_point(0.0), 0.5, Vec(), 1000};
  HolonomyResult tangent = holonomy_loop(BundleKind::tangent, PicardClass{1}, half);
  double tangent_flux = oracle::disk_integral(
      [](Complex z) { return curvature_tangent(cp1_point(z))(0, 0, 0, 0).real(); },
      0.0, 0.5);
  CHECK(std::abs(tangent.unwrapped_angle - 2.0 * tangent_flux) <=
        tol::holonomy_flux_rel * std::abs(2.0 * tangent_flux));
  CHECK(tangent.unwrapped_angle == doctest::Approx(0.8 * EIGEN_PI).epsilon(1e-6));

  // The library's Gauss-panel flux agrees with the midpoint oracle.
  CHECK(enclosed_curvature_angle(BundleKind::line, PicardClass{1}, cp1_point(0.0), 1.0) ==
        doctest::Approx(predicted).epsilon(1e-6));
}

TEST_CASE("holonomy is stable under step doubling and reparameterization") {
  Loop unit{cp1_point(0.0), 1.0, Vec(), 1000};
  HolonomyResult coarse = holonomy_loop(BundleKind::tangent, PicardClass{1}, unit);
  Loop doubled = unit;
  doubled.steps = 2000;
  HolonomyResult fine = holonomy_loop(BundleKind::tangent, PicardClass{1}, doubled);
  CHECK((coarse.transport - fine.transport).norm() <= tol::holonomy_step_doubling);

  // Same circle traversed with non-uniform speed: s(t) = t - 0.2 sin(2 pi t).
  constexpr double two_pi = 2.0 * EIGEN_PI;
  auto reparam = [&](double t) {
    double s = t - 0.2 * std::sin(two_pi * t) / two_pi;
    double sdot = 1.0 - 0.2 * std::cos(two_pi * t);
    Complex z = std::exp(Complex{0.0, two_pi * s});
    Complex zdot = Complex{0.0, two_pi} * z * sdot;
    AffinePoint p = cp1_point(z);
    Mat a(1, 1);
    a(0, 0) = -chern_connection(p)(0, 0, 0) * zdot;
    return a;
  };
  Mat transported = integrate_frame_transport(reparam, 1, 2000);
  CHECK((coarse.transport - transported).norm() <= tol::holonomy_step_doubling);
}

TEST_CASE("holonomy on CP^2 transports the full frame") {
  Vec direction(2);
  direction << Complex{1.0, 0.0} / std::sqrt(2.0), Complex{0.0, 1.0} / std::sqrt(2.0);
  Loop loop{cp2_point(0.1, 0.2), 0.5, direction, 800};
  HolonomyResult r = holonomy_loop(BundleKind::tangent, PicardClass{1}, loop);
  CHECK(r.transport.rows() == 2);
  CHECK(r.deviation > 0.0);
  CHECK(std::isnan(r.unwrapped_angle));
  CHECK(std::abs(r.transport.determinant()) > 0.0);

  Loop doubled = loop;
  doubled.steps = 1600;
  HolonomyResult r2 = holonomy_loop(BundleKind::tangent, PicardClass{1}, doubled);
  CHECK((r.transport - r2.transport).norm() <= tol::holonomy_step_doubling);
}

TEST_CASE("holonomy requires at least 100 steps") {
  Loop bad{cp1_point(0.0), 1.0, Vec(), 50};
  CHECK_THROWS_AS(holonomy_loop(BundleKind::tangent, PicardClass{1}, bad),
                  std::invalid_argument);
}

TEST_CASE("volume: quadrature on CP^1") {
  IntegralResult r = volume_integral(1, IntegralMethod::quadrature, 64, 0);
  CHECK(std::abs(r.value - 1.0) <= tol::volume_quadrature);
  CHECK(r.scale_factor == 2.0);
  CHECK(std::abs(r.scaled_value() - 2.0) <= tol::volume_scaled_quadrature);
}

TEST_CASE("volume: Monte Carlo") {
  IntegralResult mc1 = volume_integral(1, IntegralMethod::monte_carlo, 200'000, 42);
  CHECK(std::abs(mc1.value - 1.0) <= 0.02);

  IntegralResult mc2 = volume_integral(2, IntegralMethod::monte_carlo, 1'000'000, 42);
  CHECK(std::abs(mc2.value - 1.0) <= tol::volume_mc_rel);
  CHECK(std::abs(mc2.scaled_value() - 3.0) <= 3.0 * tol::volume_mc_rel);
  CHECK(mc2.estimated_error < 0.01);

  // Identical seeds reproduce bitwise; worker count does not change the sum.
  IntegralResult again = volume_integral(2, IntegralMethod::monte_carlo, 1'000'000, 42);
  CHECK(mc2.value == again.value);
  IntegralResult threaded =
      volume_integral(2, IntegralMethod::monte_carlo, 1'000'000, 42, 4);
  CHECK(mc2.value == threaded.value);

  IntegralResult mc3 = volume_integral(3, IntegralMethod::monte_carlo, 400'000, 11);
  CHECK(std::abs(mc3.value - 1.0) <= 0.05);
}

TEST_CASE("volume rejects unsupported configurations") {
  CHECK_THROWS_AS(volume_integral(2, IntegralMethod::quadrature, 64, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(volume_integral(4, IntegralMethod::monte_carlo, 100, 0),
                  std::invalid_argument);
}
