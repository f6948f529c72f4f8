// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/projective_atlas.hpp"

#include <cmath>
#include <string>

#include "qbundle/tolerances.hpp"

namespace qbundle {

bool HomogeneousPoint::equivalent_to(const HomogeneousPoint& other,
                                     double tolerance) const {
  if (coords.size() != other.coords.size()) return false;
  double scale_a = coords.cwiseAbs().maxCoeff();
  double scale_b = other.coords.cwiseAbs().maxCoeff();
  if (scale_a == 0.0 || scale_b == 0.0) return false;
  double worst = 0.0;
  for (int i = 0; i < coords.size(); ++i) {
    for (int j = i + 1; j < coords.size(); ++j) {
      Complex cross = coords(i) * other.coords(j) - coords(j) * other.coords(i);
      worst = std::max(worst, std::abs(cross) / (scale_a * scale_b));
    }
  }
  return worst <= tolerance;
}

HomogeneousPoint AffinePoint::lift() const {
  Vec z(coords.size() + 1);
  for (int a = 0; a <= n(); ++a) z(a) = ambient_coord(a);
  return HomogeneousPoint{std::move(z)};
}

AffinePoint to_chart(const HomogeneousPoint& Z, int j) {
  const int n = Z.n();
  if (j < 0 || j > n) throw ChartUndefined("chart index out of range");
  double norm = Z.coords.norm();
  if (norm == 0.0 || std::abs(Z.coords(j)) / norm <= tol::chart_cutoff) {
    throw ChartUndefined("chart " + std::to_string(j) +
                         " undefined: homogeneous coordinate below cutoff");
  }
  Vec z(n);
  for (int i = 0, slot = 0; i <= n; ++i) {
    if (i == j) continue;
    z(slot++) = Z.coords(i) / Z.coords(j);
  }
  return AffinePoint{j, std::move(z)};
}

bool in_overlap(const AffinePoint& p, int k) {
  if (k == p.chart) return true;
  if (k < 0 || k > p.n()) return false;
  HomogeneousPoint Z = p.lift();
  return std::abs(Z.coords(k)) / Z.coords.norm() > tol::chart_cutoff;
}

AffinePoint transition_coords(const AffinePoint& p, int k) {
  if (k == p.chart) return p;
  if (!in_overlap(p, k)) {
    throw OverlapUndefined("transition " + std::to_string(p.chart) + " -> " +
                           std::to_string(k) + " undefined: target coordinate vanishes");
  }
  return to_chart(p.lift(), k);
}

Mat transition_jacobian(const AffinePoint& p, int k) {
  const int n = p.n();
  const int j = p.chart;
  if (k == j) return Mat::Identity(n, n);
  if (!in_overlap(p, k)) {
    throw OverlapUndefined("jacobian " + std::to_string(j) + " -> " +
                           std::to_string(k) + " undefined: target coordinate vanishes");
  }
  const Complex zeta = p.coords(p.slot_of(k));  // ambient-k coordinate
  const Complex inv = Complex{1.0, 0.0} / zeta;
  const Complex inv2 = inv * inv;

  // Target coordinates: w_a = Z_a / zeta with Z_j = 1. Only d/d z_b for
  // b == a and b == k survive.
  Mat jac = Mat::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const int a = row < k ? row : row + 1;  // ambient index of target slot
    if (a == j) {
      jac(row, p.slot_of(k)) = -inv2;  // w = 1/zeta
    } else {
      jac(row, p.slot_of(a)) = inv;  // w = z_a / zeta
      jac(row, p.slot_of(k)) -= p.coords(p.slot_of(a)) * inv2;
    }
  }
  return jac;
}

std::vector<AffinePoint> sample_chart(int n, int chart, int count,
                                      std::uint64_t seed, double radius_min,
                                      double radius_max) {
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chart)));
  std::vector<AffinePoint> points;
  points.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z(i) = rng.annulus(radius_min, radius_max);
    points.push_back(AffinePoint{chart, std::move(z)});
  }
  return points;
}

std::vector<AffinePoint> sample_overlap(int n, int j, int k, int count,
                                        std::uint64_t seed) {
  (void)k;  // every sampled coordinate stays inside the annulus, so the
            // points lie in all n+1 charts at once
  return sample_chart(n, j, count, seed, tol::sample_radius_min,
                      tol::sample_radius_hi);
}

}  // namespace qbundle
