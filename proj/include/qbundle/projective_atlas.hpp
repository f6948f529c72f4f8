// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "qbundle/errors.hpp"
#include "qbundle/types.hpp"

namespace qbundle {

/// A point of CP^n in homogeneous coordinates Z_0, ..., Z_n. Representatives
/// are stored unnormalized; two points are the same element of CP^n iff the
/// coordinate vectors are proportional by a nonzero complex scalar.
struct HomogeneousPoint {
  Vec coords;  // n+1 entries, not all zero

  int n() const { return static_cast<int>(coords.size()) - 1; }

  /// Scale-invariant projective equivalence: all 2x2 cross products
  /// Z_i W_j - Z_j W_i vanish relative to the largest coordinate moduli.
  bool equivalent_to(const HomogeneousPoint& other, double tolerance = 1e-12) const;
};

/// A point expressed in one affine chart. Chart indices are zero-based,
/// 0..n. Coordinates are the ratios Z_i / Z_chart in ambient order with the
/// chart's own index omitted.
struct AffinePoint {
  int chart = 0;
  Vec coords;  // n entries

  int n() const { return static_cast<int>(coords.size()); }

  /// Ambient index carried by coordinate slot s (skips the chart index).
  int ambient_index(int slot) const { return slot < chart ? slot : slot + 1; }

  /// Coordinate slot holding ambient index a; a must differ from the chart.
  int slot_of(int ambient) const { return ambient < chart ? ambient : ambient - 1; }

  /// Homogeneous coordinate Z_a in the chart gauge Z_chart = 1.
  Complex ambient_coord(int ambient) const {
    return ambient == chart ? Complex{1.0, 0.0} : coords(slot_of(ambient));
  }

  /// Homogeneous representative with 1 inserted at the chart index.
  HomogeneousPoint lift() const;
};

/// Project a homogeneous point to chart j: coords[i] = Z_i / Z_j.
/// Throws ChartUndefined when |Z_j| (unit-norm gauge) falls below the chart
/// cutoff.
AffinePoint to_chart(const HomogeneousPoint& Z, int j);

/// Whether chart k is usable at the point (its homogeneous coordinate stays
/// above the cutoff); k == p.chart is always true.
bool in_overlap(const AffinePoint& p, int k);

/// Re-express p in chart k. Throws OverlapUndefined off the overlap.
/// transition_coords(transition_coords(p, k), p.chart) == p to rounding.
AffinePoint transition_coords(const AffinePoint& p, int k);

/// Holomorphic Jacobian d z_(k) / d z_(j) of the chart transition at p,
/// rows/columns in the two charts' slot order. Identity when k == p.chart.
Mat transition_jacobian(const AffinePoint& p, int k);

/// Deterministic points of chart j lying in the overlap with chart k (in
/// fact in every chart: each coordinate modulus is kept inside the sampling
/// annulus, so all homogeneous coordinates stay away from zero).
std::vector<AffinePoint> sample_overlap(int n, int j, int k, int count,
                                        std::uint64_t seed);

/// Same sampler with an explicit modulus window; used where a check needs a
/// tighter annulus than the default.
std::vector<AffinePoint> sample_chart(int n, int chart, int count,
                                      std::uint64_t seed, double radius_min,
                                      double radius_max);

}  // namespace qbundle
