// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qbundle/hermitian_geometry.hpp"
#include "qbundle/quantum_bundle.hpp"
#include "qbundle/types.hpp"

namespace qbundle {

/// A compact complex manifold presented as a finite atlas: charts, overlap
/// predicates, coordinate transitions with their Jacobians, and optional
/// line-bundle and Kahler data. Geometry callbacks (metric, connection,
/// curvatures) are closed-form suppliers validated against the potential and
/// the transitions by finite differences; flatness evidence is computed from
/// them, not from difference stencils, so exact zeros stay exact.
struct AtlasSpec {
  std::string name;
  int dim = 1;     // complex dimension
  int charts = 2;  // r >= 2 for a compact manifold
  double loop_radius = 0.1;  // holonomy loop size guaranteed to stay in-chart

  std::function<bool(int chart, const Vec& coords)> in_chart;
  std::function<bool(int chart, const Vec& coords, int other)> in_overlap;
  std::function<Vec(int from, const Vec& coords, int to)> transition;
  std::function<Mat(int from, const Vec& coords, int to)> jacobian;

  // Optional line-bundle data: transition scalars per Picard class plus the
  // matching connection form and curvature. Absent data means only the
  // trivial class is available.
  std::function<Complex(int from, const Vec& coords, int to, PicardClass cls)>
      line_transition;
  std::function<Vec(int chart, const Vec& coords, PicardClass cls)> line_connection;
  std::function<Mat(int chart, const Vec& coords, PicardClass cls)> line_curvature;

  // Optional Kahler data.
  std::function<double(int chart, const Vec& coords)> kahler_potential;
  std::function<Mat(int chart, const Vec& coords)> metric;
  std::function<ConnectionCoeffs(int chart, const Vec& coords)> connection;
  std::function<CurvatureTensor(int chart, const Vec& coords)> tangent_curvature;

  /// Deterministic in-chart sample batch.
  std::function<std::vector<Vec>(int chart, int count, std::uint64_t seed)> sample;
};

/// Built-in atlas for CP^n wired directly to the chart, bundle and geometry
/// routines, so the generic bundle reproduces their results exactly.
AtlasSpec cpn_atlas(int n);

/// Four overlapping translated fundamental-domain charts covering the
/// complex torus C / (Z + modulus Z); transitions are lattice translations
/// with unit Jacobian, the Kahler potential |z|^2 gives a constant metric,
/// and the supplied line-bundle data is trivial. Throws InvalidModulus
/// unless Im(modulus) > 0.
AtlasSpec torus_atlas(Complex modulus);

/// Atlas from a JSON description: {"type": "torus", "modulus": [re, im]} or
/// {"type": "cpn", "n": n}.
AtlasSpec load_atlas(const nlohmann::json& description);

/// Sampled validation of the atlas invariants: chart count, biholomorphic
/// round trips, Jacobians against finite differences, line-transition
/// reciprocity and cocycles, metric against the potential. Throws
/// InvalidAtlas naming the violated invariant.
void validate_atlas(const AtlasSpec& atlas, int samples = 20,
                    std::uint64_t seed = 2026);

/// The quantum bundle of rank dim+1 over a validated atlas. Same contracts
/// as the CP^n-specific operations, generic over the atlas.
class QHBundle {
 public:
  QHBundle(AtlasSpec atlas, PicardClass cls,
           ExcitationConvention convention = ExcitationConvention::tangent);

  const AtlasSpec& atlas() const { return atlas_; }
  PicardClass picard_class() const { return cls_; }

  /// Block-diagonal fiber transition at a point of `from`.
  Mat qh_transition(int from, const Vec& coords, int to) const;

  /// Transport (coords, fiber components) to chart `to`; returns the new
  /// coordinates and components.
  std::pair<Vec, Vec> transport_state(int from, const Vec& coords,
                                      const Vec& components, int to) const;

  /// Max residual of the transition chain over seeded samples; degenerates
  /// to the round trip when the three charts are not distinct.
  CocycleReport cocycle_residual(int j, int k, int m, int samples,
                                 std::uint64_t seed) const;

  /// Parallel transport of the tangent frame (or the line fiber) around a
  /// circle of the atlas loop radius centered at `center`. Throws
  /// LoopLeavesChart when the loop exits the chart's valid region.
  HolonomyResult holonomy(BundleKind kind, int chart, const Vec& center,
                          double radius, int steps) const;

 private:
  AtlasSpec atlas_;
  PicardClass cls_;
  ExcitationConvention convention_;
};

/// Validates the atlas, then wraps it. Throws InvalidAtlas if line-bundle
/// data is missing for a nontrivial Picard class.
QHBundle build_qh_bundle(AtlasSpec atlas, PicardClass cls,
                         ExcitationConvention convention = ExcitationConvention::tangent);

struct FlatnessReport {
  std::string manifold;
  PicardClass cls;
  int samples = 0;
  std::uint64_t seed = 0;
  bool tangent_flat = false;
  bool line_flat = false;
  bool qh_flat = false;  // tangent_flat AND line_flat by construction
  double max_tangent_curvature = 0.0;
  double max_tangent_holonomy = 0.0;
  double max_line_curvature = 0.0;
  double max_line_holonomy = 0.0;
};

/// Evidence-based flatness verdict for the tangent and line summands over
/// sampled points and loops; the quantum bundle is flat exactly when both
/// parts are.
FlatnessReport flatness_report(const AtlasSpec& atlas, PicardClass cls,
                               int samples, std::uint64_t seed);

void to_json(nlohmann::json& j, const FlatnessReport& r);

}  // namespace qbundle
