// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace qbundle::tol {

// Single source of truth for every numerical threshold used by the library,
// the CLI report suites and the acceptance checks. All values dimensionless.

// Charts and sampling. A chart is usable at a point when the chart's
// homogeneous coordinate, after normalizing the representative to unit norm,
// stays above the cutoff. Random overlap samples keep coordinate moduli
// inside [sample_radius_min, sample_radius_hi]; sample_radius_max is the hard
// documented bound.
inline constexpr double chart_cutoff = 1e-9;
inline constexpr double sample_radius_min = 0.3;
inline constexpr double sample_radius_hi = 1.8;
inline constexpr double sample_radius_max = 10.0;

// Transition-function identities.
inline constexpr double round_trip = 1e-12;
inline constexpr double scale_invariance = 1e-13;
inline constexpr double cocycle = 1e-10;
inline constexpr double reciprocal_pair = 1e-12;
inline constexpr double section_transition = 1e-10;
inline constexpr double veronese_pullback = 1e-12;
inline constexpr double pairing_drift = 1e-12;

// Finite-difference validation (central differences, step fd_step), relative
// Frobenius error of the analytic object against the stencil.
inline constexpr double fd_step = 1e-5;
inline constexpr double fd_jacobian_rel = 1e-6;
inline constexpr double fd_metric_rel = 1e-5;
inline constexpr double fd_connection_rel = 1e-5;
inline constexpr double fd_curvature_rel = 1e-4;

// Metric and curvature structure.
inline constexpr double hermiticity = 1e-13;
inline constexpr double line_curvature_hermiticity = 1e-12;
inline constexpr double linearity = 1e-13;
inline constexpr double prequantization = 1e-10;
inline constexpr double nonflat_witness_min = 0.01;

// Holonomy.
inline constexpr double holonomy_step_doubling = 1e-8;
inline constexpr double holonomy_min_deviation = 0.1;
inline constexpr double holonomy_flux_rel = 0.02;
inline constexpr double holonomy_small_loop = 1e-6;

// Volume normalization.
inline constexpr double volume_quadrature = 1e-6;
inline constexpr double volume_scaled_quadrature = 1e-4;
inline constexpr double volume_mc_rel = 0.01;

// Flatness reports: a bundle part counts as flat when both curvature norms
// and holonomy deviations stay below flatness_threshold at every sample; the
// flat contrast case must actually come in under flat_evidence.
inline constexpr double flatness_threshold = 1e-8;
inline constexpr double flat_evidence = 1e-10;

}  // namespace qbundle::tol
