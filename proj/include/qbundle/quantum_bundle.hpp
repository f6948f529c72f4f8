// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qbundle/line_bundles.hpp"
#include "qbundle/projective_atlas.hpp"
#include "qbundle/types.hpp"

namespace qbundle {

/// How the n excitation components respond to chart changes. The default
/// transports them as tangent vectors (plain Jacobian); the cotangent
/// convention uses the inverse-transpose instead. Both satisfy the cocycle
/// identity; they are related by the tangent/cotangent identification.
enum class ExcitationConvention { tangent, cotangent };

/// A fiber vector of the rank-(n+1) quantum bundle over one chart: the
/// vacuum amplitude (line-bundle summand) plus n excitation amplitudes
/// (tangent summand). The dimension is n+1 for every Picard class; the class
/// only changes how the vacuum transforms.
struct FiberState {
  AffinePoint point;
  Complex vacuum{0.0, 0.0};
  Vec excitations;
  PicardClass cls;

  int chart() const { return point.chart; }
  int n() const { return point.n(); }

  /// Full component vector (vacuum first).
  Vec components() const;
};

/// Block-diagonal transition of the quantum bundle between two charts at a
/// point: scalar degree-l block plus the n x n coordinate-change block, with
/// exactly zero off-diagonal blocks.
struct QHTransition {
  int from_chart = 0;
  int to_chart = 0;
  AffinePoint point;  // expressed in from_chart
  PicardClass cls;
  Mat matrix;  // (n+1) x (n+1)

  Complex vacuum_block() const { return matrix(0, 0); }
  Mat excitation_block() const {
    return matrix.bottomRightCorner(matrix.rows() - 1, matrix.cols() - 1);
  }
};

struct CocycleReport {
  std::array<int, 3> charts{0, 0, 0};
  int samples = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  bool pass = false;
};

/// Ordered labels of the fiber basis over a chart: the vacuum followed by
/// the n excitation states.
std::vector<std::string> fiber_frame(int chart, int n, PicardClass cls);

/// Assemble the block-diagonal fiber transition matrix from a line-bundle
/// scalar and a coordinate Jacobian. Shared by the CP^n path and the generic
/// atlas path so the two produce identical floating-point results.
Mat assemble_qh_matrix(Complex line_scalar, const Mat& jacobian, PicardClass cls,
                       ExcitationConvention convention);

/// Fiber transition of the quantum bundle from p's chart to chart k. The
/// excitation block is the coordinate Jacobian for l >= 0 and its
/// inverse-transpose for l < 0 (defining versus dual behaviour); only the
/// scalar block varies with |l|.
QHTransition qh_transition(const AffinePoint& p, int k, PicardClass cls,
                           ExcitationConvention convention = ExcitationConvention::tangent);

/// Carry a fiber vector to chart k: components multiplied by the transition
/// matrix, base point re-expressed in chart k.
FiberState transport_state(const FiberState& s, int k,
                           ExcitationConvention convention = ExcitationConvention::tangent);

/// Transport a covector (dual fiber vector) to chart k with the
/// inverse-transpose matrix, so the bilinear pairing sum_i c_i v_i is
/// preserved under joint transport.
FiberState dual_transport(const FiberState& c, int k,
                          ExcitationConvention convention = ExcitationConvention::tangent);

/// Bilinear dual pairing of a covector against a vector on the same chart.
Complex dual_pairing(const FiberState& covector, const FiberState& vector);

/// Max residual of T_mj T_km T_jk - I over seeded samples of the triple
/// overlap (points transported consistently). For n = 1 only chart pairs
/// exist and the check degenerates to the round trip T_kj T_jk - I.
CocycleReport cocycle_residual(int n, int j, int k, int m, PicardClass cls,
                               int samples, std::uint64_t seed,
                               ExcitationConvention convention = ExcitationConvention::tangent);

/// || T - T^t || for the 2 x 2 transition at p; the block-diagonal structure
/// makes every CP^1 transition symmetric, so this is exactly zero. Throws
/// WrongDimension unless n = 1.
double su2_selfduality_check(const AffinePoint& p, PicardClass cls);

// JSON schema: {"n", "l", "chart", "point": [[re, im], ...],
// "vacuum": [re, im], "excitations": [[re, im], ...]}.
void to_json(nlohmann::json& j, const FiberState& s);
void from_json(const nlohmann::json& j, FiberState& s);

}  // namespace qbundle
