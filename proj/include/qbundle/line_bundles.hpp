// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qbundle/projective_atlas.hpp"
#include "qbundle/types.hpp"

namespace qbundle {

/// Degree of a holomorphic line bundle on CP^n. The Picard group is the
/// integers: l > 0 are powers of the hyperplane bundle, l < 0 powers of the
/// tautological bundle, l = 0 the trivial bundle.
struct PicardClass {
  int l = 0;
};

/// Degree-l monomials in the n+1 homogeneous coordinates, exponent tuples in
/// lexicographic order (Z_0 ranked highest). Empty for l < 0.
struct MonomialBasis {
  int n = 0;
  int l = 0;
  std::vector<std::vector<int>> exponents;

  std::size_t size() const { return exponents.size(); }
};

MonomialBasis monomial_basis(int n, int l);

/// A global holomorphic section of the degree-l bundle: a homogeneous
/// polynomial of degree l, stored as coefficients against a MonomialBasis.
struct GlobalSection {
  MonomialBasis basis;
  Vec coefficients;

  /// Single monomial Z^e with coefficient 1.
  static GlobalSection monomial(int n, const std::vector<int>& exponent);
};

/// Scalar transition of the degree-l bundle from p's chart j to chart k:
/// (Z_k / Z_j)^l in the chart-j gauge. Satisfies t_jk * t_kj = 1 and the
/// triple cocycle identity on overlaps.
Complex tau_transition(const AffinePoint& p, int k, PicardClass cls);

/// Unit-modulus gauge t/|t| of the same transition, for reporting transports
/// in a unitary frame. The holomorphic scalar above is what all bundle
/// arithmetic uses; it is not unit modulus.
Complex tau_transition_unitary(const AffinePoint& p, int k, PicardClass cls);

/// Local representative of the section in p's chart: the defining polynomial
/// evaluated on the chart gauge lift (Z_chart = 1), i.e. P(Z) / Z_chart^l.
Complex section_local(const GlobalSection& s, const AffinePoint& p);

/// |f_j(p) - t_jk(p) f_k(p')| with p' the transition of p to chart k; zero in
/// exact arithmetic for every global section.
double section_transition_residual(const GlobalSection& s, const AffinePoint& p,
                                   int k);

// JSON schema: {"n": int, "l": int, "coefficients": [[re, im], ...]} in
// lexicographic basis order.
void to_json(nlohmann::json& j, const GlobalSection& s);
void from_json(const nlohmann::json& j, GlobalSection& s);

}  // namespace qbundle
