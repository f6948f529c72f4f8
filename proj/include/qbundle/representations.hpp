// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qbundle/line_bundles.hpp"
#include "qbundle/projective_atlas.hpp"

namespace qbundle {

/// Exact binomial coefficient C(a, b); throws std::overflow_error if the
/// value exceeds 64 bits (128-bit intermediates keep the stepwise products
/// exact well past the documented n + l bounds).
std::uint64_t binomial(int a, int b);

/// Dimension of the space of global holomorphic sections of the degree-l
/// bundle on CP^n: C(n+l, n) for l >= 0, zero for l < 0.
std::uint64_t section_dim(int n, int l);

/// Dimension (p+1)(q+1)(p+q+2)/2 of the (p, q) irreducible representation of
/// SU(3); symmetric in p and q.
std::uint64_t su3_dim(int p, int q);

/// All (p, q) with p <= p_max, q <= q_max whose SU(3) representation
/// dimension equals section_dim(2, l). Brute force over the grid; always
/// contains (l, 0) and (0, l).
std::vector<std::pair<int, int>> rep_match_search(int l, int p_max, int q_max);

/// Degree-l monomial embedding of CP^n into CP^{C(n+l,n)-1}: coordinates are
/// all degree-l monomials of Z in lexicographic exponent order. Well defined
/// on equivalence classes (scaling Z by lambda scales the image by
/// lambda^l).
HomogeneousPoint veronese_map(const HomogeneousPoint& Z, int l);

/// | t_O(1) between the image charts of the pure powers Z_j^l and Z_k^l
/// minus t_jk of the degree-l bundle at p |. Both equal (Z_k / Z_j)^l, so
/// the hyperplane bundle pulls back to the degree-l bundle along the
/// embedding; the residual is rounding only.
double veronese_pullback_residual(const AffinePoint& p, int k, int l);

}  // namespace qbundle
