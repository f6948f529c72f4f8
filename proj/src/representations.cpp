// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/representations.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qbundle {

std::uint64_t binomial(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= b; ++i) {
    acc = acc * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t section_dim(int n, int l) {
  if (n < 1) throw std::invalid_argument("section_dim: n must be >= 1");
  if (l < 0) return 0;
  return binomial(n + l, n);
}

std::uint64_t su3_dim(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("su3_dim: p, q must be >= 0");
  std::uint64_t up = static_cast<std::uint64_t>(p);
  std::uint64_t uq = static_cast<std::uint64_t>(q);
  return (up + 1) * (uq + 1) * (up + uq + 2) / 2;
}

std::vector<std::pair<int, int>> rep_match_search(int l, int p_max, int q_max) {
  if (l < 1) throw std::invalid_argument("rep_match_search: l must be >= 1");
  if (p_max < l || q_max < l)
    throw std::invalid_argument("rep_match_search: bounds must cover l");
  const std::uint64_t target = section_dim(2, l);
  std::vector<std::pair<int, int>> matches;
  for (int p = 0; p <= p_max; ++p) {
    for (int q = 0; q <= q_max; ++q) {
      if (su3_dim(p, q) == target) matches.emplace_back(p, q);
    }
  }
  return matches;
}

HomogeneousPoint veronese_map(const HomogeneousPoint& Z, int l) {
  if (l < 1) throw std::invalid_argument("veronese_map: degree must be >= 1");
  MonomialBasis basis = monomial_basis(Z.n(), l);
  Vec image(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t m = 0; m < basis.size(); ++m) {
    Complex value{1.0, 0.0};
    for (int i = 0; i <= Z.n(); ++i) value *= ipow(Z.coords(i), basis.exponents[m][i]);
    image(static_cast<Eigen::Index>(m)) = value;
  }
  return HomogeneousPoint{std::move(image)};
}

namespace {

/// Index of the pure power Z_j^l in the lexicographic basis.
std::size_t pure_power_index(const MonomialBasis& basis, int j) {
  for (std::size_t m = 0; m < basis.exponents.size(); ++m) {
    if (basis.exponents[m][j] == basis.l) return m;
  }
  throw std::logic_error("pure power missing from monomial basis");
}

}  // namespace

double veronese_pullback_residual(const AffinePoint& p, int k, int l) {
  const int j = p.chart;
  HomogeneousPoint image = veronese_map(p.lift(), l);
  MonomialBasis basis = monomial_basis(p.n(), l);
  const std::size_t alpha_j = pure_power_index(basis, j);
  const std::size_t alpha_k = pure_power_index(basis, k);

  // Hyperplane-bundle transition between the image charts picked out by the
  // pure powers: ratio of the two image coordinates.
  AffinePoint image_chart =
      to_chart(image, static_cast<int>(alpha_j));
  if (!in_overlap(image_chart, static_cast<int>(alpha_k))) {
    throw OverlapUndefined("veronese image leaves the target chart overlap");
  }
  Complex pulled_back =
      tau_transition(image_chart, static_cast<int>(alpha_k), PicardClass{1});
  Complex direct = tau_transition(p, k, PicardClass{l});
  return std::abs(pulled_back - direct);
}

}  // namespace qbundle
