// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/line_bundles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "qbundle/representations.hpp"
#include "qbundle/tolerances.hpp"

using namespace qbundle;

namespace {

AffinePoint cp1_point(Complex z) { return AffinePoint{0, Vec::Constant(1, z)}; }

}  // namespace

TEST_CASE("tau_transition forced values") {
  AffinePoint p = cp1_point(2.0);
  CHECK(tau_transition(p, 1, PicardClass{1}) == Complex{2.0, 0.0});
  CHECK(tau_transition(p, 1, PicardClass{0}) == Complex{1.0, 0.0});
  CHECK(tau_transition(p, 1, PicardClass{-2}) == Complex{0.25, 0.0});
  CHECK_THROWS_AS(tau_transition(cp1_point(0.0), 1, PicardClass{1}), OverlapUndefined);
}

TEST_CASE("tau transitions are reciprocal and dual classes invert") {
  for (const AffinePoint& p : sample_overlap(2, 0, 1, 40, 5)) {
    for (int l = -3; l <= 3; ++l) {
      Complex t = tau_transition(p, 1, PicardClass{l});
      Complex back = tau_transition(transition_coords(p, 1), 0, PicardClass{l});
      CHECK(std::abs(t * back - Complex{1.0, 0.0}) <= tol::reciprocal_pair);
      Complex dual = tau_transition(p, 1, PicardClass{-l});
      CHECK(std::abs(dual - Complex{1.0, 0.0} / t) <= tol::reciprocal_pair);
    }
  }
}

TEST_CASE("tau cocycle on triple overlaps") {
  for (int l = -3; l <= 3; ++l) {
    for (const AffinePoint& p : sample_overlap(2, 0, 1, 40, 17)) {
      Complex t01 = tau_transition(p, 1, PicardClass{l});
      AffinePoint p1 = transition_coords(p, 1);
      Complex t12 = tau_transition(p1, 2, PicardClass{l});
      AffinePoint p2 = transition_coords(p1, 2);
      Complex t20 = tau_transition(p2, 0, PicardClass{l});
      CHECK(std::abs(t01 * t12 * t20 - Complex{1.0, 0.0}) <= tol::cocycle);
    }
  }
}

TEST_CASE("unitary gauge has unit modulus") {
  for (const AffinePoint& p : sample_overlap(1, 0, 1, 10, 3)) {
    Complex u = tau_transition_unitary(p, 1, PicardClass{2});
    CHECK(std::abs(std::abs(u) - 1.0) <= 1e-15);
  }
}

TEST_CASE("monomial basis dimensions and ordering") {
  CHECK(monomial_basis(1, 1).size() == 2);
  CHECK(monomial_basis(3, 0).size() == 1);
  CHECK(monomial_basis(2, -1).size() == 0);

  MonomialBasis b = monomial_basis(1, 2);
  REQUIRE(b.size() == 3);
  CHECK(b.exponents[0] == std::vector<int>{2, 0});
  CHECK(b.exponents[1] == std::vector<int>{1, 1});
  CHECK(b.exponents[2] == std::vector<int>{0, 2});

  for (int n = 1; n <= 6; ++n) {
    for (int l = 0; l <= 8; ++l) {
      MonomialBasis basis = monomial_basis(n, l);
      CHECK(basis.size() == binomial(n + l, n));
      for (const auto& e : basis.exponents) {
        int total = 0;
        for (int x : e) total += x;
        CHECK(total == l);
      }
      // Strictly decreasing lexicographic order implies distinctness.
      for (std::size_t i = 1; i < basis.size(); ++i) {
        CHECK(basis.exponents[i - 1] > basis.exponents[i]);
      }
    }
  }
}

TEST_CASE("section_local evaluates the defining polynomial") {
  GlobalSection z0 = GlobalSection::monomial(1, {1, 0});
  GlobalSection z1 = GlobalSection::monomial(1, {0, 1});
  GlobalSection z0z1 = GlobalSection::monomial(1, {1, 1});

  CHECK(section_local(z0, cp1_point(5.0)) == Complex{1.0, 0.0});
  CHECK(section_local(z1, cp1_point(2.0)) == Complex{2.0, 0.0});
  CHECK(section_local(z0z1, cp1_point(3.0)) == Complex{3.0, 0.0});
}

TEST_CASE("section transition rule: forced example") {
  // f_0 = 1, t = 2 (l = 1), f_1 = 0.5 at z = 2.
  GlobalSection z0 = GlobalSection::monomial(1, {1, 0});
  CHECK(section_transition_residual(z0, cp1_point(2.0), 1) == 0.0);
}

TEST_CASE("section transition rule: quadratic section") {
  GlobalSection s{monomial_basis(1, 2), Vec(3)};
  s.coefficients << Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0};
  for (const AffinePoint& p : sample_overlap(1, 0, 1, 30, 21)) {
    CHECK(section_transition_residual(s, p, 1) <= 1e-12);
  }
}

TEST_CASE("section transition rule: random sections on CP^2") {
  Rng rng(99);
  MonomialBasis basis = monomial_basis(2, 3);
  GlobalSection s{basis, Vec(static_cast<Eigen::Index>(basis.size()))};
  for (Eigen::Index i = 0; i < s.coefficients.size(); ++i) {
    s.coefficients(i) = rng.annulus(0.1, 1.0);
  }
  double worst = 0.0;
  for (int j = 0; j <= 2; ++j) {
    for (const AffinePoint& p : sample_overlap(2, j, (j + 1) % 3, 34, 55 + j)) {
      for (int k = 0; k <= 2; ++k) {
        if (k == j) continue;
        worst = std::max(worst, section_transition_residual(s, p, k));
      }
    }
  }
  CHECK(worst <= tol::section_transition);
}

TEST_CASE("global section JSON round trip") {
  GlobalSection s{monomial_basis(2, 2), Vec(6)};
  for (Eigen::Index i = 0; i < 6; ++i) {
    s.coefficients(i) = Complex{0.5 * i, -0.25 * i};
  }
  nlohmann::json j = s;
  GlobalSection back = j.get<GlobalSection>();
  CHECK(back.basis.n == 2);
  CHECK(back.basis.l == 2);
  CHECK((back.coefficients - s.coefficients).norm() == 0.0);

  nlohmann::json bad = j;
  bad["coefficients"].erase(0);
  CHECK_THROWS(bad.get<GlobalSection>());
}
