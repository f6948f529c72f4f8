// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/quantum_bundle.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "qbundle/tolerances.hpp"

using namespace qbundle;

namespace {

AffinePoint cp1_point(Complex z) { return AffinePoint{0, Vec::Constant(1, z)}; }

FiberState make_state(const AffinePoint& p, Complex vacuum, const Vec& exc, int l) {
  return FiberState{p, vacuum, exc, PicardClass{l}};
}

}  // namespace

TEST_CASE("fiber frame labels") {
  auto frame2 = fiber_frame(0, 2, PicardClass{1});
  REQUIRE(frame2.size() == 3);
  CHECK(frame2[0] == "vacuum(chart=0,l=1)");
  CHECK(frame2[1] == "excitation_1(chart=0)");

  CHECK(fiber_frame(1, 1, PicardClass{0}).size() == 2);
  // The Picard class changes only the vacuum's bundle, never the dimension.
  for (int l : {-3, 0, 5}) CHECK(fiber_frame(0, 3, PicardClass{l}).size() == 4);
}

TEST_CASE("qh_transition block values on CP^1") {
  QHTransition t = qh_transition(cp1_point(2.0), 1, PicardClass{1});
  CHECK(t.matrix.rows() == 2);
  CHECK(t.matrix(0, 0) == Complex{2.0, 0.0});
  CHECK(std::abs(t.matrix(1, 1) - Complex{-0.25, 0.0}) < 1e-15);
  CHECK(t.matrix(0, 1) == Complex{0.0, 0.0});
  CHECK(t.matrix(1, 0) == Complex{0.0, 0.0});

  // l = 0: the vacuum transforms trivially.
  CHECK(qh_transition(cp1_point(2.0), 1, PicardClass{0}).vacuum_block() ==
        Complex{1.0, 0.0});

  // Same chart: identity.
  CHECK(qh_transition(cp1_point(2.0), 0, PicardClass{3}).matrix ==
        Mat::Identity(2, 2));
}

TEST_CASE("qh_transition determinant splits into the two blocks") {
  for (const AffinePoint& p : sample_overlap(2, 0, 1, 20, 91)) {
    for (int l : {-2, 0, 1, 3}) {
      QHTransition t = qh_transition(p, 1, PicardClass{l});
      Complex expected = t.vacuum_block() * t.excitation_block().determinant();
      CHECK(std::abs(t.matrix.determinant() - expected) <= 1e-10);
      CHECK(t.matrix.topRightCorner(1, 2).norm() == 0.0);
      CHECK(t.matrix.bottomLeftCorner(2, 1).norm() == 0.0);
    }
  }
}

TEST_CASE("transport_state moves components and base point") {
  FiberState s = make_state(cp1_point(2.0), 1.0, Vec::Constant(1, 1.0), 1);
  FiberState moved = transport_state(s, 1);
  CHECK(moved.chart() == 1);
  CHECK(std::abs(moved.point.coords(0) - Complex{0.5, 0.0}) < 1e-15);
  CHECK(moved.vacuum == Complex{2.0, 0.0});
  CHECK(std::abs(moved.excitations(0) - Complex{-0.25, 0.0}) < 1e-15);

  FiberState back = transport_state(moved, 0);
  CHECK((back.components() - s.components()).norm() <= tol::round_trip);
}

TEST_CASE("vacuum-only states stay vacuum-only") {
  for (const AffinePoint& p : sample_overlap(3, 0, 2, 15, 6)) {
    FiberState s = make_state(p, Complex{0.7, -0.1}, Vec::Zero(3), 2);
    FiberState moved = transport_state(s, 2);
    CHECK(moved.excitations.norm() == 0.0);
    CHECK(moved.vacuum != Complex{0.0, 0.0});
  }
}

TEST_CASE("transport composes along chart chains") {
  for (const AffinePoint& p : sample_overlap(2, 0, 1, 25, 12)) {
    for (int l : {-1, 1}) {
      QHTransition t01 = qh_transition(p, 1, PicardClass{l});
      QHTransition t12 =
          qh_transition(transition_coords(p, 1), 2, PicardClass{l});
      QHTransition t02 = qh_transition(p, 2, PicardClass{l});
      CHECK((t12.matrix * t01.matrix - t02.matrix).norm() <= tol::cocycle);
    }
  }
}

TEST_CASE("cocycle reports") {
  CocycleReport r = cocycle_residual(2, 0, 1, 2, PicardClass{1}, 50, 42);
  CHECK(r.pass);
  CHECK(r.max_residual <= tol::cocycle);

  CHECK(cocycle_residual(2, 0, 1, 2, PicardClass{-3}, 50, 42).pass);
  CHECK(cocycle_residual(1, 0, 1, 0, PicardClass{2}, 50, 42).pass);

  for (int l = -2; l <= 3; ++l) {
    CHECK(cocycle_residual(3, 0, 1, 2, PicardClass{l}, 30, 7).pass);
    CHECK(cocycle_residual(3, 1, 2, 3, PicardClass{l}, 30, 7).pass);
  }

  // Both excitation conventions satisfy the cocycle identity.
  CHECK(cocycle_residual(2, 0, 1, 2, PicardClass{1}, 30, 3,
                         ExcitationConvention::cotangent)
            .pass);
}

TEST_CASE("SU(2) transitions are symmetric") {
  CHECK(su2_selfduality_check(cp1_point(2.0), PicardClass{1}) == 0.0);
  CHECK(su2_selfduality_check(cp1_point(Complex{1.0, 1.0}), PicardClass{-2}) == 0.0);

  AffinePoint p2{0, Vec::Constant(2, Complex{1.0, 0.0})};
  CHECK_THROWS_AS(su2_selfduality_check(p2, PicardClass{1}), WrongDimension);
}

TEST_CASE("dual transport inverts the transition on covectors") {
  FiberState c = make_state(cp1_point(2.0), 1.0, Vec::Constant(1, 1.0), 1);
  FiberState moved = dual_transport(c, 1);
  CHECK(std::abs(moved.vacuum - Complex{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(moved.excitations(0) - Complex{-4.0, 0.0}) < 1e-12);
}

TEST_CASE("dual pairing is invariant under joint transport") {
  Rng rng(123);
  double worst = 0.0;
  for (const AffinePoint& p : sample_overlap(2, 0, 1, 100, 44)) {
    Vec vexc(2), cexc(2);
    for (int i = 0; i < 2; ++i) {
      vexc(i) = rng.annulus(0.2, 1.0);
      cexc(i) = rng.annulus(0.2, 1.0);
    }
    FiberState v = make_state(p, rng.annulus(0.2, 1.0), vexc, 1);
    FiberState c = make_state(p, rng.annulus(0.2, 1.0), cexc, 1);
    Complex before = dual_pairing(c, v);
    for (int k = 1; k <= 2; ++k) {
      Complex after = dual_pairing(dual_transport(c, k), transport_state(v, k));
      worst = std::max(worst, std::abs(after - before));
    }
  }
  CHECK(worst <= tol::pairing_drift);
}

TEST_CASE("dual transport at the same chart is the identity") {
  FiberState c = make_state(cp1_point(2.0), 0.3, Vec::Constant(1, -0.7), 2);
  FiberState same = dual_transport(c, 0);
  CHECK((same.components() - c.components()).norm() == 0.0);
}

TEST_CASE("negative classes use the dual excitation block") {
  AffinePoint p = cp1_point(2.0);
  QHTransition plus = qh_transition(p, 1, PicardClass{1});
  QHTransition minus = qh_transition(p, 1, PicardClass{-1});
  // Excitation block of the dual class is the inverse-transpose.
  CHECK(std::abs(minus.excitation_block()(0, 0) -
                 Complex{1.0, 0.0} / plus.excitation_block()(0, 0)) < 1e-12);
  // And the cotangent convention swaps the two.
  QHTransition cot = qh_transition(p, 1, PicardClass{1},
                                   ExcitationConvention::cotangent);
  CHECK(cot.excitation_block() == minus.excitation_block());
}

TEST_CASE("fiber state JSON round trip") {
  FiberState s = make_state(cp1_point(Complex{0.5, -1.0}), Complex{0.1, 0.2},
                            Vec::Constant(1, Complex{-0.3, 0.4}), -2);
  nlohmann::json j = s;
  CHECK(j["n"] == 1);
  CHECK(j["l"] == -2);
  CHECK(j["chart"] == 0);
  FiberState back = j.get<FiberState>();
  CHECK((back.components() - s.components()).norm() == 0.0);
  CHECK(back.point.coords == s.point.coords);
  CHECK(back.cls.l == s.cls.l);
}
