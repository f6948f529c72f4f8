// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/quantum_bundle.hpp"

#include <nlohmann/json.hpp>

#include "qbundle/tolerances.hpp"

namespace qbundle {

Vec FiberState::components() const {
  Vec v(excitations.size() + 1);
  v(0) = vacuum;
  v.tail(excitations.size()) = excitations;
  return v;
}

std::vector<std::string> fiber_frame(int chart, int n, PicardClass cls) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n) + 1);
  labels.push_back("vacuum(chart=" + std::to_string(chart) +
                   ",l=" + std::to_string(cls.l) + ")");
  for (int i = 1; i <= n; ++i) {
    labels.push_back("excitation_" + std::to_string(i) +
                     "(chart=" + std::to_string(chart) + ")");
  }
  return labels;
}

Mat assemble_qh_matrix(Complex line_scalar, const Mat& jacobian, PicardClass cls,
                       ExcitationConvention convention) {
  const Eigen::Index n = jacobian.rows();
  bool dual_block = (cls.l < 0);
  if (convention == ExcitationConvention::cotangent) dual_block = !dual_block;
  Mat t = Mat::Zero(n + 1, n + 1);
  t(0, 0) = line_scalar;
  if (dual_block) {
    t.bottomRightCorner(n, n) = jacobian.transpose().inverse();
  } else {
    t.bottomRightCorner(n, n) = jacobian;
  }
  return t;
}

QHTransition qh_transition(const AffinePoint& p, int k, PicardClass cls,
                           ExcitationConvention convention) {
  QHTransition t;
  t.from_chart = p.chart;
  t.to_chart = k;
  t.point = p;
  t.cls = cls;
  t.matrix = assemble_qh_matrix(tau_transition(p, k, cls),
                                transition_jacobian(p, k), cls, convention);
  return t;
}

FiberState transport_state(const FiberState& s, int k,
                           ExcitationConvention convention) {
  QHTransition t = qh_transition(s.point, k, s.cls, convention);
  FiberState out;
  out.point = transition_coords(s.point, k);
  out.cls = s.cls;
  Vec moved = t.matrix * s.components();
  out.vacuum = moved(0);
  out.excitations = moved.tail(moved.size() - 1);
  return out;
}

FiberState dual_transport(const FiberState& c, int k,
                          ExcitationConvention convention) {
  QHTransition t = qh_transition(c.point, k, c.cls, convention);
  const Eigen::Index n = c.excitations.size();
  // Inverse-transpose, assembled blockwise so the off-diagonal zeros stay
  // exact: the vacuum block becomes the degree -l scalar.
  Mat dual = Mat::Zero(n + 1, n + 1);
  dual(0, 0) = Complex{1.0, 0.0} / t.vacuum_block();
  Mat block = t.excitation_block();
  dual.bottomRightCorner(n, n) = block.transpose().inverse();

  FiberState out;
  out.point = transition_coords(c.point, k);
  out.cls = c.cls;
  Vec moved = dual * c.components();
  out.vacuum = moved(0);
  out.excitations = moved.tail(moved.size() - 1);
  return out;
}

Complex dual_pairing(const FiberState& covector, const FiberState& vector) {
  return (covector.components().transpose() * vector.components())(0, 0);
}

CocycleReport cocycle_residual(int n, int j, int k, int m, PicardClass cls,
                               int samples, std::uint64_t seed,
                               ExcitationConvention convention) {
  CocycleReport report;
  report.charts = {j, k, m};
  report.samples = samples;
  report.seed = seed;
  const Eigen::Index dim = n + 1;
  for (const AffinePoint& p : sample_overlap(n, j, k, samples, seed)) {
    Mat chain;
    if (n == 1) {
      // Only two charts exist: the cocycle degenerates to the round trip.
      QHTransition forward = qh_transition(p, k, cls, convention);
      QHTransition back =
          qh_transition(transition_coords(p, k), j, cls, convention);
      chain = back.matrix * forward.matrix;
    } else {
      QHTransition t_jk = qh_transition(p, k, cls, convention);
      AffinePoint p_k = transition_coords(p, k);
      QHTransition t_km = qh_transition(p_k, m, cls, convention);
      AffinePoint p_m = transition_coords(p_k, m);
      QHTransition t_mj = qh_transition(p_m, j, cls, convention);
      chain = t_mj.matrix * t_km.matrix * t_jk.matrix;
    }
    report.max_residual = std::max(
        report.max_residual, (chain - Mat::Identity(dim, dim)).norm());
  }
  report.pass = report.max_residual <= tol::cocycle;
  return report;
}

double su2_selfduality_check(const AffinePoint& p, PicardClass cls) {
  if (p.n() != 1)
    throw WrongDimension("su2_selfduality_check: defined on CP^1 only");
  int other = p.chart == 0 ? 1 : 0;
  QHTransition t = qh_transition(p, other, cls);
  return (t.matrix - t.matrix.transpose()).norm();
}

void to_json(nlohmann::json& j, const FiberState& s) {
  nlohmann::json point = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.point.coords.size(); ++i) {
    point.push_back({s.point.coords(i).real(), s.point.coords(i).imag()});
  }
  nlohmann::json excitations = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.excitations.size(); ++i) {
    excitations.push_back({s.excitations(i).real(), s.excitations(i).imag()});
  }
  j = nlohmann::json{{"n", s.n()},
                     {"l", s.cls.l},
                     {"chart", s.chart()},
                     {"point", point},
                     {"vacuum", {s.vacuum.real(), s.vacuum.imag()}},
                     {"excitations", excitations}};
}

void from_json(const nlohmann::json& j, FiberState& s) {
  const int n = j.at("n").get<int>();
  s.cls.l = j.at("l").get<int>();
  s.point.chart = j.at("chart").get<int>();
  s.point.coords = Vec::Zero(n);
  const auto& point = j.at("point");
  for (int i = 0; i < n; ++i) {
    s.point.coords(i) = Complex{point[i][0].get<double>(), point[i][1].get<double>()};
  }
  s.vacuum = Complex{j.at("vacuum")[0].get<double>(), j.at("vacuum")[1].get<double>()};
  const auto& excitations = j.at("excitations");
  s.excitations = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    s.excitations(i) =
        Complex{excitations[i][0].get<double>(), excitations[i][1].get<double>()};
  }
}

}  // namespace qbundle
