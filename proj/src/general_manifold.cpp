// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/general_manifold.hpp"

#include <array>
#include <cmath>
#include <optional>

#include <nlohmann/json.hpp>

#include "qbundle/finite_difference.hpp"
#include "qbundle/tolerances.hpp"

namespace qbundle {

namespace {

constexpr double kTwoPi = 2.0 * EIGEN_PI;

/// Central-difference Jacobian of a holomorphic chart transition.
Mat fd_transition_jacobian(const AtlasSpec& atlas, int from, const Vec& coords,
                           int to, double h) {
  return fd::jacobian(
      [&](const Vec& z) { return atlas.transition(from, z, to); }, coords, h);
}

}  // namespace

void validate_atlas(const AtlasSpec& atlas, int samples, std::uint64_t seed) {
  auto fail = [&](const std::string& invariant) {
    throw InvalidAtlas("atlas '" + atlas.name + "': " + invariant);
  };
  if (atlas.charts < 2) fail("chart count must be >= 2 on a compact manifold");
  if (!atlas.in_chart || !atlas.in_overlap || !atlas.transition || !atlas.jacobian ||
      !atlas.sample) {
    fail("chart predicates, transitions, jacobians and a sampler are required");
  }

  for (int c = 0; c < atlas.charts; ++c) {
    auto points = atlas.sample(c, samples, derive_seed(seed, c));
    for (int d = 0; d < atlas.charts; ++d) {
      if (c == d) continue;
      for (const Vec& w : points) {
        if (!atlas.in_overlap(c, w, d)) continue;
        Vec across = atlas.transition(c, w, d);
        Vec back = atlas.transition(d, across, c);
        if ((back - w).norm() > tol::round_trip) {
          fail("transition " + std::to_string(c) + "->" + std::to_string(d) +
               " is not biholomorphic: round trip exceeds tolerance");
        }
        Mat jac = atlas.jacobian(c, w, d);
        Mat fd = fd_transition_jacobian(atlas, c, w, d, tol::fd_step);
        if ((jac - fd).norm() > tol::fd_jacobian_rel * std::max(1.0, fd.norm())) {
          fail("jacobian " + std::to_string(c) + "->" + std::to_string(d) +
               " disagrees with finite differences");
        }
        if (atlas.line_transition) {
          Complex t_cd = atlas.line_transition(c, w, d, PicardClass{1});
          Complex t_dc = atlas.line_transition(d, across, c, PicardClass{1});
          if (std::abs(t_cd * t_dc - Complex{1.0, 0.0}) > tol::reciprocal_pair) {
            fail("line transitions are not reciprocal on the overlap");
          }
        }
        if (atlas.kahler_potential && atlas.metric) {
          Mat g = atlas.metric(c, w);
          Mat fd_g = fd::mixed_hessian(
              [&](const Vec& v) { return atlas.kahler_potential(c, v); }, w,
              tol::fd_step);
          if ((g - fd_g).norm() > tol::fd_metric_rel * std::max(1.0, fd_g.norm())) {
            fail("metric disagrees with the potential's mixed Hessian");
          }
        }
      }
    }
  }
}

QHBundle::QHBundle(AtlasSpec atlas, PicardClass cls, ExcitationConvention convention)
    : atlas_(std::move(atlas)), cls_(cls), convention_(convention) {
  if (cls_.l != 0 && !atlas_.line_transition) {
    throw InvalidAtlas("atlas '" + atlas_.name +
                       "': line-bundle data required for a nontrivial Picard class");
  }
}

QHBundle build_qh_bundle(AtlasSpec atlas, PicardClass cls,
                         ExcitationConvention convention) {
  validate_atlas(atlas);
  return QHBundle(std::move(atlas), cls, convention);
}

Mat QHBundle::qh_transition(int from, const Vec& coords, int to) const {
  Complex scalar = atlas_.line_transition
                       ? atlas_.line_transition(from, coords, to, cls_)
                       : Complex{1.0, 0.0};
  return assemble_qh_matrix(scalar, atlas_.jacobian(from, coords, to), cls_,
                            convention_);
}

std::pair<Vec, Vec> QHBundle::transport_state(int from, const Vec& coords,
                                              const Vec& components, int to) const {
  if (!atlas_.in_overlap(from, coords, to)) {
    throw OverlapUndefined("atlas '" + atlas_.name + "': point not in overlap " +
                           std::to_string(from) + "->" + std::to_string(to));
  }
  return {atlas_.transition(from, coords, to),
          qh_transition(from, coords, to) * components};
}

CocycleReport QHBundle::cocycle_residual(int j, int k, int m, int samples,
                                         std::uint64_t seed) const {
  CocycleReport report;
  report.charts = {j, k, m};
  report.seed = seed;
  const Eigen::Index dim = atlas_.dim + 1;
  const bool degenerate = (j == k || k == m || m == j);
  auto points = atlas_.sample(j, samples, seed);
  for (const Vec& w : points) {
    if (!atlas_.in_overlap(j, w, k)) continue;
    Mat chain;
    if (degenerate) {
      Vec across = atlas_.transition(j, w, k);
      chain = qh_transition(k, across, j) * qh_transition(j, w, k);
    } else {
      Vec w_k = atlas_.transition(j, w, k);
      if (!atlas_.in_overlap(k, w_k, m)) continue;
      Vec w_m = atlas_.transition(k, w_k, m);
      if (!atlas_.in_overlap(m, w_m, j)) continue;
      chain = qh_transition(m, w_m, j) * qh_transition(k, w_k, m) *
              qh_transition(j, w, k);
    }
    report.samples += 1;
    report.max_residual =
        std::max(report.max_residual, (chain - Mat::Identity(dim, dim)).norm());
  }
  report.pass = report.samples > 0 && report.max_residual <= tol::cocycle;
  return report;
}

HolonomyResult QHBundle::holonomy(BundleKind kind, int chart, const Vec& center,
                                  double radius, int steps) const {
  if (kind == BundleKind::tangent && !atlas_.connection) {
    throw InvalidAtlas("atlas '" + atlas_.name +
                       "': tangent holonomy requires a connection callback");
  }
  if (kind == BundleKind::line && cls_.l != 0 && !atlas_.line_connection) {
    throw InvalidAtlas("atlas '" + atlas_.name +
                       "': line holonomy requires a line connection callback");
  }
  const int n = atlas_.dim;
  Vec direction = Vec::Unit(n, 0);

  auto gamma = [&](double t) -> Vec {
    Complex phase = radius * std::exp(Complex{0.0, kTwoPi * t});
    return center + phase * direction;
  };
  auto gamma_dot = [&](double t) -> Vec {
    Complex phase = radius * std::exp(Complex{0.0, kTwoPi * t});
    return Complex{0.0, kTwoPi} * phase * direction;
  };

  const int dim = kind == BundleKind::tangent ? n : 1;
  auto coefficient = [&](double t) -> Mat {
    Vec z = gamma(t);
    if (!atlas_.in_chart(chart, z)) {
      throw LoopLeavesChart("atlas '" + atlas_.name + "': loop exits chart " +
                            std::to_string(chart));
    }
    if (kind == BundleKind::tangent) {
      return -atlas_.connection(chart, z).contract_velocity(gamma_dot(t));
    }
    Mat a = Mat::Zero(1, 1);
    if (atlas_.line_connection) {
      Vec theta = atlas_.line_connection(chart, z, cls_);
      a(0, 0) = -(theta.transpose() * gamma_dot(t))(0, 0);
    }
    return a;
  };

  HolonomyResult result;
  result.loop = Loop{AffinePoint{chart, center}, radius, direction, steps};
  result.kind = kind;
  result.cls = cls_;
  result.transport = integrate_frame_transport(coefficient, dim, steps, nullptr,
                                               &result.unwrapped_angle);
  result.deviation = deviation_from_identity(result.transport);
  return result;
}

FlatnessReport flatness_report(const AtlasSpec& atlas, PicardClass cls, int samples,
                               std::uint64_t seed) {
  if (!atlas.kahler_potential) {
    throw InvalidAtlas("atlas '" + atlas.name +
                       "': flatness evidence requires a Kahler potential");
  }
  if (!atlas.metric || !atlas.connection || !atlas.tangent_curvature) {
    throw InvalidAtlas("atlas '" + atlas.name +
                       "': flatness evidence requires metric, connection and "
                       "curvature callbacks");
  }
  validate_atlas(atlas, std::min(samples, 10), seed);
  QHBundle bundle(atlas, cls);

  FlatnessReport report;
  report.manifold = atlas.name;
  report.cls = cls;
  report.samples = samples;
  report.seed = seed;

  for (int c = 0; c < atlas.charts; ++c) {
    auto points = atlas.sample(c, samples, derive_seed(seed, 100 + c));
    int loops_done = 0;
    for (const Vec& w : points) {
      report.max_tangent_curvature = std::max(
          report.max_tangent_curvature, atlas.tangent_curvature(c, w).frobenius_norm());
      if (atlas.line_curvature) {
        report.max_line_curvature =
            std::max(report.max_line_curvature, atlas.line_curvature(c, w, cls).norm());
      }
      // A few transport loops per chart are enough holonomy evidence.
      if (loops_done < 3) {
        HolonomyResult tangent =
            bundle.holonomy(BundleKind::tangent, c, w, atlas.loop_radius, 400);
        report.max_tangent_holonomy =
            std::max(report.max_tangent_holonomy, tangent.deviation);
        HolonomyResult line =
            bundle.holonomy(BundleKind::line, c, w, atlas.loop_radius, 400);
        report.max_line_holonomy = std::max(report.max_line_holonomy, line.deviation);
        ++loops_done;
      }
    }
  }

  report.tangent_flat = report.max_tangent_curvature <= tol::flatness_threshold &&
                        report.max_tangent_holonomy <= tol::flatness_threshold;
  report.line_flat = report.max_line_curvature <= tol::flatness_threshold &&
                     report.max_line_holonomy <= tol::flatness_threshold;
  report.qh_flat = report.tangent_flat && report.line_flat;
  return report;
}

AtlasSpec cpn_atlas(int n) {
  if (n < 1) throw std::invalid_argument("cpn_atlas: n must be >= 1");
  AtlasSpec atlas;
  atlas.name = "cp" + std::to_string(n);
  atlas.dim = n;
  atlas.charts = n + 1;
  atlas.loop_radius = 0.5;
  atlas.in_chart = [](int, const Vec& z) { return z.allFinite(); };
  atlas.in_overlap = [](int c, const Vec& z, int d) {
    return in_overlap(AffinePoint{c, z}, d);
  };
  atlas.transition = [](int c, const Vec& z, int d) {
    return transition_coords(AffinePoint{c, z}, d).coords;
  };
  atlas.jacobian = [](int c, const Vec& z, int d) {
    return transition_jacobian(AffinePoint{c, z}, d);
  };
  atlas.line_transition = [](int c, const Vec& z, int d, PicardClass cls) {
    return tau_transition(AffinePoint{c, z}, d, cls);
  };
  atlas.line_connection = [](int c, const Vec& z, PicardClass cls) {
    return line_connection(AffinePoint{c, z}, cls);
  };
  atlas.line_curvature = [](int c, const Vec& z, PicardClass cls) {
    return curvature_line(AffinePoint{c, z}, cls);
  };
  atlas.kahler_potential = [](int c, const Vec& z) {
    return kahler_potential(AffinePoint{c, z});
  };
  atlas.metric = [](int c, const Vec& z) { return fs_metric(AffinePoint{c, z}).g; };
  atlas.connection = [](int c, const Vec& z) {
    return chern_connection(AffinePoint{c, z});
  };
  atlas.tangent_curvature = [](int c, const Vec& z) {
    return curvature_tangent(AffinePoint{c, z});
  };
  atlas.sample = [n](int chart, int count, std::uint64_t seed) {
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (AffinePoint& p : sample_chart(n, chart, count, seed, tol::sample_radius_min,
                                       tol::sample_radius_hi)) {
      out.push_back(std::move(p.coords));
    }
    return out;
  };
  return atlas;
}

AtlasSpec torus_atlas(Complex modulus) {
  if (!(modulus.imag() > 0.0)) {
    throw InvalidModulus("torus modulus must have positive imaginary part");
  }
  // Four squares of side 0.6 in lattice coordinates, centered pairwise to
  // overlap and jointly cover the fundamental domain.
  const std::array<std::pair<double, double>, 4> centers{
      {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}}};
  const double half_side = 0.3;

  auto lattice_coords = [modulus](Complex w) {
    double b = w.imag() / modulus.imag();
    double a = w.real() - b * modulus.real();
    return std::pair<double, double>{a, b};
  };
  auto inside = [=](int chart, Complex w) {
    auto [a, b] = lattice_coords(w);
    return std::abs(a - centers[chart].first) < half_side &&
           std::abs(b - centers[chart].second) < half_side;
  };
  // Lattice translation moving w into chart d's square, if any.
  auto find_shift = [=](Complex w, int d) -> std::optional<Complex> {
    for (int m = -1; m <= 1; ++m) {
      for (int n = -1; n <= 1; ++n) {
        Complex shift = static_cast<double>(m) + static_cast<double>(n) * modulus;
        if (inside(d, w - shift)) return w - shift;
      }
    }
    return std::nullopt;
  };

  AtlasSpec atlas;
  atlas.name = "torus";
  atlas.dim = 1;
  atlas.charts = 4;
  atlas.loop_radius = 0.04;
  atlas.in_chart = [=](int c, const Vec& z) { return inside(c, z(0)); };
  atlas.in_overlap = [=](int c, const Vec& z, int d) {
    return inside(c, z(0)) && find_shift(z(0), d).has_value();
  };
  atlas.transition = [=](int c, const Vec& z, int d) -> Vec {
    auto moved = find_shift(z(0), d);
    if (!moved) {
      throw OverlapUndefined("torus transition " + std::to_string(c) + "->" +
                             std::to_string(d) + " undefined at this point");
    }
    return Vec::Constant(1, *moved);
  };
  atlas.jacobian = [](int, const Vec&, int) { return Mat::Identity(1, 1); };
  // Trivial line-bundle data: the only modelled class has constant unit
  // transitions, vanishing connection form and zero curvature.
  atlas.line_transition = [](int, const Vec&, int, PicardClass) {
    return Complex{1.0, 0.0};
  };
  atlas.line_connection = [](int, const Vec&, PicardClass) { return Vec::Zero(1); };
  atlas.line_curvature = [](int, const Vec&, PicardClass) { return Mat::Zero(1, 1); };
  atlas.kahler_potential = [](int, const Vec& z) { return z.squaredNorm(); };
  atlas.metric = [](int, const Vec&) { return Mat::Identity(1, 1); };
  atlas.connection = [](int, const Vec&) { return ConnectionCoeffs(1); };
  atlas.tangent_curvature = [](int, const Vec&) { return CurvatureTensor(1); };
  atlas.sample = [=](int chart, int count, std::uint64_t seed) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chart)));
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
      double a = centers[chart].first + rng.uniform(-0.2, 0.2);
      double b = centers[chart].second + rng.uniform(-0.2, 0.2);
      out.push_back(Vec::Constant(1, a + b * modulus));
    }
    return out;
  };
  return atlas;
}

AtlasSpec load_atlas(const nlohmann::json& description) {
  const std::string type = description.at("type").get<std::string>();
  if (type == "torus") {
    const auto& m = description.at("modulus");
    return torus_atlas(Complex{m[0].get<double>(), m[1].get<double>()});
  }
  if (type == "cpn") {
    return cpn_atlas(description.at("n").get<int>());
  }
  throw InvalidAtlas("unknown atlas type '" + type + "'");
}

void to_json(nlohmann::json& j, const FlatnessReport& r) {
  j = nlohmann::json{{"manifold", r.manifold},
                     {"l", r.cls.l},
                     {"samples", r.samples},
                     {"seed", r.seed},
                     {"tangent_flat", r.tangent_flat},
                     {"line_flat", r.line_flat},
                     {"qh_flat", r.qh_flat},
                     {"max_tangent_curvature", r.max_tangent_curvature},
                     {"max_tangent_holonomy", r.max_tangent_holonomy},
                     {"max_line_curvature", r.max_line_curvature},
                     {"max_line_holonomy", r.max_line_holonomy}};
}

}  // namespace qbundle
