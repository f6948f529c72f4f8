// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/report.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "qbundle/finite_difference.hpp"
#include "qbundle/general_manifold.hpp"
#include "qbundle/hermitian_geometry.hpp"
#include "qbundle/line_bundles.hpp"
#include "qbundle/projective_atlas.hpp"
#include "qbundle/quantum_bundle.hpp"
#include "qbundle/representations.hpp"
#include "qbundle/tolerances.hpp"

namespace qbundle {

namespace {

using ordered_json = nlohmann::ordered_json;

struct ResidualStat {
  double max = 0.0;
  double sum = 0.0;
  long count = 0;

  void add(double r) {
    max = std::max(max, r);
    sum += r;
    ++count;
  }
  double mean() const { return count == 0 ? 0.0 : sum / count; }
};

ordered_json make_report(const std::string& op, ordered_json params, long samples,
                         const ResidualStat& stat, ordered_json value,
                         ordered_json error, bool pass) {
  ordered_json r;
  r["schema"] = kReportSchema;
  r["op"] = op;
  r["params"] = std::move(params);
  r["samples"] = samples;
  r["max_residual"] = stat.max;
  r["mean_residual"] = stat.mean();
  r["value"] = std::move(value);
  r["error"] = std::move(error);
  r["pass"] = pass;
  return r;
}

ExcitationConvention convention_of(const RunConfig& config) {
  return config.cotangent ? ExcitationConvention::cotangent
                          : ExcitationConvention::tangent;
}

std::vector<std::array<int, 3>> chart_triples(int n) {
  std::vector<std::array<int, 3>> triples;
  if (n == 1) {
    triples.push_back({0, 1, 0});  // degenerate round trip
    return triples;
  }
  for (int j = 0; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k)
      for (int m = k + 1; m <= n; ++m) triples.push_back({j, k, m});
  return triples;
}

Vec random_components(Rng& rng, int count) {
  Vec v(count);
  for (int i = 0; i < count; ++i) v(i) = rng.annulus(0.2, 1.0);
  return v;
}

}  // namespace

void validate_config(const RunConfig& config) {
  static const std::set<std::string> commands{
      "cocycle", "curvature", "prequant", "holonomy", "volume", "dims",
      "match",   "veronese",  "transport", "flatness", "all"};
  if (!commands.count(config.command))
    throw ConfigError("unknown command '" + config.command + "'");
  if (config.n < 1 || config.n > 4)
    throw ConfigError("n must be between 1 and 4");
  if (config.l < -8 || config.l > 8) throw ConfigError("|l| must be at most 8");
  if (config.samples < 1 || config.samples > 10'000'000)
    throw ConfigError("samples must be between 1 and 10^7");
  if (config.steps < 100 || config.steps > 10'000'000)
    throw ConfigError("steps must be between 100 and 10^7");
  if (config.workers < 1 || config.workers > 256)
    throw ConfigError("workers must be between 1 and 256");
  if (config.format != "json" && config.format != "csv")
    throw ConfigError("format must be json or csv");
  if (config.manifold != "torus" && config.manifold != "cpn")
    throw ConfigError("manifold must be torus or cpn");
  if (config.manifold == "torus" && !(config.modulus.imag() > 0.0))
    throw ConfigError("torus modulus must have positive imaginary part");
  if (!(config.radius > 0.0) || config.radius > 100.0)
    throw ConfigError("radius must be in (0, 100]");
  if ((config.command == "veronese" || config.command == "match") && config.l < 1)
    throw ConfigError(config.command + " requires l >= 1");
}

ordered_json run_dims(const RunConfig& config) {
  ResidualStat stat;
  bool pass = true;
  ordered_json rows = ordered_json::array();
  for (int n = 1; n <= config.n; ++n) {
    for (int l = 0; l <= std::max(config.l, 0); ++l) {
      std::uint64_t dim = section_dim(n, l);
      std::uint64_t enumerated = monomial_basis(n, l).size();
      rows.push_back({n, l, dim});
      stat.add(dim == enumerated ? 0.0 : 1.0);
      pass = pass && dim == enumerated && dim == binomial(n + l, n);
    }
    pass = pass && section_dim(n, -1) == 0;
  }
  ordered_json params{{"n", config.n}, {"l", config.l}};
  ordered_json report =
      make_report("dims", params, stat.count, stat,
                  section_dim(config.n, config.l), nullptr, pass);
  report["table"] = rows;
  return report;
}

ordered_json run_match(const RunConfig& config) {
  ResidualStat stat;
  bool pass = su3_dim(1, 0) == 3 && su3_dim(1, 1) == 8 && su3_dim(0, 0) == 1;
  ordered_json rows = ordered_json::array();
  for (int l = 1; l <= config.l; ++l) {
    auto matches = rep_match_search(l, 20, 20);
    ordered_json entry = ordered_json::array();
    for (auto [p, q] : matches) entry.push_back({p, q});
    rows.push_back({l, entry});
    bool exact = matches.size() == 2 &&
                 matches.front() == std::make_pair(0, l) &&
                 matches.back() == std::make_pair(l, 0);
    stat.add(exact ? 0.0 : 1.0);
    pass = pass && exact;
  }
  ordered_json params{{"l", config.l}, {"p_max", 20}, {"q_max", 20}};
  ordered_json report = make_report("match", params, stat.count, stat,
                                    nullptr, nullptr, pass);
  report["table"] = rows;
  return report;
}

ordered_json run_cocycle(const RunConfig& config) {
  ResidualStat stat;
  bool pass = true;
  long total_samples = 0;
  ordered_json rows = ordered_json::array();
  for (const auto& t : chart_triples(config.n)) {
    CocycleReport r = cocycle_residual(config.n, t[0], t[1], t[2],
                                       PicardClass{config.l},
                                       static_cast<int>(config.samples),
                                       config.seed, convention_of(config));
    rows.push_back({t[0], t[1], t[2], r.max_residual, r.pass});
    stat.add(r.max_residual);
    total_samples += r.samples;
    pass = pass && r.pass;
  }
  ordered_json params{{"n", config.n},
                      {"l", config.l},
                      {"samples", config.samples},
                      {"seed", config.seed},
                      {"convention", config.cotangent ? "cotangent" : "tangent"}};
  ordered_json report = make_report("cocycle", params, total_samples, stat,
                                    nullptr, nullptr, pass);
  report["triples"] = rows;
  return report;
}

ordered_json run_curvature(const RunConfig& config) {
  const int n = config.n;
  ResidualStat fd_stat;
  double max_hermiticity = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_metric_fd = 0.0;
  double max_connection_fd = 0.0;
  double max_curvature_fd = 0.0;
  double min_curvature_norm = std::numeric_limits<double>::infinity();
  double max_line_linearity = 0.0;
  double max_line_hermiticity = 0.0;

  auto metric_fn = [n](const Vec& z) { return fs_metric(AffinePoint{0, z}).g; };
  auto connection_fn = [n](const Vec& z) {
    return chern_connection(AffinePoint{0, z});
  };

  auto points = sample_chart(n, 0, static_cast<int>(config.samples), config.seed,
                             tol::sample_radius_min, tol::sample_radius_hi);
  for (const AffinePoint& p : points) {
    Mat g = fs_metric(p).g;
    max_hermiticity = std::max(max_hermiticity, (g - g.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<Mat> eigen(g);
    min_eigenvalue = std::min(min_eigenvalue, eigen.eigenvalues().minCoeff());

    Mat g_fd = fd::mixed_hessian(
        [](const Vec& z) { return kahler_potential(AffinePoint{0, z}); }, p.coords,
        tol::fd_step);
    double metric_rel = (g - g_fd).norm() / g_fd.norm();
    max_metric_fd = std::max(max_metric_fd, metric_rel);

    ConnectionCoeffs gamma = chern_connection(p);
    ConnectionCoeffs gamma_fd =
        fd::connection_from_metric(metric_fn, p.coords, tol::fd_step);
    double gamma_diff = 0.0;
    double gamma_ref = gamma_fd.frobenius_norm();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          gamma_diff += std::norm(gamma(i, j, k) - gamma_fd(i, j, k));
    double connection_rel = std::sqrt(gamma_diff) / gamma_ref;
    max_connection_fd = std::max(max_connection_fd, connection_rel);

    CurvatureTensor r = curvature_tangent(p);
    CurvatureTensor r_fd =
        fd::curvature_from_connection(connection_fn, p.coords, tol::fd_step);
    double r_diff = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            r_diff += std::norm(r(i, j, k, l) - r_fd(i, j, k, l));
    double curvature_rel = std::sqrt(r_diff) / r_fd.frobenius_norm();
    max_curvature_fd = std::max(max_curvature_fd, curvature_rel);
    min_curvature_norm = std::min(min_curvature_norm, r.frobenius_norm());

    Mat line1 = curvature_line(p, PicardClass{1});
    Mat line3 = curvature_line(p, PicardClass{3});
    max_line_linearity = std::max(max_line_linearity, (line3 - 3.0 * line1).norm());
    max_line_hermiticity =
        std::max(max_line_hermiticity, (line1 - line1.adjoint()).norm());

    fd_stat.add(std::max({metric_rel, connection_rel, curvature_rel}));
  }

  bool pass = max_hermiticity <= tol::hermiticity && min_eigenvalue > 0.0 &&
              max_metric_fd <= tol::fd_metric_rel &&
              max_connection_fd <= tol::fd_connection_rel &&
              max_curvature_fd <= tol::fd_curvature_rel &&
              min_curvature_norm > tol::nonflat_witness_min &&
              max_line_linearity <= tol::linearity &&
              max_line_hermiticity <= tol::line_curvature_hermiticity &&
              curvature_line(points.front(), PicardClass{0}).norm() == 0.0;

  ordered_json params{{"n", n}, {"samples", config.samples}, {"seed", config.seed}};
  ordered_json report = make_report("curvature", params, fd_stat.count, fd_stat,
                                    min_curvature_norm, nullptr, pass);
  report["max_hermiticity_residual"] = max_hermiticity;
  report["min_metric_eigenvalue"] = min_eigenvalue;
  report["max_metric_fd_rel"] = max_metric_fd;
  report["max_connection_fd_rel"] = max_connection_fd;
  report["max_curvature_fd_rel"] = max_curvature_fd;
  report["min_curvature_norm"] = min_curvature_norm;
  report["max_line_linearity_residual"] = max_line_linearity;
  return report;
}

ordered_json run_prequant(const RunConfig& config) {
  ResidualStat stat;
  auto points = sample_chart(config.n, 0, static_cast<int>(config.samples),
                             config.seed, tol::sample_radius_min,
                             tol::sample_radius_hi);
  for (const AffinePoint& p : points) stat.add(prequantization_residual(p));
  bool pass = stat.max <= tol::prequantization;
  ordered_json params{{"n", config.n},
                      {"l", 1},
                      {"samples", config.samples},
                      {"seed", config.seed}};
  return make_report("prequant", params, stat.count, stat, nullptr, nullptr, pass);
}

ordered_json run_volume(const RunConfig& config) {
  IntegralResult result;
  bool pass;
  if (config.n == 1) {
    result = volume_integral(1, IntegralMethod::quadrature, 64, config.seed,
                             config.workers);
    pass = std::abs(result.value - 1.0) <= tol::volume_quadrature &&
           std::abs(result.scaled_value() - 2.0) <= tol::volume_scaled_quadrature;
  } else {
    result = volume_integral(config.n, IntegralMethod::monte_carlo,
                             static_cast<std::uint64_t>(config.samples),
                             config.seed, config.workers);
    const double target = config.n + 1.0;
    pass = std::abs(result.value - 1.0) <= tol::volume_mc_rel &&
           std::abs(result.scaled_value() - target) <= tol::volume_mc_rel * target;
  }
  ResidualStat stat;
  stat.add(std::abs(result.value - 1.0));
  ordered_json params{
      {"n", config.n},
      {"method",
       result.method == IntegralMethod::quadrature ? "quadrature" : "monte_carlo"},
      {"samples", result.samples},
      {"seed", result.seed},
      {"workers", result.workers}};
  ordered_json report = make_report("volume", params, 1, stat, result.value,
                                    result.estimated_error, pass);
  report["scale_factor"] = result.scale_factor;
  report["scaled_value"] = result.scaled_value();
  return report;
}

ordered_json run_holonomy(const RunConfig& config) {
  const int n = config.n;
  ordered_json params{{"n", n},
                      {"l", config.l},
                      {"radius", config.radius},
                      {"steps", config.steps},
                      {"seed", config.seed}};
  ResidualStat stat;
  bool pass = true;
  ordered_json report;

  AffinePoint origin{0, Vec::Zero(n)};
  PicardClass cls{config.l};

  // Step-doubling stability and the shrinking-loop limit hold in any
  // dimension.
  Loop main_loop{origin, config.radius, Vec(), config.steps};
  HolonomyResult tangent_run = holonomy_loop(BundleKind::tangent, cls, main_loop);
  Loop doubled = main_loop;
  doubled.steps *= 2;
  HolonomyResult tangent_doubled = holonomy_loop(BundleKind::tangent, cls, doubled);
  double doubling_residual =
      (tangent_run.transport - tangent_doubled.transport).norm();
  pass = pass && doubling_residual <= tol::holonomy_step_doubling;

  Loop tiny{origin, 1e-4, Vec(), config.steps};
  double small_loop_deviation =
      holonomy_loop(BundleKind::tangent, cls, tiny).deviation;
  pass = pass && small_loop_deviation <= tol::holonomy_small_loop;

  stat.add(doubling_residual);
  stat.add(small_loop_deviation);

  if (n == 1) {
    std::vector<std::pair<double, Vec>> trajectory;
    HolonomyResult line_run = holonomy_loop(
        BundleKind::line, cls, main_loop,
        config.trajectory_csv.empty() ? nullptr : &trajectory);
    double line_flux =
        enclosed_curvature_angle(BundleKind::line, cls, origin, config.radius);
    double line_mismatch = std::abs(line_run.unwrapped_angle - line_flux) /
                           std::max(std::abs(line_flux), 1e-12);
    double tangent_flux = enclosed_curvature_angle(BundleKind::tangent, cls, origin,
                                                   config.radius);
    double tangent_mismatch = std::abs(tangent_run.unwrapped_angle - tangent_flux) /
                              std::max(std::abs(tangent_flux), 1e-12);
    if (config.l != 0) {
      pass = pass && line_mismatch <= tol::holonomy_flux_rel;
    } else {
      pass = pass && line_run.deviation <= tol::flat_evidence;
    }
    pass = pass && tangent_mismatch <= tol::holonomy_flux_rel;
    stat.add(config.l != 0 ? line_mismatch : line_run.deviation);
    stat.add(tangent_mismatch);

    report = make_report("holonomy", params, 4, stat, line_run.unwrapped_angle,
                         std::abs(line_run.unwrapped_angle - line_flux), pass);
    report["line_deviation"] = line_run.deviation;
    report["line_angle"] = line_run.unwrapped_angle;
    report["line_flux"] = line_flux;
    report["tangent_deviation"] = tangent_run.deviation;
    report["tangent_angle"] = tangent_run.unwrapped_angle;
    report["tangent_flux"] = tangent_flux;
    report["min_deviation_ok"] = line_run.deviation > tol::holonomy_min_deviation;

    if (!config.trajectory_csv.empty()) {
      std::ofstream csv(config.trajectory_csv);
      csv << "t,re_0,im_0\n";
      char buffer[96];
      for (const auto& [t, frame] : trajectory) {
        std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g\n", t,
                      frame(0).real(), frame(0).imag());
        csv << buffer;
      }
      report["trajectory_csv"] = config.trajectory_csv;
    }
  } else {
    report = make_report("holonomy", params, 2, stat, tangent_run.deviation,
                         doubling_residual, pass);
    report["tangent_deviation"] = tangent_run.deviation;
  }
  report["doubling_residual"] = doubling_residual;
  report["small_loop_deviation"] = small_loop_deviation;
  return report;
}

ordered_json run_veronese(const RunConfig& config) {
  ResidualStat stat;
  for (int j = 0; j <= config.n; ++j) {
    auto points = sample_overlap(config.n, j, (j + 1) % (config.n + 1),
                                 static_cast<int>(config.samples),
                                 derive_seed(config.seed, j));
    for (const AffinePoint& p : points) {
      for (int k = 0; k <= config.n; ++k) {
        if (k == j) continue;
        stat.add(veronese_pullback_residual(p, k, config.l));
      }
    }
  }
  bool pass = stat.max <= tol::veronese_pullback;
  ordered_json params{{"n", config.n},
                      {"l", config.l},
                      {"samples", config.samples},
                      {"seed", config.seed}};
  return make_report("veronese", params, stat.count, stat, nullptr, nullptr, pass);
}

ordered_json run_transport(const RunConfig& config) {
  const int n = config.n;
  const PicardClass cls{config.l};
  const ExcitationConvention conv = convention_of(config);
  ResidualStat stat;
  double max_round_trip = 0.0;
  double max_composition = 0.0;
  double max_block_leak = 0.0;
  double max_pairing_drift = 0.0;
  double max_su2_asymmetry = 0.0;

  Rng rng(derive_seed(config.seed, 7));
  auto points = sample_chart(n, 0, static_cast<int>(config.samples), config.seed,
                             tol::sample_radius_min, tol::sample_radius_hi);
  Complex vacuum_factor{0.0, 0.0};
  for (const AffinePoint& p : points) {
    FiberState state{p, rng.annulus(0.2, 1.0), random_components(rng, n), cls};
    for (int k = 0; k <= n; ++k) {
      if (k == p.chart) continue;
      FiberState across = transport_state(state, k, conv);
      FiberState back = transport_state(across, p.chart, conv);
      max_round_trip = std::max(
          max_round_trip, (back.components() - state.components()).norm() +
                              (back.point.coords - p.coords).norm());

      // Vacuum-only states stay vacuum-only: the block structure is exact.
      FiberState vacuum_only{p, Complex{1.0, 0.0}, Vec::Zero(n), cls};
      FiberState moved = transport_state(vacuum_only, k, conv);
      max_block_leak = std::max(max_block_leak, moved.excitations.norm());

      // Dual pairing is invariant under joint transport.
      FiberState covector{p, rng.annulus(0.2, 1.0), random_components(rng, n), cls};
      Complex before = dual_pairing(covector, state);
      Complex after = dual_pairing(dual_transport(covector, k, conv), across);
      max_pairing_drift = std::max(max_pairing_drift, std::abs(after - before));
    }
    if (n >= 2) {
      QHTransition t01 = qh_transition(p, 1, cls, conv);
      AffinePoint p1 = transition_coords(p, 1);
      QHTransition t12 = qh_transition(p1, 2, cls, conv);
      QHTransition t02 = qh_transition(p, 2, cls, conv);
      max_composition =
          std::max(max_composition, (t12.matrix * t01.matrix - t02.matrix).norm());
    }
    if (n == 1) {
      max_su2_asymmetry =
          std::max(max_su2_asymmetry, su2_selfduality_check(p, cls));
    }
    if (vacuum_factor == Complex{0.0, 0.0}) {
      vacuum_factor = tau_transition(p, p.chart == 0 ? 1 : 0, cls);
    }
    stat.add(max_round_trip);
  }

  bool pass = max_round_trip <= tol::round_trip &&
              max_composition <= tol::cocycle && max_block_leak == 0.0 &&
              max_pairing_drift <= tol::pairing_drift &&
              max_su2_asymmetry == 0.0;

  ordered_json params{{"n", n},
                      {"l", config.l},
                      {"samples", config.samples},
                      {"seed", config.seed},
                      {"convention", config.cotangent ? "cotangent" : "tangent"}};
  ordered_json report = make_report("transport", params, stat.count, stat, nullptr,
                                    nullptr, pass);
  report["max_round_trip"] = max_round_trip;
  report["max_composition_residual"] = max_composition;
  report["max_block_leak"] = max_block_leak;
  report["max_pairing_drift"] = max_pairing_drift;
  report["max_su2_asymmetry"] = max_su2_asymmetry;
  // The holomorphic vacuum transition scalar and its unit-modulus gauge for
  // the first sampled point; transports in a unitary frame use the latter.
  report["vacuum_factor"] = {vacuum_factor.real(), vacuum_factor.imag()};
  Complex unitary = vacuum_factor / std::abs(vacuum_factor);
  report["vacuum_factor_unitary"] = {unitary.real(), unitary.imag()};
  return report;
}

ordered_json run_flatness(const RunConfig& config) {
  AtlasSpec atlas = config.manifold == "torus" ? torus_atlas(config.modulus)
                                               : cpn_atlas(config.n);
  FlatnessReport flatness = flatness_report(atlas, PicardClass{config.l},
                                            static_cast<int>(config.samples),
                                            config.seed);
  bool pass;
  if (config.manifold == "torus") {
    pass = flatness.qh_flat &&
           flatness.max_tangent_curvature <= tol::flat_evidence &&
           flatness.max_tangent_holonomy <= tol::flat_evidence &&
           flatness.max_line_curvature <= tol::flat_evidence &&
           flatness.max_line_holonomy <= tol::flat_evidence;
  } else {
    pass = !flatness.tangent_flat && !flatness.qh_flat;
  }
  pass = pass && flatness.qh_flat == (flatness.tangent_flat && flatness.line_flat);

  ResidualStat stat;
  stat.add(flatness.max_tangent_curvature);
  stat.add(flatness.max_tangent_holonomy);
  ordered_json params{{"manifold", config.manifold},
                      {"n", config.n},
                      {"l", config.l},
                      {"samples", config.samples},
                      {"seed", config.seed}};
  if (config.manifold == "torus") {
    params["modulus"] = {config.modulus.real(), config.modulus.imag()};
  }
  ordered_json report =
      make_report("flatness", params, config.samples, stat, nullptr, nullptr, pass);
  nlohmann::json detail;
  to_json(detail, flatness);
  report["report"] = detail;
  return report;
}

ordered_json run_all(const RunConfig& config) {
  ordered_json reports = ordered_json::array();
  bool pass = true;
  auto add = [&](ordered_json r) {
    pass = pass && r["pass"].get<bool>();
    reports.push_back(std::move(r));
  };
  auto sub = [&](const char* command) {
    RunConfig c = config;
    c.command = command;
    c.trajectory_csv.clear();
    return c;
  };

  {
    RunConfig c = sub("dims");
    c.n = 4;
    c.l = 8;
    add(run_dims(c));
  }
  {
    RunConfig c = sub("match");
    c.l = 8;
    add(run_match(c));
  }
  {
    RunConfig c = sub("cocycle");
    c.samples = 50;
    c.n = 1;
    c.l = 1;
    add(run_cocycle(c));
    for (int n = 2; n <= 3; ++n) {
      for (int l = -2; l <= 3; ++l) {
        c.n = n;
        c.l = l;
        add(run_cocycle(c));
      }
    }
  }
  for (int n = 1; n <= 2; ++n) {
    RunConfig c = sub("curvature");
    c.n = n;
    c.samples = 50;
    add(run_curvature(c));
  }
  for (int n = 1; n <= 2; ++n) {
    RunConfig c = sub("prequant");
    c.n = n;
    c.l = 1;
    c.samples = 200;
    add(run_prequant(c));
  }
  {
    RunConfig c = sub("volume");
    c.n = 1;
    add(run_volume(c));
    c.n = 2;
    c.samples = 200'000;
    add(run_volume(c));
  }
  {
    RunConfig c = sub("holonomy");
    c.n = 1;
    c.l = 1;
    c.radius = 1.0;
    add(run_holonomy(c));
  }
  for (int n = 1; n <= 2; ++n) {
    for (int l = 1; l <= 3; ++l) {
      RunConfig c = sub("veronese");
      c.n = n;
      c.l = l;
      c.samples = 100;
      add(run_veronese(c));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (int l : {1, -2}) {
      RunConfig c = sub("transport");
      c.n = n;
      c.l = l;
      c.samples = 25;
      add(run_transport(c));
    }
  }
  {
    RunConfig c = sub("flatness");
    c.manifold = "torus";
    c.l = 0;
    c.samples = 20;
    add(run_flatness(c));
    c.manifold = "cpn";
    c.n = 1;
    c.l = 1;
    add(run_flatness(c));
    c.n = 2;
    c.l = 0;
    c.samples = 10;
    add(run_flatness(c));
  }

  ordered_json report;
  report["schema"] = kReportSchema;
  report["op"] = "all";
  report["params"] = {{"seed", config.seed}, {"workers", config.workers}};
  report["reports"] = std::move(reports);
  report["pass"] = pass;
  return report;
}

ordered_json run_suite(const RunConfig& config) {
  validate_config(config);
  if (config.command == "dims") return run_dims(config);
  if (config.command == "match") return run_match(config);
  if (config.command == "cocycle") return run_cocycle(config);
  if (config.command == "curvature") return run_curvature(config);
  if (config.command == "prequant") return run_prequant(config);
  if (config.command == "volume") return run_volume(config);
  if (config.command == "holonomy") return run_holonomy(config);
  if (config.command == "veronese") return run_veronese(config);
  if (config.command == "transport") return run_transport(config);
  if (config.command == "flatness") return run_flatness(config);
  return run_all(config);
}

namespace {

void csv_row(std::string& out, const ordered_json& report) {
  char buffer[512];
  auto number = [](const ordered_json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                       : v.get<double>();
  };
  std::snprintf(buffer, sizeof(buffer), "%s,%ld,%.17g,%.17g,%.17g,%.17g,%d\n",
                report["op"].get<std::string>().c_str(),
                report["samples"].get<long>(), number(report["max_residual"]),
                number(report["mean_residual"]), number(report["value"]),
                number(report["error"]), report["pass"].get<bool>() ? 1 : 0);
  out += buffer;
}

}  // namespace

std::string render_report(const ordered_json& report, const std::string& format) {
  if (format == "csv") {
    std::string out = "op,samples,max_residual,mean_residual,value,error,pass\n";
    if (report["op"] == "all") {
      for (const auto& sub : report["reports"]) csv_row(out, sub);
    } else {
      csv_row(out, report);
    }
    return out;
  }
  return report.dump(2) + "\n";
}

int run(const RunConfig& config, std::ostream& fallback_out) {
  ordered_json report = run_suite(config);
  std::string rendered = render_report(report, config.format);
  if (config.output.empty()) {
    fallback_out << rendered;
  } else {
    std::ofstream file(config.output);
    if (!file) throw ConfigError("cannot open output path '" + config.output + "'");
    file << rendered;
  }
  return report["pass"].get<bool>() ? 0 : 1;
}

}  // namespace qbundle
