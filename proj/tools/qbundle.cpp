// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0
//
// qbundle: numerical verification suites for quantum Hilbert-space bundles
// over complex projective space, with a flat-torus contrast case. Each
// subcommand runs one suite and emits a deterministic JSON (or CSV) report;
// exit status 0 means every sub-check passed its documented tolerance, 1
// means a check failed, 2 means the configuration was invalid.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbundle/report.hpp"

namespace {

int env_workers() {
  const char* env = std::getenv("QBUNDLE_THREADS");
  if (!env) return 1;
  int value = std::atoi(env);
  return value >= 1 ? value : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qbundle: verification suites for quantum Hilbert-space bundles over "
      "CP^n (cocycles, curvature, prequantization, holonomy, volume, section "
      "dimensions, representation matching, Veronese descent, transport, "
      "flatness)"};
  app.require_subcommand(1);

  qbundle::RunConfig config;
  config.workers = env_workers();
  std::vector<double> modulus{0.0, 1.0};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", config.n, "complex dimension (1..4)");
    cmd->add_option("--l", config.l, "Picard class (|l| <= 8)");
    cmd->add_option("--samples", config.samples, "sample count (<= 1e7)");
    cmd->add_option("--seed", config.seed, "RNG seed");
    cmd->add_option("--steps", config.steps, "integrator steps (>= 100)");
    cmd->add_option("--workers", config.workers,
                    "worker threads (default $QBUNDLE_THREADS or 1); results "
                    "do not depend on this");
    cmd->add_option("--output", config.output, "report path (default stdout)");
    cmd->add_option("--format", config.format, "json or csv");
    cmd->add_flag("--cotangent", config.cotangent,
                  "use the inverse-transpose (cotangent) excitation convention");
  };

  for (const char* name : {"cocycle", "curvature", "prequant", "volume", "dims",
                           "match", "veronese", "transport", "all"}) {
    add_common(app.add_subcommand(name));
  }
  CLI::App* holonomy = app.add_subcommand("holonomy");
  add_common(holonomy);
  holonomy->add_option("--radius", config.radius, "loop radius (default 1)");
  holonomy->add_option("--trajectory-csv", config.trajectory_csv,
                       "dump the transported frame trajectory to this CSV path");
  CLI::App* flatness = app.add_subcommand("flatness");
  add_common(flatness);
  flatness->add_option("--manifold", config.manifold, "torus or cpn");
  flatness->add_option("--modulus", modulus,
                       "torus modulus as re im (default 0 1)")
      ->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (modulus.size() == 2) config.modulus = {modulus[0], modulus[1]};

  try {
    return qbundle::run(config, std::cout);
  } catch (const qbundle::ConfigError& e) {
    std::cerr << "qbundle: invalid configuration: " << e.what() << "\n"
              << "run with --help for usage\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qbundle: " << e.what() << "\n";
    return 1;
  }
}
