// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "qbundle/types.hpp"

namespace qbundle {

/// Report JSON documents carry "schema": "qbundle/1".
inline constexpr const char* kReportSchema = "qbundle/1";

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parameters of one verification run. Documented bounds: 1 <= n <= 4,
/// |l| <= 8, 1 <= samples <= 10^7, steps >= 100.
struct RunConfig {
  std::string command = "all";  // cocycle curvature prequant holonomy volume
                                // dims match veronese transport flatness all
  int n = 1;
  int l = 1;
  long samples = 50;
  std::uint64_t seed = 42;
  int steps = 1000;
  int workers = 1;
  std::string output;             // report path; empty writes to stdout
  std::string format = "json";    // json | csv
  bool cotangent = false;         // excitation-block convention
  std::string manifold = "torus";  // flatness: torus | cpn
  Complex modulus{0.0, 1.0};
  std::string trajectory_csv;  // optional holonomy trajectory dump
  double radius = 1.0;
};

/// Throws ConfigError if any parameter is outside its documented bounds.
void validate_config(const RunConfig& config);

// Suite runners. Each returns a report object
//   {op, params, samples, max_residual, mean_residual, value, error, pass}
// that is byte-deterministic for a fixed config.
nlohmann::ordered_json run_dims(const RunConfig& config);
nlohmann::ordered_json run_match(const RunConfig& config);
nlohmann::ordered_json run_cocycle(const RunConfig& config);
nlohmann::ordered_json run_curvature(const RunConfig& config);
nlohmann::ordered_json run_prequant(const RunConfig& config);
nlohmann::ordered_json run_volume(const RunConfig& config);
nlohmann::ordered_json run_holonomy(const RunConfig& config);
nlohmann::ordered_json run_veronese(const RunConfig& config);
nlohmann::ordered_json run_transport(const RunConfig& config);
nlohmann::ordered_json run_flatness(const RunConfig& config);
nlohmann::ordered_json run_all(const RunConfig& config);

/// Dispatch on config.command.
nlohmann::ordered_json run_suite(const RunConfig& config);

/// Serialize a report in the configured format (pretty JSON or flat CSV).
std::string render_report(const nlohmann::ordered_json& report,
                          const std::string& format);

/// Full CLI behaviour: validate, run, write the rendered report to the
/// output path or the stream. Returns the process exit status: 0 when every
/// sub-check passed, 1 otherwise. Throws ConfigError for invalid configs.
int run(const RunConfig& config, std::ostream& fallback_out);

}  // namespace qbundle
