// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qbundle {

/// A homogeneous point has no valid representative in the requested chart
/// (the chart's coordinate vanishes there).
struct ChartUndefined : std::runtime_error {
  explicit ChartUndefined(const std::string& what) : std::runtime_error(what) {}
};

/// A point lies outside the overlap of the two charts involved in a
/// transition, so the transition functions are undefined.
struct OverlapUndefined : std::runtime_error {
  explicit OverlapUndefined(const std::string& what) : std::runtime_error(what) {}
};

/// An operation restricted to a specific complex dimension was called with
/// another one.
struct WrongDimension : std::runtime_error {
  explicit WrongDimension(const std::string& what) : std::runtime_error(what) {}
};

/// An atlas violates one of its invariants; the message names the failed
/// invariant.
struct InvalidAtlas : std::runtime_error {
  explicit InvalidAtlas(const std::string& what) : std::runtime_error(what) {}
};

/// Torus modulus must have positive imaginary part.
struct InvalidModulus : std::runtime_error {
  explicit InvalidModulus(const std::string& what) : std::runtime_error(what) {}
};

/// A transport loop exited the valid region of its chart.
struct LoopLeavesChart : std::runtime_error {
  explicit LoopLeavesChart(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbundle
