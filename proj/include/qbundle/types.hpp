// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace qbundle {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Integer power of a complex scalar by squaring; z^0 == 1, negative
/// exponents invert. Deterministic, unlike std::pow on complex arguments.
inline Complex ipow(Complex z, int e) {
  if (e == 0) return Complex{1.0, 0.0};
  bool invert = e < 0;
  unsigned long long m = invert ? -static_cast<long long>(e) : e;
  Complex acc{1.0, 0.0};
  Complex base = z;
  while (m > 0) {
    if (m & 1ull) acc *= base;
    base *= base;
    m >>= 1;
  }
  return invert ? Complex{1.0, 0.0} / acc : acc;
}

/// Operator 2-norm (largest singular value).
inline double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

/// Operator-norm distance to the identity of matching dimension.
inline double deviation_from_identity(const Mat& m) {
  return op_norm(m - Mat::Identity(m.rows(), m.cols()));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Combine a master seed with a stream index (sample chunks, chart pairs, ...)
/// into an independent sub-seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

/// Deterministic uniform variates. Raw mt19937_64 bits are mapped to doubles
/// directly so sequences are reproducible independent of the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Point of the annulus lo <= |z| <= hi, modulus and phase uniform.
  Complex annulus(double lo, double hi) {
    double r = uniform(lo, hi);
    double phi = uniform(0.0, 2.0 * EIGEN_PI);
    return Complex{r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qbundle
