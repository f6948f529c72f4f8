// Copyright 2026 The qbundle Authors.
// SPDX-License-Identifier: Apache-2.0

#include "qbundle/hermitian_geometry.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qbundle/errors.hpp"
#include "qbundle/tolerances.hpp"

namespace qbundle {

namespace {

constexpr double kTwoPi = 2.0 * EIGEN_PI;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussOrder = 8;
constexpr double kGaussNode[kGaussOrder] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr double kGaussWeight[kGaussOrder] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

/// Composite Gauss-Legendre integral of f over [a, b].
double gauss_composite(const std::function<double(double)>& f, double a, double b,
                       int panels) {
  double total = 0.0;
  double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * width;
    for (int q = 0; q < kGaussOrder; ++q) {
      total += kGaussWeight[q] * f(mid + 0.5 * width * kGaussNode[q]);
    }
  }
  return total * 0.5 * width;
}

double squared_norm(const Vec& z) { return z.squaredNorm(); }

}  // namespace

Mat ConnectionCoeffs::contract_velocity(const Vec& v) const {
  Mat a = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < n_; ++j) a(i, k) += (*this)(i, j, k) * v(j);
  return a;
}

double ConnectionCoeffs::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

double CurvatureTensor::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

double kahler_potential(const AffinePoint& p) {
  return std::log1p(squared_norm(p.coords));
}

Mat symplectic_form(const AffinePoint& p) {
  const int n = p.n();
  const double s = 1.0 + squared_norm(p.coords);
  const double s2 = s * s;
  Mat omega(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex num = -std::conj(p.coords(i)) * p.coords(j);
      if (i == j) num += s;
      omega(i, j) = num / s2;
    }
  }
  return omega;
}

MetricAtPoint fs_metric(const AffinePoint& p) {
  const int n = p.n();
  const double s = 1.0 + squared_norm(p.coords);
  const double inv_s = 1.0 / s;
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = -std::conj(p.coords(i)) * p.coords(j) * inv_s * inv_s;
      if (i == j) g(i, j) += inv_s;
    }
  }
  return MetricAtPoint{p, std::move(g)};
}

Mat fs_metric_inverse(const AffinePoint& p) {
  const int n = p.n();
  const double s = 1.0 + squared_norm(p.coords);
  Mat ginv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      ginv(i, l) = p.coords(i) * std::conj(p.coords(l)) * s;
      if (i == l) ginv(i, l) += s;
    }
  }
  return ginv;
}

ConnectionCoeffs chern_connection(const AffinePoint& p) {
  const int n = p.n();
  const double inv_s = 1.0 / (1.0 + squared_norm(p.coords));
  ConnectionCoeffs gamma(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Complex value{0.0, 0.0};
        if (i == k) value -= std::conj(p.coords(j));
        if (i == j) value -= std::conj(p.coords(k));
        gamma(i, j, k) = value * inv_s;
      }
    }
  }
  return gamma;
}

CurvatureTensor curvature_tangent(const AffinePoint& p) {
  const int n = p.n();
  const double s = 1.0 + squared_norm(p.coords);
  const double inv_s = 1.0 / s;
  const double inv_s2 = inv_s * inv_s;
  CurvatureTensor r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Complex value{0.0, 0.0};
          if (i == k && j == l) value += inv_s;
          if (i == j && k == l) value += inv_s;
          Complex bar{0.0, 0.0};
          if (i == k) bar += std::conj(p.coords(j));
          if (i == j) bar += std::conj(p.coords(k));
          value -= bar * p.coords(l) * inv_s2;
          r(i, j, k, l) = value;
        }
      }
    }
  }
  return r;
}

Mat curvature_line(const AffinePoint& p, PicardClass cls) {
  return static_cast<double>(cls.l) * fs_metric(p).g;
}

Vec line_connection(const AffinePoint& p, PicardClass cls) {
  const double inv_s = 1.0 / (1.0 + squared_norm(p.coords));
  Vec theta(p.n());
  for (int i = 0; i < p.n(); ++i) {
    theta(i) = -static_cast<double>(cls.l) * std::conj(p.coords(i)) * inv_s;
  }
  return theta;
}

double prequantization_residual(const AffinePoint& p) {
  return (curvature_line(p, PicardClass{1}) - symplectic_form(p)).norm();
}

Mat integrate_frame_transport(const std::function<Mat(double)>& coefficient,
                              int dim, int steps,
                              std::vector<std::pair<double, Vec>>* trajectory,
                              double* unwrapped_angle) {
  Mat m = Mat::Identity(dim, dim);
  const double h = 1.0 / steps;
  double angle = 0.0;
  Complex prev = m(0, 0);

  auto record = [&](double t) {
    if (!trajectory) return;
    Vec flat(static_cast<Eigen::Index>(dim) * dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) flat(r * dim + c) = m(r, c);
    trajectory->emplace_back(t, std::move(flat));
  };
  record(0.0);

  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Mat a0 = coefficient(t);
    const Mat a1 = coefficient(t + 0.5 * h);
    const Mat a2 = coefficient(t + h);
    const Mat k1 = a0 * m;
    const Mat k2 = a1 * (m + 0.5 * h * k1);
    const Mat k3 = a1 * (m + 0.5 * h * k2);
    const Mat k4 = a2 * (m + h * k3);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (dim == 1) {
      angle += std::arg(m(0, 0) / prev);
      prev = m(0, 0);
    }
    record(t + h);
  }
  if (unwrapped_angle) {
    *unwrapped_angle = dim == 1 ? angle : std::numeric_limits<double>::quiet_NaN();
  }
  return m;
}

HolonomyResult holonomy_loop(BundleKind kind, PicardClass cls, const Loop& loop,
                             std::vector<std::pair<double, Vec>>* trajectory) {
  const int n = loop.center.n();
  if (loop.steps < 100)
    throw std::invalid_argument("holonomy_loop: at least 100 integrator steps required");
  Vec direction = loop.direction.size() == 0 ? Vec::Unit(n, 0) : loop.direction;
  direction /= direction.norm();

  auto gamma = [&](double t) -> Vec {
    Complex phase = loop.radius * std::exp(Complex{0.0, kTwoPi * t});
    return loop.center.coords + phase * direction;
  };
  auto gamma_dot = [&](double t) -> Vec {
    Complex phase = loop.radius * std::exp(Complex{0.0, kTwoPi * t});
    return Complex{0.0, kTwoPi} * phase * direction;
  };

  const int dim = kind == BundleKind::tangent ? n : 1;
  auto coefficient = [&](double t) -> Mat {
    AffinePoint p{loop.center.chart, gamma(t)};
    if (kind == BundleKind::tangent) {
      return -chern_connection(p).contract_velocity(gamma_dot(t));
    }
    Vec theta = line_connection(p, cls);
    Mat a(1, 1);
    a(0, 0) = -(theta.transpose() * gamma_dot(t))(0, 0);
    return a;
  };

  HolonomyResult result;
  result.loop = loop;
  result.loop.direction = direction;
  result.kind = kind;
  result.cls = cls;
  result.transport = integrate_frame_transport(coefficient, dim, loop.steps,
                                               trajectory, &result.unwrapped_angle);
  result.deviation = deviation_from_identity(result.transport);
  return result;
}

double enclosed_curvature_angle(BundleKind kind, PicardClass cls,
                                const AffinePoint& center, double radius,
                                int radial_panels, int angular_points) {
  if (center.n() != 1)
    throw WrongDimension("enclosed_curvature_angle: only defined on CP^1");

  auto coefficient = [&](Complex z) -> double {
    AffinePoint p{center.chart, Vec::Constant(1, z)};
    if (kind == BundleKind::tangent) return curvature_tangent(p)(0, 0, 0, 0).real();
    return curvature_line(p, cls)(0, 0).real();
  };

  double flux = 0.0;
  for (int a = 0; a < angular_points; ++a) {
    double phi = (a + 0.5) * kTwoPi / angular_points;
    Complex dir{std::cos(phi), std::sin(phi)};
    flux += gauss_composite(
        [&](double rho) { return coefficient(center.coords(0) + rho * dir) * rho; },
        0.0, radius, radial_panels);
  }
  flux *= kTwoPi / angular_points;
  return 2.0 * flux;
}

double IntegralResult::scaled_value() const {
  return value * std::pow(scale_factor, n);
}

namespace {

double fs_density(const AffinePoint& p) {
  return fs_metric(p).g.determinant().real();
}

IntegralResult volume_quadrature_cp1(std::uint64_t panels) {
  const int angular = 32;
  auto run = [&](int radial_panels) {
    double total = 0.0;
    for (int a = 0; a < angular; ++a) {
      double phi = (a + 0.5) * kTwoPi / angular;
      Complex dir{std::cos(phi), std::sin(phi)};
      total += gauss_composite(
          [&](double theta) {
            double r = std::tan(theta);
            double sec2 = 1.0 + r * r;
            AffinePoint p{0, Vec::Constant(1, r * dir)};
            return fs_density(p) * r * sec2;
          },
          0.0, 0.5 * EIGEN_PI, radial_panels);
    }
    return total * (kTwoPi / angular) / EIGEN_PI;
  };
  int panels_full = static_cast<int>(panels);
  double coarse = run(std::max(panels_full / 2, 1));
  double fine = run(panels_full);
  IntegralResult result;
  result.n = 1;
  result.value = fine;
  result.estimated_error = std::abs(fine - coarse);
  result.method = IntegralMethod::quadrature;
  result.scale_factor = 2.0;
  result.samples = panels;
  return result;
}

struct ChunkStat {
  double sum = 0.0;
  double sum_sq = 0.0;
};

IntegralResult volume_monte_carlo(int n, std::uint64_t samples, std::uint64_t seed,
                                  int workers) {
  constexpr std::uint64_t kChunk = 8192;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  double factor = EIGEN_PI;  // n! * pi^n
  for (int i = 2; i <= n; ++i) factor *= i * EIGEN_PI;

  std::vector<ChunkStat> stats(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    Rng rng(derive_seed(seed, c));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(begin + kChunk, samples);
    ChunkStat stat;
    Vec z(n);
    for (std::uint64_t s = begin; s < end; ++s) {
      double weight = 1.0;
      for (int i = 0; i < n; ++i) {
        double theta = rng.uniform01() * 0.5 * EIGEN_PI;
        double phi = rng.uniform01() * kTwoPi;
        double r = std::tan(theta);
        weight *= r * (1.0 + r * r);
        z(i) = Complex{r * std::cos(phi), r * std::sin(phi)};
      }
      AffinePoint p{0, z};
      double value = factor * fs_density(p) * weight;
      stat.sum += value;
      stat.sum_sq += value * value;
    }
    stats[c] = stat;
  };

  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    int thread_count = std::min<std::uint64_t>(workers, chunks);
    pool.reserve(thread_count);
    for (int w = 0; w < thread_count; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Reduce in chunk order so results are byte-identical regardless of how
  // chunks were scheduled across workers.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const ChunkStat& stat : stats) {
    sum += stat.sum;
    sum_sq += stat.sum_sq;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double variance = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));

  IntegralResult result;
  result.n = n;
  result.value = mean;
  result.estimated_error = std::sqrt(variance / count);
  result.method = IntegralMethod::monte_carlo;
  result.scale_factor = std::pow(static_cast<double>(n + 1), 1.0 / n);
  result.samples = samples;
  result.seed = seed;
  result.workers = workers;
  return result;
}

}  // namespace

IntegralResult volume_integral(int n, IntegralMethod method, std::uint64_t samples,
                               std::uint64_t seed, int workers) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("volume_integral: n must be 1, 2 or 3");
  if (method == IntegralMethod::quadrature) {
    if (n != 1)
      throw std::invalid_argument("volume_integral: quadrature supports n = 1 only");
    return volume_quadrature_cp1(samples == 0 ? 64 : samples);
  }
  if (samples == 0)
    throw std::invalid_argument("volume_integral: sample count required");
  return volume_monte_carlo(n, samples, seed, workers);
}

}  // namespace qbundle
