#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace riskmkt {

/// Caller-owned random stream. Every stochastic routine takes one of these by
/// reference; there is no global RNG state anywhere in the library.
using RngStream = std::mt19937_64;

/// Uniform draw on [0, 1) with 53 random bits. Used instead of
/// std::uniform_real_distribution so sample streams are identical across
/// standard library implementations.
double uniform01(RngStream& rng);

enum class DistKind { uniform, truncated_normal, piecewise_linear };

std::string_view to_string(DistKind kind);

struct Breakpoint {
  double w;
  double f;
};

/// Renewable output W supported on [0, w_max] with a continuous, strictly
/// positive density.
///
/// Values are immutable after construction. The piecewise-linear family is
/// normalized at construction so the trapezoid area of the supplied
/// breakpoints integrates to one.
class RenewableDistribution {
 public:
  static RenewableDistribution uniform(double w_max);
  static RenewableDistribution truncated_normal(double location, double scale,
                                                double w_max);
  static RenewableDistribution piecewise_linear(std::vector<Breakpoint> points);

  DistKind kind() const { return kind_; }
  double w_max() const { return w_max_; }
  double location() const { return location_; }
  double scale() const { return scale_; }
  /// Normalized breakpoints (piecewise-linear only; empty otherwise).
  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  /// Points where the density may fail to be smooth, including both ends of
  /// the support. Quadrature routines split their domain here.
  std::vector<double> smooth_pieces() const;

  double pdf(double w) const;
  double cdf(double w) const;
  /// Minimal z with cdf(z) >= p.
  double quantile(double p) const;

  /// n i.i.d. draws by inverse transform; deterministic given the stream.
  std::vector<double> sample(RngStream& rng, std::size_t n) const;

  /// Integral of (y - w)^k f(w) over [0, theta], k in {1, 2}.
  ///
  /// Exact polynomial antiderivatives for the uniform and piecewise-linear
  /// families; adaptive Gauss-Kronrod (absolute tolerance 1e-10) for the
  /// truncated normal. theta above w_max is clamped to the support.
  double partial_power_integral(double y, double theta, int k) const;

 private:
  RenewableDistribution() = default;

  double std_normal_cdf_between(double w) const;
  std::size_t segment_of(double w) const;

  DistKind kind_ = DistKind::uniform;
  double w_max_ = 1.0;
  double location_ = 0.0;
  double scale_ = 1.0;
  // truncated normal: Phi((0-mu)/sigma) and normalizer Z
  double tn_lower_ = 0.0;
  double tn_mass_ = 1.0;
  std::vector<Breakpoint> points_;
  std::vector<double> cum_;  // cdf at each breakpoint
};

}  // namespace riskmkt
