#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "riskmkt/market_instance.hpp"
#include "riskmkt/renewable_dist.hpp"

namespace riskmkt::testing {

// Two-generator reference case: a = (1, 2), a_tilde = (3, 6), D = 2, W ~ U[0, 1].
// Harmonic aggregates a = 2/3, a_tilde = 2; F^{-1}(0.2) = 0.2 at alpha = 0.8.
inline MarketInstance two_gen(double epsilon, double alpha = 0.8) {
  return MarketInstance({{1.0, 3.0}, {2.0, 6.0}}, 2.0, RiskParams{alpha, epsilon},
                        RenewableDistribution::uniform(1.0));
}

// Frozen optima for that case. Each comes from the stationarity condition g'(y) = 0 of
// a(D-y)^2 + rho(y) with the uniform antiderivatives, solved by hand and
// cross-checked with sympy and a bounded scalar minimizer:
//   eps = 0:   3y^2 + 2y - 4 = 0            -> y = (-1 + sqrt(13)) / 3
//   eps = 0.5: y^2 + (10/3) y - 43/15 = 0   -> y = 0.709137290827...
//   eps = 1:   (16/3) y = 46/15              -> y = 23/40 = 0.575
inline const double kTwoGenYEps0 = (-1.0 + std::sqrt(13.0)) / 3.0;
inline const double kTwoGenYEps05 = (-10.0 / 3.0 + std::sqrt(100.0 / 9.0 + 4.0 * 43.0 / 15.0)) / 2.0;
inline constexpr double kTwoGenYEps1 = 0.575;
inline double two_gen_lambda(double y) { return 4.0 / 3.0 * (2.0 - y); }

/// Composite Simpson with `panels` (even) intervals on [lo, hi].
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int panels) {
  if (hi <= lo) return 0.0;
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Simpson over [0, theta] split at the density breakpoints, `panels` per
/// smooth piece.
inline double simpson_partial_power(const RenewableDistribution& d, double y,
                                    double theta, int k, int panels = 10000) {
  std::vector<double> cuts = d.smooth_pieces();
  std::erase_if(cuts, [&](double c) { return c >= theta; });
  cuts.push_back(theta);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += simpson([&](double w) { return std::pow(y - w, k) * d.pdf(w); },
                     cuts[i], cuts[i + 1], panels);
  }
  return total;
}

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(rng_); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(uniform01(rng_) * (hi - lo + 1));
  }
  RngStream& rng() { return rng_; }

  RenewableDistribution distribution() {
    const double w_max = uniform(0.5, 2.0);
    switch (integer(0, 2)) {
      case 0:
        return RenewableDistribution::uniform(w_max);
      case 1:
        return RenewableDistribution::truncated_normal(
            uniform(0.2, 0.8) * w_max, uniform(0.15, 0.6) * w_max, w_max);
      default: {
        const int n = integer(2, 5);
        std::vector<Breakpoint> pts;
        for (int i = 0; i < n; ++i) {
          pts.push_back({w_max * i / (n - 1), uniform(0.2, 2.0)});
        }
        return RenewableDistribution::piecewise_linear(std::move(pts));
      }
    }
  }

  std::vector<GeneratorParams> generators() {
    const int n = integer(1, 4);
    std::vector<GeneratorParams> gens;
    const double a_top = uniform(1.0, 3.0);
    const double a_tilde_floor = a_top + uniform(0.1, 2.0);
    for (int i = 0; i < n; ++i) {
      // distinct by construction: spread over disjoint sub-intervals
      const double a = a_top * (i + uniform(0.2, 0.9)) / n;
      const double a_tilde = a_tilde_floor + uniform(0.0, 1.0) + 1.5 * i;
      gens.push_back({a, a_tilde});
    }
    return gens;
  }

  MarketInstance instance() {
    return MarketInstance(generators(), uniform(0.3, 3.0),
                          RiskParams{uniform(0.5, 0.97), uniform(0.0, 1.0)},
                          distribution());
  }

 private:
  RngStream rng_;
};

}  // namespace riskmkt::testing
