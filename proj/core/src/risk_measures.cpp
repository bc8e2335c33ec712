#include "riskmkt/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace riskmkt {

namespace {

void require_nonempty(std::span<const double> losses, const char* op) {
  if (losses.empty()) {
    throw std::domain_error(std::string(op) + ": empty loss sample");
  }
}

// Index (0-based, into sorted ascending losses) of the ceil(alpha*n)-th
// order statistic. The small guard absorbs alpha*n landing a rounding error
// above an integer, e.g. 0.95*100.
std::size_t order_index(std::size_t n, double alpha) {
  const double t = alpha * static_cast<double>(n);
  const double k = std::ceil(t - 1e-9 * std::max(1.0, t));
  const auto idx = static_cast<std::size_t>(std::max(1.0, k));
  return std::min(idx, n) - 1;
}

double tail_theta(double y, const MarketInstance& inst) {
  return std::clamp(std::min(inst.tail_quantile(), y), 0.0,
                    inst.dist().w_max());
}

}  // namespace

double var_samples(std::span<const double> losses, double alpha) {
  require_nonempty(losses, "var_samples");
  std::vector<double> sorted(losses.begin(), losses.end());
  const std::size_t idx = order_index(sorted.size(), alpha);
  std::nth_element(sorted.begin(),
                   sorted.begin() + static_cast<std::ptrdiff_t>(idx),
                   sorted.end());
  return sorted[idx];
}

double cvar_samples(std::span<const double> losses, double alpha) {
  require_nonempty(losses, "cvar_samples");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("cvar_samples: alpha must be in (0,1)");
  }
  std::vector<double> sorted(losses.begin(), losses.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double scale = 1.0 / ((1.0 - alpha) * static_cast<double>(n));

  // Walk zeta down through the sorted samples keeping the sum of strictly
  // larger losses, so each phi evaluation is O(1).
  double best = std::numeric_limits<double>::infinity();
  double upper_sum = 0.0;
  std::size_t upper_count = 0;
  std::size_t j = n;
  while (j > 0) {
    const double zeta = sorted[j - 1];
    const double excess = upper_sum - static_cast<double>(upper_count) * zeta;
    best = std::min(best, zeta + scale * excess);
    // absorb all ties at zeta before moving on
    while (j > 0 && sorted[j - 1] == zeta) {
      upper_sum += sorted[j - 1];
      ++upper_count;
      --j;
    }
  }
  return best;
}

double var_recourse(double y, const MarketInstance& inst) {
  const double q = inst.tail_quantile();
  if (y < q) return 0.0;
  const double gap = y - q;
  return inst.agg_a_tilde() * gap * gap;
}

double cvar_recourse(double y, const MarketInstance& inst) {
  if (y <= 0.0) return 0.0;
  const double theta = tail_theta(y, inst);
  return inst.agg_a_tilde() / (1.0 - inst.alpha()) *
         inst.dist().partial_power_integral(y, theta, 2);
}

double cvar_recourse_derivative(double y, const MarketInstance& inst) {
  if (y <= 0.0) return 0.0;
  const double theta = tail_theta(y, inst);
  return 2.0 * inst.agg_a_tilde() / (1.0 - inst.alpha()) *
         inst.dist().partial_power_integral(y, theta, 1);
}

double expected_recourse(double y, const MarketInstance& inst) {
  if (y <= 0.0) return 0.0;
  const double upper = std::min(y, inst.dist().w_max());
  return inst.agg_a_tilde() * inst.dist().partial_power_integral(y, upper, 2);
}

double expected_recourse_derivative(double y, const MarketInstance& inst) {
  if (y <= 0.0) return 0.0;
  const double upper = std::min(y, inst.dist().w_max());
  return 2.0 * inst.agg_a_tilde() *
         inst.dist().partial_power_integral(y, upper, 1);
}

double rho_spp(double y, const MarketInstance& inst) {
  const double eps = inst.epsilon();
  double value = 0.0;
  if (eps < 1.0) value += (1.0 - eps) * expected_recourse(y, inst);
  if (eps > 0.0) value += eps * cvar_recourse(y, inst);
  return value;
}

double rho_spp_derivative(double y, const MarketInstance& inst) {
  const double eps = inst.epsilon();
  double value = 0.0;
  if (eps < 1.0) value += (1.0 - eps) * expected_recourse_derivative(y, inst);
  if (eps > 0.0) value += eps * cvar_recourse_derivative(y, inst);
  return value;
}

}  // namespace riskmkt
