#include "riskmkt/market_instance.hpp"

#include <algorithm>
#include <cmath>

namespace riskmkt {

InstanceError::InstanceError(std::string field, std::string rule)
    : std::invalid_argument(field + ": " + rule),
      field_(std::move(field)),
      rule_(std::move(rule)) {}

void RiskParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InstanceError("alpha", "alpha in (0,1)");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw InstanceError("epsilon", "epsilon in [0,1]");
  }
}

void validate_generators(std::span<const GeneratorParams> generators) {
  if (generators.empty()) {
    throw InstanceError("generators", "at least one generator required");
  }
  for (const auto& g : generators) {
    if (!(g.a > 0.0) || !std::isfinite(g.a)) {
      throw InstanceError("generators", "a_i must be > 0");
    }
    if (!(g.a_tilde > 0.0) || !std::isfinite(g.a_tilde)) {
      throw InstanceError("generators", "a_tilde_i must be > 0");
    }
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (generators[i].a == generators[j].a) {
        throw InstanceError("generators", "a_i pairwise distinct");
      }
      if (generators[i].a_tilde == generators[j].a_tilde) {
        throw InstanceError("generators", "a_tilde_i pairwise distinct");
      }
    }
  }
  double max_a = 0.0;
  double min_a_tilde = generators.front().a_tilde;
  for (const auto& g : generators) {
    max_a = std::max(max_a, g.a);
    min_a_tilde = std::min(min_a_tilde, g.a_tilde);
  }
  if (!(max_a < min_a_tilde)) {
    throw InstanceError("generators", "max a_i must be < min a_tilde_i");
  }
}

MarketInstance::MarketInstance(std::vector<GeneratorParams> generators,
                               double demand, RiskParams risk,
                               RenewableDistribution dist)
    : generators_(std::move(generators)),
      demand_(demand),
      risk_(risk),
      dist_(std::move(dist)) {
  validate_generators(generators_);
  if (!(demand_ >= 0.0) || !std::isfinite(demand_)) {
    throw InstanceError("demand", "demand must be finite and >= 0");
  }
  risk_.validate();

  double inv_a = 0.0;
  double inv_a_tilde = 0.0;
  for (const auto& g : generators_) {
    inv_a += 1.0 / g.a;
    inv_a_tilde += 1.0 / g.a_tilde;
  }
  agg_a_ = 1.0 / inv_a;
  agg_a_tilde_ = 1.0 / inv_a_tilde;
  tail_quantile_ = dist_.quantile(1.0 - risk_.alpha);
}

MarketInstance MarketInstance::with_risk(RiskParams risk) const {
  return MarketInstance(generators_, demand_, risk, dist_);
}

MarketInstance MarketInstance::with_demand(double demand) const {
  return MarketInstance(generators_, demand, risk_, dist_);
}

}  // namespace riskmkt
