#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "riskmkt/renewable_dist.hpp"

namespace riskmkt {

/// CVaR level alpha in (0, 1) and planner weight epsilon in [0, 1] on CVaR
/// versus expectation.
struct RiskParams {
  double alpha = 0.8;
  double epsilon = 0.0;

  /// Throws InstanceError if alpha is not in (0,1) or epsilon not in [0,1].
  void validate() const;
};

/// Quadratic cost coefficients of one conventional generator: a*x^2 for the
/// day-ahead plant and a_tilde*z^2 for the ancillary (real-time) plant.
struct GeneratorParams {
  double a = 0.0;
  double a_tilde = 0.0;
};

/// A violated instance assumption. rule() is a short stable description,
/// e.g. "a_i pairwise distinct".
class InstanceError : public std::invalid_argument {
 public:
  InstanceError(std::string field, std::string rule);

  const std::string& field() const { return field_; }
  const std::string& rule() const { return rule_; }

 private:
  std::string field_;
  std::string rule_;
};

class MarketInstance {
 public:
  /// Validates every coefficient assumption and throws InstanceError naming
  /// the first violated rule.
  MarketInstance(std::vector<GeneratorParams> generators, double demand,
                 RiskParams risk, RenewableDistribution dist);

  std::span<const GeneratorParams> generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  double demand() const { return demand_; }
  const RiskParams& risk() const { return risk_; }
  double alpha() const { return risk_.alpha; }
  double epsilon() const { return risk_.epsilon; }
  const RenewableDistribution& dist() const { return dist_; }

  /// (sum_i 1/a_i)^-1
  double agg_a() const { return agg_a_; }
  /// (sum_i 1/a_tilde_i)^-1
  double agg_a_tilde() const { return agg_a_tilde_; }

  /// F_W^{-1}(1 - alpha): the renewable level below which the recourse loss
  /// lies in the CVaR tail.
  double tail_quantile() const { return tail_quantile_; }

  /// Same generators and distribution with a different risk weighting.
  MarketInstance with_risk(RiskParams risk) const;
  MarketInstance with_demand(double demand) const;

 private:
  std::vector<GeneratorParams> generators_;
  double demand_;
  RiskParams risk_;
  RenewableDistribution dist_;
  double agg_a_ = 0.0;
  double agg_a_tilde_ = 0.0;
  double tail_quantile_ = 0.0;
};

/// Validates generator coefficients alone. Used by bid intake and by the
/// MarketInstance constructor.
void validate_generators(std::span<const GeneratorParams> generators);

}  // namespace riskmkt
