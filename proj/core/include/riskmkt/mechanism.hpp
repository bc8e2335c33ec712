#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "riskmkt/equilibrium.hpp"
#include "riskmkt/market_instance.hpp"
#include "riskmkt/planner.hpp"
#include "riskmkt/renewable_dist.hpp"

namespace riskmkt {

/// Submitted cost coefficients, one (a, a_tilde) pair per generator.
using BidSet = std::vector<GeneratorParams>;

/// Bid intake failure; rule() names the violated coefficient assumption.
class RejectedBid : public std::invalid_argument {
 public:
  explicit RejectedBid(std::string rule);
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

struct GeneratorSettlement {
  double a = 0.0;
  double a_tilde = 0.0;
  double stage1_qty = 0.0;
  double stage2_qty = 0.0;
  double stage1_payment = 0.0;
  double stage2_payment = 0.0;
  double production_total = 0.0;
  double profit = 0.0;
};

struct SettlementRecord {
  double realized_w = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double y_star = 0.0;
  double demand = 0.0;
  /// min(w, y*): scheduled renewable energy actually delivered.
  double renewable_used = 0.0;
  /// [w - y*]_+ left unsold; disposal markets are not modeled.
  double renewable_spilled = 0.0;
  double iso_outlay = 0.0;
  std::vector<GeneratorSettlement> generators;
};

/// Output of steps (1)-(2): validated bids, the planner solution and the
/// announced prices. Settlement at any realized w reuses it.
struct ClearedMarket {
  MarketInstance instance;
  PlannerSolution solution;
  PriceSchedule prices;
};

ClearedMarket clear_market(const BidSet& bids, double demand, RiskParams risk,
                           const RenewableDistribution& dist);

/// Steps (3)-(5) at a realized renewable level. Generators are paid
/// P1 x for day-ahead energy and P2(w) z for real-time energy.
SettlementRecord settle(const ClearedMarket& market, double realized_w);

/// Full five-step mechanism for one realization.
SettlementRecord run_mechanism(const BidSet& bids, double demand, RiskParams risk,
                               const RenewableDistribution& dist, double realized_w);

/// Evaluates P1 x - a x^2 + P2 z - a_tilde z^2 at the settled quantities of
/// generator i.
double generator_realized_profit(const SettlementRecord& record, std::size_t i);

struct SimulationSummary {
  std::size_t runs = 0;
  double mean_iso_outlay = 0.0;
  double cvar_iso_outlay = 0.0;
  double mean_stage2_outlay = 0.0;
  /// max over runs of |sum z - [y* - w]_+|
  double max_clearing_shortfall = 0.0;
  std::vector<double> mean_generator_profit;
};

struct SimulationResult {
  std::vector<SettlementRecord> records;
  SimulationSummary summary;
};

/// n independent settlements with W drawn from `dist` using `rng`. The ISO
/// outlay CVaR uses the instance alpha.
SimulationResult simulate_runs(const BidSet& bids, double demand, RiskParams risk,
                               const RenewableDistribution& dist, std::size_t n,
                               RngStream& rng);

}  // namespace riskmkt
