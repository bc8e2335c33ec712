#include "riskmkt/mechanism.hpp"

#include <algorithm>
#include <cmath>

#include "riskmkt/risk_measures.hpp"

namespace riskmkt {

RejectedBid::RejectedBid(std::string rule)
    : std::invalid_argument("rejected bid: " + rule), rule_(std::move(rule)) {}

ClearedMarket clear_market(const BidSet& bids, double demand, RiskParams risk,
                           const RenewableDistribution& dist) {
  try {
    validate_generators(bids);
  } catch (const InstanceError& e) {
    throw RejectedBid(e.rule());
  }
  MarketInstance inst(bids, demand, risk, dist);
  PlannerSolution sol = solve_spp(inst);
  PriceSchedule prices = equilibrium_prices(sol, inst);
  return ClearedMarket{std::move(inst), std::move(sol), prices};
}

SettlementRecord settle(const ClearedMarket& market, double realized_w) {
  const auto& inst = market.instance;
  if (!(realized_w >= 0.0 && realized_w <= inst.dist().w_max())) {
    throw std::domain_error("settle: realized w outside [0, w_max]");
  }
  const double y = market.solution.y_star;

  SettlementRecord rec;
  rec.realized_w = realized_w;
  rec.p1 = market.prices.p1;
  rec.p2 = market.prices.p2(realized_w);
  rec.y_star = y;
  rec.demand = inst.demand();
  rec.renewable_used = std::min(realized_w, y);
  rec.renewable_spilled = std::max(0.0, realized_w - y);

  rec.generators.reserve(inst.size());
  for (const auto& g : inst.generators()) {
    GeneratorSettlement s;
    s.a = g.a;
    s.a_tilde = g.a_tilde;
    s.stage1_qty = gen_stage1_best_response(rec.p1, g);
    s.stage2_qty = gen_stage2_best_response(rec.p2, g);
    s.stage1_payment = rec.p1 * s.stage1_qty;
    s.stage2_payment = rec.p2 * s.stage2_qty;
    s.production_total = s.stage1_qty + s.stage2_qty;
    rec.iso_outlay += s.stage1_payment + s.stage2_payment;
    rec.generators.push_back(s);
  }
  for (std::size_t i = 0; i < rec.generators.size(); ++i) {
    rec.generators[i].profit = generator_realized_profit(rec, i);
  }
  return rec;
}

SettlementRecord run_mechanism(const BidSet& bids, double demand, RiskParams risk,
                               const RenewableDistribution& dist,
                               double realized_w) {
  return settle(clear_market(bids, demand, risk, dist), realized_w);
}

double generator_realized_profit(const SettlementRecord& record, std::size_t i) {
  const auto& s = record.generators.at(i);
  return record.p1 * s.stage1_qty - s.a * s.stage1_qty * s.stage1_qty +
         record.p2 * s.stage2_qty - s.a_tilde * s.stage2_qty * s.stage2_qty;
}

SimulationResult simulate_runs(const BidSet& bids, double demand, RiskParams risk,
                               const RenewableDistribution& dist, std::size_t n,
                               RngStream& rng) {
  if (n == 0) throw std::domain_error("simulate_runs: n must be >= 1");
  const ClearedMarket market = clear_market(bids, demand, risk, dist);
  const std::vector<double> draws = dist.sample(rng, n);

  SimulationResult out;
  out.records.reserve(n);
  std::vector<double> outlays;
  outlays.reserve(n);
  auto& sum = out.summary;
  sum.runs = n;
  sum.mean_generator_profit.assign(bids.size(), 0.0);

  for (double w : draws) {
    SettlementRecord rec = settle(market, w);
    double total_z = 0.0;
    double stage2_outlay = 0.0;
    for (std::size_t i = 0; i < rec.generators.size(); ++i) {
      total_z += rec.generators[i].stage2_qty;
      stage2_outlay += rec.generators[i].stage2_payment;
      sum.mean_generator_profit[i] += rec.generators[i].profit;
    }
    sum.max_clearing_shortfall =
        std::max(sum.max_clearing_shortfall,
                 std::abs(total_z - std::max(0.0, rec.y_star - w)));
    sum.mean_iso_outlay += rec.iso_outlay;
    sum.mean_stage2_outlay += stage2_outlay;
    outlays.push_back(rec.iso_outlay);
    out.records.push_back(std::move(rec));
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  sum.mean_iso_outlay *= inv_n;
  sum.mean_stage2_outlay *= inv_n;
  for (double& p : sum.mean_generator_profit) p *= inv_n;
  sum.cvar_iso_outlay = cvar_samples(outlays, risk.alpha);
  return out;
}

}  // namespace riskmkt
