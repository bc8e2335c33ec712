#include "riskmkt/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace riskmkt {

double PriceSchedule::p2(double w) const {
  return p2_slope * std::max(0.0, p2_intercept - w);
}

std::optional<double> PriceSchedule::p2_piecewise(double w, double mu_star) const {
  if (w >= p2_intercept) return 0.0;
  const double weight = w <= theta_star ? weight_tail : weight_body;
  if (weight <= 0.0) return std::nullopt;
  return mu_star / weight;
}

PriceSchedule equilibrium_prices(const PlannerSolution& sol,
                                 const MarketInstance& inst) {
  const double eps = inst.epsilon();
  PriceSchedule prices;
  prices.p1 = sol.lambda_star;
  prices.p2_slope = 2.0 * inst.agg_a_tilde();
  prices.p2_intercept = sol.y_star;
  prices.theta_star = sol.theta_star;
  prices.weight_tail = 1.0 - eps + eps / (1.0 - inst.alpha());
  prices.weight_body = 1.0 - eps;

  if (eps < 1.0) {
    for (double w : default_w_grid(sol, inst)) {
      const auto quotient = prices.p2_piecewise(w, dual_mu(sol, w, inst));
      const double analytic = prices.p2(w);
      if (!quotient || std::abs(*quotient - analytic) > 1e-10) {
        throw std::logic_error("equilibrium_prices: piecewise and analytic P2 "
                               "disagree at w=" + std::to_string(w));
      }
    }
  }
  return prices;
}

double gen_stage1_best_response(double p1, const GeneratorParams& g) {
  return std::max(0.0, p1) / (2.0 * g.a);
}

double gen_stage2_best_response(double p2_at_w, const GeneratorParams& g) {
  return std::max(0.0, p2_at_w) / (2.0 * g.a_tilde);
}

SceqReport verify_sceq(const PlannerSolution& sol, const PriceSchedule& prices,
                       const MarketInstance& inst, std::span<const double> w_grid) {
  SceqReport r;
  const auto gens = inst.generators();

  double supply = sol.y_star;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const double x = gen_stage1_best_response(prices.p1, gens[i]);
    r.max_stage1_gap = std::max(r.max_stage1_gap, std::abs(x - sol.x_star[i]));
    supply += sol.x_star[i];
  }
  r.clearing_gap = std::abs(supply - inst.demand());

  for (double w : w_grid) {
    const RecourseDispatch planned = second_stage_dispatch(sol.y_star, w, inst);
    const double price = prices.p2(w);
    double total = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const double z = gen_stage2_best_response(price, gens[i]);
      total += z;
      r.max_stage2_gap = std::max(r.max_stage2_gap, std::abs(z - planned.z[i]));
    }
    const double shortfall = std::max(0.0, sol.y_star - w);
    r.max_stage2_clearing_gap =
        std::max(r.max_stage2_clearing_gap, std::abs(total - shortfall));
    if (total < sol.y_star - w - 1e-10) r.recourse_feasible = false;
  }
  return r;
}

std::vector<SweepPoint> epsilon_sweep(const MarketInstance& base,
                                      std::span<const double> eps_grid) {
  if (!std::is_sorted(eps_grid.begin(), eps_grid.end())) {
    throw std::domain_error("epsilon_sweep: grid must be sorted");
  }
  std::vector<SweepPoint> curve;
  curve.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const MarketInstance inst =
        base.with_risk(RiskParams{base.alpha(), eps});
    const PlannerSolution sol = solve_spp(inst);
    const PriceSchedule prices = equilibrium_prices(sol, inst);
    curve.push_back({eps, sol.y_star, prices.p1, prices.p2_slope,
                     prices.p2_intercept});
  }
  return curve;
}

std::vector<double> linspace(double from, double to, std::size_t steps) {
  std::vector<double> out;
  out.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    out.push_back(i == steps ? to
                             : from + (to - from) * static_cast<double>(i) /
                                          static_cast<double>(steps));
  }
  return out;
}

}  // namespace riskmkt
