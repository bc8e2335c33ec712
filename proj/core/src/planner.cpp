#include "riskmkt/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "riskmkt/risk_measures.hpp"

namespace riskmkt {

namespace {

constexpr double kBisectionWidth = 1e-10;

}  // namespace

RecourseDispatch second_stage_dispatch(double y, double w,
                                       const MarketInstance& inst) {
  const double shortfall = std::max(0.0, y - w);
  RecourseDispatch out;
  out.z.reserve(inst.size());
  for (const auto& g : inst.generators()) {
    out.z.push_back(inst.agg_a_tilde() * shortfall / g.a_tilde);
  }
  out.mu = 2.0 * inst.agg_a_tilde() * shortfall;
  return out;
}

double recourse_cost(double y, double w, const MarketInstance& inst) {
  const double shortfall = std::max(0.0, y - w);
  return inst.agg_a_tilde() * shortfall * shortfall;
}

std::vector<double> first_stage_split(double y, const MarketInstance& inst) {
  if (y < 0.0 || y > inst.demand()) {
    throw std::domain_error("first_stage_split: y=" + std::to_string(y) +
                            " outside [0, D]");
  }
  const double residual = inst.demand() - y;
  std::vector<double> x;
  x.reserve(inst.size());
  for (const auto& g : inst.generators()) {
    x.push_back(inst.agg_a() * residual / g.a);
  }
  return x;
}

double reduced_objective(double y, const MarketInstance& inst) {
  const double residual = inst.demand() - y;
  return inst.agg_a() * residual * residual + rho_spp(y, inst);
}

double reduced_gradient(double y, const MarketInstance& inst) {
  return -2.0 * inst.agg_a() * (inst.demand() - y) + rho_spp_derivative(y, inst);
}

PlannerSolution solve_spp(const MarketInstance& inst) {
  const double demand = inst.demand();
  double y = 0.0;
  if (demand > 0.0) {
    if (reduced_gradient(demand, inst) <= 0.0) {
      y = demand;
    } else {
      // g'(0) = -2aD < 0 and g'(D) > 0; g strictly convex
      double lo = 0.0;
      double hi = demand;
      while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        if (reduced_gradient(mid, inst) > 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      y = 0.5 * (lo + hi);
    }
  }

  PlannerSolution sol;
  sol.y_star = y;
  sol.x_star = first_stage_split(y, inst);
  sol.lambda_star = 2.0 * inst.agg_a() * (demand - y);
  sol.theta_star = std::min(inst.tail_quantile(), y);
  sol.objective = reduced_objective(y, inst);
  return sol;
}

double risk_weight(const PlannerSolution& sol, double w,
                   const MarketInstance& inst) {
  const double eps = inst.epsilon();
  if (w >= sol.y_star) return 0.0;
  if (w <= sol.theta_star) return 1.0 - eps + eps / (1.0 - inst.alpha());
  return 1.0 - eps;
}

double dual_mu(const PlannerSolution& sol, double w, const MarketInstance& inst) {
  const double shortfall = std::max(0.0, sol.y_star - w);
  return risk_weight(sol, w, inst) * 2.0 * inst.agg_a_tilde() * shortfall;
}

std::vector<double> default_w_grid(const PlannerSolution& sol,
                                   const MarketInstance& inst,
                                   std::size_t points) {
  const double w_max = inst.dist().w_max();
  std::vector<double> grid;
  grid.reserve(points + 2);
  if (points == 1) {
    grid.push_back(0.0);
  } else {
    for (std::size_t i = 0; i < points; ++i) {
      grid.push_back(i + 1 == points
                         ? w_max
                         : w_max * static_cast<double>(i) /
                               static_cast<double>(points - 1));
    }
  }
  for (double extra : {sol.theta_star, sol.y_star}) {
    if (extra > 0.0 && extra < w_max) grid.push_back(extra);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double KktReport::max_residual() const {
  return std::max({market_balance, stage1_stationarity, stage1_complementarity,
                   y_condition, y_complementarity, stage2_stationarity,
                   stage2_complementarity, recourse_feasibility,
                   dual_feasibility, primal_nonnegativity});
}

namespace {

// integral of dual_mu(w) f(w) over [0, min(y*, w_max)], split wherever the
// integrand may have a kink
double integrate_dual_mu(const PlannerSolution& sol, const MarketInstance& inst) {
  const double upper = std::min(sol.y_star, inst.dist().w_max());
  if (upper <= 0.0) return 0.0;
  std::vector<double> cuts = inst.dist().smooth_pieces();
  cuts.push_back(sol.theta_star);
  cuts.push_back(upper);
  std::erase_if(cuts, [&](double c) { return c < 0.0 || c > upper; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto& dist = inst.dist();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    // evaluate the weight at the piece midpoint so the endpoint convention
    // of risk_weight at theta* cannot leak across the cut
    const double weight = risk_weight(sol, 0.5 * (lo + hi), inst);
    auto integrand = [&](double w) {
      return weight * 2.0 * inst.agg_a_tilde() *
             std::max(0.0, sol.y_star - w) * dist.pdf(w);
    };
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 20, 1e-13);
  }
  return total;
}

}  // namespace

KktReport kkt_residuals(const PlannerSolution& sol, const MarketInstance& inst,
                        std::span<const double> w_grid) {
  KktReport r;
  const auto gens = inst.generators();
  const double lambda = sol.lambda_star;
  const double y = sol.y_star;

  double supply = y;
  for (double x : sol.x_star) supply += x;
  r.market_balance = std::abs(supply - inst.demand());
  r.primal_nonnegativity = std::max(0.0, -y);

  for (std::size_t i = 0; i < gens.size(); ++i) {
    const double x = sol.x_star[i];
    const double reduced = 2.0 * gens[i].a * x - lambda;
    r.stage1_stationarity = std::max(
        r.stage1_stationarity, x > 0.0 ? std::abs(reduced) : std::max(0.0, -reduced));
    r.stage1_complementarity = std::max(r.stage1_complementarity, std::abs(x * reduced));
    r.primal_nonnegativity = std::max(r.primal_nonnegativity, -x);
  }

  const double mu_mass = integrate_dual_mu(sol, inst);
  const double y_reduced = -lambda + mu_mass;
  r.y_condition = y > 0.0 ? std::abs(y_reduced) : std::max(0.0, -y_reduced);
  r.y_complementarity = std::abs(y * y_reduced);

  for (double w : w_grid) {
    const RecourseDispatch disp = second_stage_dispatch(y, w, inst);
    const double mu = dual_mu(sol, w, inst);
    const double weight = risk_weight(sol, w, inst);
    double total_z = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const double z = disp.z[i];
      total_z += z;
      const double reduced = 2.0 * gens[i].a_tilde * weight * z - mu;
      r.stage2_stationarity = std::max(
          r.stage2_stationarity, z > 0.0 ? std::abs(reduced) : std::max(0.0, -reduced));
      r.primal_nonnegativity = std::max(r.primal_nonnegativity, -z);
    }
    const double slack = y - w - total_z;
    r.stage2_complementarity = std::max(r.stage2_complementarity, std::abs(mu * slack));
    r.recourse_feasibility = std::max(r.recourse_feasibility, slack);
    r.dual_feasibility = std::max(r.dual_feasibility, -mu);
  }
  return r;
}

}  // namespace riskmkt
