#pragma once

#include <span>
#include <vector>

#include "riskmkt/market_instance.hpp"

namespace riskmkt {

/// Optimal ancillary dispatch for a realized renewable level w.
struct RecourseDispatch {
  std::vector<double> z;
  /// Risk-neutral multiplier 2 a_tilde [y - w]_+ of the recourse constraint.
  double mu = 0.0;
};

/// Closed-form second stage: z_i = a_tilde [y-w]_+ / a_tilde_i.
RecourseDispatch second_stage_dispatch(double y, double w,
                                       const MarketInstance& inst);

/// Minimum second-stage cost a_tilde [y - w]_+^2.
double recourse_cost(double y, double w, const MarketInstance& inst);

/// Proportional split x_i = a (D - y) / a_i of the day-ahead residual
/// demand. Throws std::domain_error if y is outside [0, D].
std::vector<double> first_stage_split(double y, const MarketInstance& inst);

/// Planner objective reduced to the scheduled renewable level y:
///   g(y) = a (D - y)^2 + rho_spp(y).
double reduced_objective(double y, const MarketInstance& inst);
double reduced_gradient(double y, const MarketInstance& inst);

struct PlannerSolution {
  double y_star = 0.0;
  std::vector<double> x_star;
  double lambda_star = 0.0;
  /// min(F^{-1}(1-alpha), y_star)
  double theta_star = 0.0;
  double objective = 0.0;
};

/// Minimizes g on [0, D] by bisection on g' until the bracket is <= 1e-10.
PlannerSolution solve_spp(const MarketInstance& inst);

/// Piecewise weight on the recourse cost density at w:
/// 1-eps+eps/(1-alpha) on [0, theta*], 1-eps on (theta*, y*), 0 beyond.
double risk_weight(const PlannerSolution& sol, double w,
                   const MarketInstance& inst);

/// Recourse multiplier of the risk-aware problem: risk_weight * 2 a_tilde [y*-w]_+.
double dual_mu(const PlannerSolution& sol, double w, const MarketInstance& inst);

/// Default functional grid: `points` equispaced values on [0, w_max] plus
/// theta* and y* when they fall strictly inside the support.
std::vector<double> default_w_grid(const PlannerSolution& sol,
                                   const MarketInstance& inst,
                                   std::size_t points = 1001);

struct KktReport {
  double market_balance = 0.0;       // |sum x + y - D|
  double stage1_stationarity = 0.0;  // 2 a_i x_i - lambda
  double stage1_complementarity = 0.0;
  double y_condition = 0.0;  // lambda vs integral of mu f over the support
  double y_complementarity = 0.0;
  double stage2_stationarity = 0.0;
  double stage2_complementarity = 0.0;
  double recourse_feasibility = 0.0;
  double dual_feasibility = 0.0;
  double primal_nonnegativity = 0.0;

  double max_residual() const;
};

/// Evaluates every optimality condition of the risk-aware planner problem at
/// `sol`. The integral of dual_mu against the density is computed by adaptive
/// quadrature, independently of the closed forms used by solve_spp.
KktReport kkt_residuals(const PlannerSolution& sol, const MarketInstance& inst,
                        std::span<const double> w_grid);

}  // namespace riskmkt
