#pragma once

#include <optional>
#include <span>
#include <vector>

#include "riskmkt/market_instance.hpp"
#include "riskmkt/planner.hpp"

namespace riskmkt {

/// Sequential competitive equilibrium prices.
///
/// The real-time price is carried analytically as
///   P2(w) = p2_slope * [p2_intercept - w]_+
/// with p2_slope = 2 a_tilde and p2_intercept = y*, which is exact for every
/// epsilon in [0, 1]. The piecewise quotient mu*(w) / c(w) is kept alongside
/// for diagnostics; it is undefined where the weight c(w) vanishes below y*
/// (epsilon = 1 between theta* and y*).
struct PriceSchedule {
  double p1 = 0.0;
  double p2_slope = 0.0;
  double p2_intercept = 0.0;

  double theta_star = 0.0;
  double weight_tail = 1.0;  // 1 - eps + eps/(1-alpha) on [0, theta*]
  double weight_body = 1.0;  // 1 - eps on (theta*, y*)

  double p2(double w) const;
  /// mu*(w) divided by the piecewise risk weight, or nullopt where the
  /// weight is zero below y*.
  std::optional<double> p2_piecewise(double w, double mu_star) const;
};

/// Builds the prices from an optimal planner solution. For epsilon < 1 also
/// checks that the piecewise quotient agrees with the analytic form to 1e-10
/// on the default grid and throws std::logic_error otherwise.
PriceSchedule equilibrium_prices(const PlannerSolution& sol,
                                 const MarketInstance& inst);

/// Price-taking day-ahead supply: argmax_x p1 x - a x^2 = p1 / (2a).
double gen_stage1_best_response(double p1, const GeneratorParams& g);
/// Price-taking real-time supply: p2 / (2 a_tilde).
double gen_stage2_best_response(double p2_at_w, const GeneratorParams& g);

struct SceqReport {
  double max_stage1_gap = 0.0;
  double max_stage2_gap = 0.0;
  double clearing_gap = 0.0;
  /// max over the grid of |sum_i z_i(w) - [y* - w]_+| at the best responses
  double max_stage2_clearing_gap = 0.0;
  bool recourse_feasible = true;

  bool within(double tol) const {
    return recourse_feasible && max_stage1_gap <= tol && max_stage2_gap <= tol &&
           clearing_gap <= tol;
  }
};

/// Checks the equilibrium definition: generator best responses to `prices`
/// reproduce the planner allocation and clear both stages on `w_grid`.
SceqReport verify_sceq(const PlannerSolution& sol, const PriceSchedule& prices,
                       const MarketInstance& inst, std::span<const double> w_grid);

struct SweepPoint {
  double epsilon = 0.0;
  double y_star = 0.0;
  double p1 = 0.0;
  double p2_slope = 0.0;
  double p2_intercept = 0.0;
};

/// Re-solves `base` at each epsilon in `eps_grid` (sorted, within [0,1]).
std::vector<SweepPoint> epsilon_sweep(const MarketInstance& base,
                                      std::span<const double> eps_grid);

/// Evenly spaced grid from `from` to `to` with `steps` intervals.
std::vector<double> linspace(double from, double to, std::size_t steps);

}  // namespace riskmkt
