#pragma once

#include <cstdint>
#include <string>

#include "riskmkt/market_instance.hpp"
#include "riskmkt/renewable_dist.hpp"

namespace riskmkt::oracles {

// Brute-force references for the analytic planner and risk routines. Nothing
// here calls into planner, equilibrium or the closed-form recourse risk
// functions; the only shared pieces are the distribution itself and the
// sample CVaR.

/// Planner objective at y evaluated from first principles: expectation by
/// Gauss-Legendre quadrature on each smooth piece of the density, CVaR by the
/// Rockafellar-Uryasev functional at the VaR found by bisection on the loss
/// cdf.
double planner_objective(double y, const MarketInstance& inst);

/// argmin of planner_objective over {0, step, ..., D}, refined once on a
/// step/100 grid around the incumbent.
double grid_search_y(const MarketInstance& inst, double step);

/// Sample CVaR_alpha of a_tilde [y - W]_+^2 over n draws.
double mc_cvar_recourse(double y, const MarketInstance& inst, std::size_t n,
                        RngStream& rng);

struct SaaResult {
  double y = 0.0;
  double objective = 0.0;
};

/// Sample-average single-stage problem over n scenarios:
///   a (D-y)^2 + (1-eps) mean(L_s) + eps cvar_samples(L_s),
///   L_s = a_tilde [y - w_s]_+^2,
/// minimized by golden-section search on [0, D].
SaaResult saa_single_stage(const MarketInstance& inst, std::size_t n_scenarios,
                           RngStream& rng);

struct OracleReport {
  std::string name;
  double analytic = 0.0;
  double oracle = 0.0;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
  std::size_t size = 0;
  std::uint64_t seed = 0;
};

/// Fills the gap fields; throws std::domain_error if either value is not
/// finite.
OracleReport make_report(std::string name, double analytic, double oracle,
                         std::size_t size, std::uint64_t seed);

}  // namespace riskmkt::oracles
