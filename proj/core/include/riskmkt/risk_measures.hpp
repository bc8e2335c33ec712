#pragma once

#include <span>

#include "riskmkt/market_instance.hpp"

namespace riskmkt {

// Sample-based risk measures. Losses are costs: larger is worse.

/// Minimal z with empirical cdf(z) >= alpha, i.e. the ceil(alpha*n)-th order
/// statistic. Throws std::domain_error on empty input.
double var_samples(std::span<const double> losses, double alpha);

/// Empirical CVaR: the minimum over zeta of
///   zeta + 1/((1-alpha) n) * sum_s [L_s - zeta]_+.
/// The function is piecewise linear in zeta with kinks at the samples, so it
/// is evaluated exactly at every sample and the smallest value returned.
double cvar_samples(std::span<const double> losses, double alpha);

// Analytic forms for the optimal recourse loss a_tilde * [y - W]_+^2, where
// a_tilde is the harmonic aggregate of the ancillary cost coefficients.

double var_recourse(double y, const MarketInstance& inst);

/// 1/(1-alpha) * a_tilde * integral_0^theta (y-w)^2 f(w) dw with
/// theta = min(F^{-1}(1-alpha), y).
double cvar_recourse(double y, const MarketInstance& inst);

/// d/dy cvar_recourse: 1/(1-alpha) * 2 a_tilde * integral_0^theta (y-w) f(w) dw.
/// Continuous across y = F^{-1}(1-alpha) where theta switches branches.
double cvar_recourse_derivative(double y, const MarketInstance& inst);

/// E[a_tilde [y-W]_+^2]
double expected_recourse(double y, const MarketInstance& inst);
double expected_recourse_derivative(double y, const MarketInstance& inst);

/// Planner risk functional (1-eps) E[.] + eps CVaR_alpha[.] of the recourse
/// loss, and its derivative in y.
double rho_spp(double y, const MarketInstance& inst);
double rho_spp_derivative(double y, const MarketInstance& inst);

}  // namespace riskmkt
