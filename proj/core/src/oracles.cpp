#include "riskmkt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "riskmkt/risk_measures.hpp"  // cvar_samples only

namespace riskmkt::oracles {

namespace {

// Gauss-Legendre over [0, upper] split at the density's breakpoints.
template <class F>
double integrate_against_pdf(const RenewableDistribution& dist, double upper,
                             F&& g) {
  if (upper <= 0.0) return 0.0;
  std::vector<double> cuts = dist.smooth_pieces();
  std::erase_if(cuts, [&](double c) { return c >= upper; });
  cuts.push_back(upper);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double w) { return g(w) * dist.pdf(w); }, cuts[i], cuts[i + 1]);
  }
  return total;
}

double loss(double y, double w, double a_tilde) {
  const double s = std::max(0.0, y - w);
  return a_tilde * s * s;
}

// P(L <= t) for L = a_tilde [y - W]_+^2
double loss_cdf(double t, double y, const MarketInstance& inst) {
  const double cut = y - std::sqrt(t / inst.agg_a_tilde());
  if (cut <= 0.0) return 1.0;
  if (cut >= inst.dist().w_max()) return 0.0;
  return 1.0 - inst.dist().cdf(cut);
}

double continuous_var(double y, const MarketInstance& inst) {
  const double alpha = inst.alpha();
  if (loss_cdf(0.0, y, inst) >= alpha) return 0.0;
  double lo = 0.0;
  double hi = inst.agg_a_tilde() * y * y;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (loss_cdf(mid, y, inst) >= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double planner_objective(double y, const MarketInstance& inst) {
  const double a_tilde = inst.agg_a_tilde();
  const double eps = inst.epsilon();
  const double residual = inst.demand() - y;
  const auto& dist = inst.dist();

  double value = inst.agg_a() * residual * residual;
  if (y <= 0.0) return value;

  const double support_top = std::min(y, dist.w_max());
  if (eps < 1.0) {
    const double mean = integrate_against_pdf(
        dist, support_top, [&](double w) { return loss(y, w, a_tilde); });
    value += (1.0 - eps) * mean;
  }
  if (eps > 0.0) {
    const double zeta = continuous_var(y, inst);
    // L > zeta exactly when w < y - sqrt(zeta / a_tilde)
    const double region = std::clamp(y - std::sqrt(zeta / a_tilde), 0.0, support_top);
    const double excess = integrate_against_pdf(
        dist, region, [&](double w) { return std::max(0.0, loss(y, w, a_tilde) - zeta); });
    value += eps * (zeta + excess / (1.0 - inst.alpha()));
  }
  return value;
}

double grid_search_y(const MarketInstance& inst, double step) {
  if (!(step > 0.0)) throw std::domain_error("grid_search_y: step must be > 0");
  const double demand = inst.demand();
  if (demand <= 0.0) return 0.0;

  auto scan = [&](double lo, double hi, double h) {
    double best_y = lo;
    double best_v = std::numeric_limits<double>::infinity();
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / h));
    for (std::size_t k = 0; k <= count + 1; ++k) {
      const double y = std::min(hi, lo + h * static_cast<double>(k));
      const double v = planner_objective(y, inst);
      if (v < best_v) {
        best_v = v;
        best_y = y;
      }
    }
    return best_y;
  };

  const double coarse = scan(0.0, demand, step);
  return scan(std::max(0.0, coarse - step), std::min(demand, coarse + step),
              step / 100.0);
}

double mc_cvar_recourse(double y, const MarketInstance& inst, std::size_t n,
                        RngStream& rng) {
  const std::vector<double> draws = inst.dist().sample(rng, n);
  std::vector<double> losses;
  losses.reserve(n);
  for (double w : draws) losses.push_back(loss(y, w, inst.agg_a_tilde()));
  return cvar_samples(losses, inst.alpha());
}

SaaResult saa_single_stage(const MarketInstance& inst, std::size_t n_scenarios,
                           RngStream& rng) {
  const std::vector<double> scenarios = inst.dist().sample(rng, n_scenarios);
  const double a = inst.agg_a();
  const double a_tilde = inst.agg_a_tilde();
  const double eps = inst.epsilon();
  const double demand = inst.demand();
  std::vector<double> losses(n_scenarios);

  auto sampled = [&](double y) {
    double mean = 0.0;
    for (std::size_t s = 0; s < n_scenarios; ++s) {
      losses[s] = loss(y, scenarios[s], a_tilde);
      mean += losses[s];
    }
    mean /= static_cast<double>(n_scenarios);
    double v = a * (demand - y) * (demand - y);
    if (eps < 1.0) v += (1.0 - eps) * mean;
    if (eps > 0.0) v += eps * cvar_samples(losses, inst.alpha());
    return v;
  };

  if (demand <= 0.0) return {0.0, sampled(0.0)};

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = demand;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = sampled(c);
  double fd = sampled(d);
  while (hi - lo > 1e-8) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = sampled(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = sampled(d);
    }
  }
  const double y = 0.5 * (lo + hi);
  return {y, sampled(y)};
}

OracleReport make_report(std::string name, double analytic, double oracle,
                         std::size_t size, std::uint64_t seed) {
  if (!std::isfinite(analytic) || !std::isfinite(oracle)) {
    throw std::domain_error("make_report: non-finite value for " + name);
  }
  OracleReport r;
  r.name = std::move(name);
  r.analytic = analytic;
  r.oracle = oracle;
  r.abs_gap = std::abs(analytic - oracle);
  const double scale = std::max(std::abs(analytic), std::abs(oracle));
  r.rel_gap = scale > 0.0 ? r.abs_gap / scale : 0.0;
  r.size = size;
  r.seed = seed;
  return r;
}

}  // namespace riskmkt::oracles
