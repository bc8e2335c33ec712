#include "riskmkt/renewable_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace riskmkt {

namespace {

constexpr double kQuantileBisectionWidth = 1e-12;

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

void check_support(double w, double w_max, const char* op) {
  if (!(w >= 0.0 && w <= w_max)) {
    throw std::domain_error(std::string(op) + ": w=" + std::to_string(w) +
                            " outside support [0, " + std::to_string(w_max) +
                            "]");
  }
}

// (y - w)^k integrated against an affine density piece on [lo, hi]. With
// u = y - w the density is A - s*u, so the antiderivative is polynomial in u.
double affine_piece_moment(double y, double lo, double hi, double f_lo,
                           double slope, int k) {
  const double a_coef = f_lo + slope * (y - lo);
  const double u_top = y - lo;
  const double u_bot = y - hi;
  const double p1 = std::pow(u_top, k + 1) - std::pow(u_bot, k + 1);
  const double p2 = std::pow(u_top, k + 2) - std::pow(u_bot, k + 2);
  return a_coef * p1 / (k + 1) - slope * p2 / (k + 2);
}

}  // namespace

double uniform01(RngStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string_view to_string(DistKind kind) {
  switch (kind) {
    case DistKind::uniform:
      return "uniform";
    case DistKind::truncated_normal:
      return "truncated-normal";
    case DistKind::piecewise_linear:
      return "piecewise-linear-pdf";
  }
  return "unknown";
}

RenewableDistribution RenewableDistribution::uniform(double w_max) {
  if (!(w_max > 0.0) || !std::isfinite(w_max)) {
    throw std::invalid_argument("uniform: w_max must be finite and > 0");
  }
  RenewableDistribution d;
  d.kind_ = DistKind::uniform;
  d.w_max_ = w_max;
  return d;
}

RenewableDistribution RenewableDistribution::truncated_normal(double location,
                                                              double scale,
                                                              double w_max) {
  if (!(w_max > 0.0) || !std::isfinite(w_max)) {
    throw std::invalid_argument("truncated-normal: w_max must be finite and > 0");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("truncated-normal: scale must be finite and > 0");
  }
  if (!std::isfinite(location)) {
    throw std::invalid_argument("truncated-normal: location must be finite");
  }
  RenewableDistribution d;
  d.kind_ = DistKind::truncated_normal;
  d.w_max_ = w_max;
  d.location_ = location;
  d.scale_ = scale;
  d.tn_lower_ = std_normal_cdf((0.0 - location) / scale);
  d.tn_mass_ = std_normal_cdf((w_max - location) / scale) - d.tn_lower_;
  if (!(d.tn_mass_ > 1e-12)) {
    throw std::invalid_argument(
        "truncated-normal: negligible mass on [0, w_max]");
  }
  return d;
}

RenewableDistribution RenewableDistribution::piecewise_linear(
    std::vector<Breakpoint> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("piecewise-linear-pdf: need at least 2 breakpoints");
  }
  if (points.front().w != 0.0) {
    throw std::invalid_argument("piecewise-linear-pdf: breakpoints must start at 0");
  }
  double area = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].f > 0.0) || !std::isfinite(points[i].f)) {
      throw std::invalid_argument("piecewise-linear-pdf: densities must be > 0");
    }
    if (i > 0) {
      if (!(points[i].w > points[i - 1].w)) {
        throw std::invalid_argument(
            "piecewise-linear-pdf: breakpoints must be strictly increasing");
      }
      area += 0.5 * (points[i].f + points[i - 1].f) *
              (points[i].w - points[i - 1].w);
    }
  }
  for (auto& p : points) p.f /= area;

  RenewableDistribution d;
  d.kind_ = DistKind::piecewise_linear;
  d.w_max_ = points.back().w;
  d.cum_.resize(points.size());
  d.cum_[0] = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    d.cum_[i] = d.cum_[i - 1] + 0.5 * (points[i].f + points[i - 1].f) *
                                    (points[i].w - points[i - 1].w);
  }
  d.points_ = std::move(points);
  return d;
}

std::vector<double> RenewableDistribution::smooth_pieces() const {
  if (kind_ == DistKind::piecewise_linear) {
    std::vector<double> ws;
    ws.reserve(points_.size());
    for (const auto& p : points_) ws.push_back(p.w);
    return ws;
  }
  return {0.0, w_max_};
}

std::size_t RenewableDistribution::segment_of(double w) const {
  // index i such that points_[i].w <= w <= points_[i+1].w
  auto it = std::upper_bound(points_.begin(), points_.end(), w,
                             [](double v, const Breakpoint& b) { return v < b.w; });
  std::size_t idx = static_cast<std::size_t>(it - points_.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, points_.size() - 2);
}

double RenewableDistribution::std_normal_cdf_between(double w) const {
  return std_normal_cdf((w - location_) / scale_) - tn_lower_;
}

double RenewableDistribution::pdf(double w) const {
  check_support(w, w_max_, "pdf");
  switch (kind_) {
    case DistKind::uniform:
      return 1.0 / w_max_;
    case DistKind::truncated_normal: {
      const double z = (w - location_) / scale_;
      return std::exp(-0.5 * z * z) /
             (scale_ * std::sqrt(2.0 * std::numbers::pi) * tn_mass_);
    }
    case DistKind::piecewise_linear: {
      const std::size_t i = segment_of(w);
      const auto& p0 = points_[i];
      const auto& p1 = points_[i + 1];
      const double t = (w - p0.w) / (p1.w - p0.w);
      return p0.f + t * (p1.f - p0.f);
    }
  }
  return 0.0;
}

double RenewableDistribution::cdf(double w) const {
  check_support(w, w_max_, "cdf");
  switch (kind_) {
    case DistKind::uniform:
      return w / w_max_;
    case DistKind::truncated_normal:
      if (w == w_max_) return 1.0;
      return std::clamp(std_normal_cdf_between(w) / tn_mass_, 0.0, 1.0);
    case DistKind::piecewise_linear: {
      if (w == w_max_) return 1.0;
      const std::size_t i = segment_of(w);
      const auto& p0 = points_[i];
      const auto& p1 = points_[i + 1];
      const double slope = (p1.f - p0.f) / (p1.w - p0.w);
      const double t = w - p0.w;
      return std::min(1.0, cum_[i] + p0.f * t + 0.5 * slope * t * t);
    }
  }
  return 0.0;
}

double RenewableDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile: p=" + std::to_string(p) +
                            " outside [0, 1]");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return w_max_;
  switch (kind_) {
    case DistKind::uniform:
      return p * w_max_;
    case DistKind::truncated_normal: {
      double lo = 0.0;
      double hi = w_max_;
      while (hi - lo > kQuantileBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) >= p) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return hi;
    }
    case DistKind::piecewise_linear: {
      auto it = std::upper_bound(cum_.begin(), cum_.end(), p);
      std::size_t i = static_cast<std::size_t>(it - cum_.begin());
      i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, points_.size() - 2);
      const auto& p0 = points_[i];
      const auto& p1 = points_[i + 1];
      const double slope = (p1.f - p0.f) / (p1.w - p0.w);
      const double q = p - cum_[i];
      // slope/2 t^2 + f0 t - q = 0, numerically stable root
      const double disc = std::max(0.0, p0.f * p0.f + 2.0 * slope * q);
      const double t = 2.0 * q / (p0.f + std::sqrt(disc));
      return std::clamp(p0.w + t, p0.w, p1.w);
    }
  }
  return 0.0;
}

std::vector<double> RenewableDistribution::sample(RngStream& rng,
                                                  std::size_t n) const {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(uniform01(rng)));
  return out;
}

double RenewableDistribution::partial_power_integral(double y, double theta,
                                                     int k) const {
  if (theta < 0.0 || std::isnan(theta)) {
    throw std::domain_error("partial_power_integral: theta must be >= 0");
  }
  if (k != 1 && k != 2) {
    throw std::domain_error("partial_power_integral: k must be 1 or 2");
  }
  theta = std::min(theta, w_max_);
  if (theta == 0.0) return 0.0;

  switch (kind_) {
    case DistKind::uniform:
      return affine_piece_moment(y, 0.0, theta, 1.0 / w_max_, 0.0, k);
    case DistKind::piecewise_linear: {
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const auto& p0 = points_[i];
        const auto& p1 = points_[i + 1];
        if (p0.w >= theta) break;
        const double hi = std::min(p1.w, theta);
        const double slope = (p1.f - p0.f) / (p1.w - p0.w);
        total += affine_piece_moment(y, p0.w, hi, p0.f, slope, k);
      }
      return total;
    }
    case DistKind::truncated_normal: {
      // w = mu + sigma z, so (y - w) = c - sigma z and the standard normal
      // moments on [z0, z1] close the integral.
      const double c = y - location_;
      const double s = scale_;
      const double z0 = -location_ / s;
      const double z1 = (theta - location_) / s;
      const double pdf0 = std::exp(-0.5 * z0 * z0) / std::sqrt(2.0 * std::numbers::pi);
      const double pdf1 = std::exp(-0.5 * z1 * z1) / std::sqrt(2.0 * std::numbers::pi);
      const double m0 = std_normal_cdf(z1) - tn_lower_;
      const double m1 = pdf0 - pdf1;
      const double m2 = m0 + z0 * pdf0 - z1 * pdf1;
      const double raw = k == 1 ? c * m0 - s * m1
                                : c * c * m0 - 2.0 * c * s * m1 + s * s * m2;
      return (k == 2 ? std::max(0.0, raw) : raw) / tn_mass_;
    }
  }
  return 0.0;
}

}  // namespace riskmkt
