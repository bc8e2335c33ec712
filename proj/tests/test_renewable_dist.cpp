#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "riskmkt/renewable_dist.hpp"
#include "support/fixtures.hpp"

using namespace riskmkt;
using riskmkt::testing::Gen;
using riskmkt::testing::simpson_partial_power;

TEST_CASE("uniform density") {
  CHECK(RenewableDistribution::uniform(1.0).pdf(0.3) == doctest::Approx(1.0));
  CHECK(RenewableDistribution::uniform(2.0).pdf(0.3) == doctest::Approx(0.5));
  CHECK(RenewableDistribution::uniform(1.0).quantile(0.2) == doctest::Approx(0.2));
}

TEST_CASE("piecewise-linear density is normalized") {
  // (0, 0.5) -> (1, 1.5) has trapezoid area 1 already
  const auto d = RenewableDistribution::piecewise_linear({{0.0, 0.5}, {1.0, 1.5}});
  CHECK(d.pdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.pdf(1.0) == doctest::Approx(1.5).epsilon(1e-14));

  // scaled input is rescaled to unit area
  const auto scaled = RenewableDistribution::piecewise_linear({{0.0, 1.0}, {1.0, 3.0}});
  CHECK(scaled.pdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(testing::simpson([&](double w) { return scaled.pdf(w); }, 0.0, 1.0, 1000) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cdf endpoints and domain errors") {
  const RenewableDistribution dists[] = {
      RenewableDistribution::uniform(1.5),
      RenewableDistribution::truncated_normal(0.5, 0.2, 1.0),
      RenewableDistribution::piecewise_linear({{0.0, 0.3}, {0.4, 2.0}, {1.2, 0.7}}),
  };
  for (const auto& d : dists) {
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(d.w_max()) == 1.0);
    CHECK_THROWS_AS(d.pdf(-0.01), std::domain_error);
    CHECK_THROWS_AS(d.pdf(d.w_max() + 0.01), std::domain_error);
    CHECK_THROWS_AS(d.quantile(1.1), std::domain_error);
    CHECK_THROWS_AS(d.quantile(-0.1), std::domain_error);
    CHECK_THROWS_AS(d.partial_power_integral(0.5, -0.1, 2), std::domain_error);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double c = d.cdf(d.w_max() * i / 200.0);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("truncated normal quantile round trip") {
  const auto d = RenewableDistribution::truncated_normal(0.5, 0.2, 1.0);
  CHECK(std::abs(d.cdf(d.quantile(0.37)) - 0.37) <= 1e-9);
}

TEST_CASE("invalid construction") {
  CHECK_THROWS_AS(RenewableDistribution::uniform(0.0), std::invalid_argument);
  CHECK_THROWS_AS(RenewableDistribution::truncated_normal(0.5, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(RenewableDistribution::piecewise_linear({{0.1, 1.0}, {1.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RenewableDistribution::piecewise_linear({{0.0, 1.0}, {0.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RenewableDistribution::piecewise_linear({{0.0, 1.0}, {1.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("partial power integral closed forms") {
  const auto u = RenewableDistribution::uniform(1.0);
  // integral_0^y (y-w)^2 dw = y^3/3
  CHECK(u.partial_power_integral(0.5, 0.5, 2) == doctest::Approx(0.125 / 3.0).epsilon(1e-14));
  // integral_0^theta (y-w) dw = y theta - theta^2/2
  CHECK(u.partial_power_integral(1.0, 0.2, 1) == doctest::Approx(0.18).epsilon(1e-14));
  CHECK(u.partial_power_integral(0.7, 0.0, 2) == 0.0);
  CHECK(RenewableDistribution::truncated_normal(0.5, 0.2, 1.0)
            .partial_power_integral(0.7, 0.0, 1) == 0.0);
}

TEST_CASE("property: partial power integral matches Simpson within 1e-8") {
  Gen gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = gen.distribution();
    const double y = gen.uniform(0.0, 1.5 * d.w_max());
    const double theta = gen.uniform(0.0, d.w_max());
    const int k = gen.integer(1, 2);
    const double analytic = d.partial_power_integral(y, theta, k);
    const double reference = simpson_partial_power(d, y, theta, k);
    INFO("kind=" << to_string(d.kind()) << " y=" << y << " theta=" << theta << " k=" << k);
    CHECK(std::abs(analytic - reference) <= 1e-8);
  }
}

TEST_CASE("property: partial power integral nondecreasing in theta when y >= theta") {
  Gen gen(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = gen.distribution();
    const double y = gen.uniform(0.2, 1.0) * d.w_max();
    const int k = gen.integer(1, 2);
    double prev = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double theta = y * i / 50.0;
      const double v = d.partial_power_integral(y, theta, k);
      CHECK(v >= prev - 1e-14);
      prev = v;
    }
  }
}

TEST_CASE("property: quantile/cdf round trip at 1000 probabilities") {
  Gen gen(13);
  for (int trial = 0; trial < 6; ++trial) {
    const auto d = gen.distribution();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double p = gen.uniform(0.0, 1.0);
      worst = std::max(worst, std::abs(d.cdf(d.quantile(p)) - p));
      const double w = gen.uniform(0.0, d.w_max());
      worst = std::max(worst, std::abs(d.quantile(d.cdf(w)) - w));
    }
    INFO("kind=" << to_string(d.kind()));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("sampling is deterministic and matches the distribution") {
  const auto d = RenewableDistribution::uniform(1.0);
  RngStream a(99);
  RngStream b(99);
  CHECK(d.sample(a, 64) == d.sample(b, 64));

  RngStream rng(2024);
  const auto xs = d.sample(rng, 1'000'000);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  // 4 sigma of the sample mean: 4 * sqrt(1/12) / 1000 ~ 0.00115
  CHECK(std::abs(mean - 0.5) <= 0.002);

  // DKW: P(sup |F_n - F| > 0.002) <= 2 exp(-2 n 0.002^2) ~ 7e-4
  const auto d2 = RenewableDistribution::uniform(2.0);
  RngStream rng2(2025);
  auto ws = d2.sample(rng2, 1'000'000);
  std::sort(ws.begin(), ws.end());
  double sup = 0.0;
  const double n = static_cast<double>(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const double f = ws[i] / 2.0;
    sup = std::max({sup, std::abs((i + 1) / n - f), std::abs(i / n - f)});
  }
  CHECK(sup < 0.002);
}
