#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "winner/family.hpp"
#include "winner/rng.hpp"
#include "winner/sim.hpp"
#include "test_support.hpp"

using winner::bernoulli_max_membership;
using winner::CounterRng;
using winner::estimate_winner_probs;
using winner::inverse_power_tail;
using winner::PlayerFamily;
using winner::sample_player;
using winner::SimReport;
using winner::Transform;
using winner::transform_invariance_check;
using winner::weibull_family;
using winner::test::decay_perturbation;

namespace {

// Numeric inverse of a strictly increasing f via bisection; test-side
// helper for transforms without a closed-form inverse.
std::function<double(double)> bisect_inverse(std::function<double(double)> f,
                                             double slack) {
  return [f = std::move(f), slack](double y) {
    double lo = std::max(y - slack, 1e-300);
    double hi = y + slack;
    while (f(lo) > y) lo *= 0.5;
    while (f(hi) < y) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) < y) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-15 * std::abs(mid)) break;
    }
    return 0.5 * (lo + hi);
  };
}

}  // namespace

TEST_CASE("counter rng is a pure function of (seed, replicate, player)") {
  const CounterRng a(42), b(42), c(43);
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const double u = a.uniform(t, 3);
    CHECK(u == b.uniform(t, 3));
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(a.uniform(7, 1) != c.uniform(7, 1));
  CHECK(a.uniform(7, 1) != a.uniform(7, 2));
  CHECK(a.uniform(7, 1) != a.uniform(8, 1));
}

TEST_CASE("sample_player inverts the cdf") {
  const auto simple = weibull_family({1.0}, 1.0);
  CHECK(sample_player(simple, 0, std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const auto heavier = weibull_family({2.0}, 2.0);
  CHECK(sample_player(heavier, 0, std::exp(-2.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(sample_player(simple, 0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sample_player(simple, 0, 1.0), std::domain_error);
}

TEST_CASE("sample_player round-trips through the cdf on every path") {
  // Analytic path (shared tail inverse) and bisection path (perturbed).
  const std::vector<PlayerFamily> families = {
      weibull_family({1.0, 3.0}, 2.0),
      PlayerFamily::perturbed({1.0, 2.0}, inverse_power_tail(1.0),
                              decay_perturbation({0.5, -0.3})),
  };
  for (const auto& family : families) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (double u : {0.1, 0.5, 0.9}) {
        const double x = sample_player(family, i, u);
        CHECK(family.cdf(i, x) == doctest::Approx(u).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("estimate_winner_probs matches the closed form within its CIs") {
  const auto family = weibull_family({1.0, 2.0, 3.0}, 1.0);
  const SimReport report = estimate_winner_probs(family, 200000, 1234);
  const std::vector<double> expected = {1.0 / 6.0, 1.0 / 3.0, 0.5};
  std::int64_t total = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(report.probs_hat[i] - expected[i]) <= report.ci_radius[i]);
    total += report.counts[i];
  }
  CHECK(total == report.draws);
  CHECK(report.rng_label == CounterRng::label());
}

TEST_CASE("single player always wins") {
  const auto family = weibull_family({2.0}, 1.0);
  const SimReport report = estimate_winner_probs(family, 100, 9);
  CHECK(report.probs_hat[0] == 1.0);
}

TEST_CASE("simulation is deterministic given the seed") {
  const auto family = weibull_family({1.0, 2.0}, 2.0);
  const SimReport a = estimate_winner_probs(family, 100000, 777);
  const SimReport b = estimate_winner_probs(family, 100000, 777);
  CHECK(a.counts == b.counts);
  CHECK(a.probs_hat == b.probs_hat);
  CHECK(a.tie_count == b.tie_count);

  const SimReport other = estimate_winner_probs(family, 100000, 778);
  CHECK(a.counts != other.counts);
}

TEST_CASE("continuous families essentially never tie") {
  const auto family = weibull_family({1.0, 2.0, 3.0}, 1.0);
  const SimReport report = estimate_winner_probs(family, 1000000, 42);
  CHECK(report.tie_count < 100);  // < 1e-4 of draws
}

TEST_CASE("estimator consistency across seeds") {
  // 3-sigma radii should cover the truth for >= 99% of (seed, index) pairs.
  const auto family = weibull_family({1.0, 2.0, 3.0, 4.0, 5.0}, 1.0);
  const std::vector<double> alpha = {1.0 / 15, 2.0 / 15, 3.0 / 15, 4.0 / 15,
                                     5.0 / 15};
  int checks = 0, hits = 0;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const SimReport report = estimate_winner_probs(family, 50000, seed);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      ++checks;
      if (std::abs(report.probs_hat[i] - alpha[i]) <= report.ci_radius[i]) {
        ++hits;
      }
    }
  }
  CHECK(hits >= (checks * 99) / 100);
}

TEST_CASE("transform invariance: cube and identity") {
  const auto family = weibull_family({1.0, 2.0}, 1.0);

  Transform cube;
  cube.f = [](double x) { return x * x * x; };
  cube.f_inv = [](double x) { return std::cbrt(x); };
  CHECK(transform_invariance_check(family, cube, 10000, 31));

  Transform identity;
  identity.f = [](double x) { return x; };
  identity.f_inv = [](double x) { return x; };
  CHECK(transform_invariance_check(family, identity, 10000, 31));
}

TEST_CASE("transform invariance: x + sin(x)/2 after checking monotonicity") {
  const auto f = [](double x) { return x + 0.5 * std::sin(x); };
  // f' = 1 + cos(x)/2 >= 1/2; verify numerically before trusting it.
  double min_slope = 1e300;
  for (double x = 1e-4; x < 100.0; x += 0.01) {
    min_slope = std::min(min_slope, (f(x + 1e-6) - f(x)) / 1e-6);
  }
  REQUIRE(min_slope > 0.0);

  Transform wobble;
  wobble.f = f;
  wobble.f_inv = bisect_inverse(f, 0.6);
  const auto family = weibull_family({1.0, 2.0}, 1.0);
  CHECK(transform_invariance_check(family, wobble, 10000, 77));
}

TEST_CASE("bernoulli membership matches p + q^n") {
  // p = 0.3, n = 5: 0.3 + 0.7^5 = 0.46807.
  const double expected = 0.46807;
  const double sigma = std::sqrt(expected * (1.0 - expected) / 1e6);
  const double estimate = bernoulli_max_membership(0.3, 5, 1000000, 2024);
  CHECK(std::abs(estimate - expected) <= 3.0 * sigma);

  CHECK(bernoulli_max_membership(0.3, 1, 1000, 1) == 1.0);

  const double pair = bernoulli_max_membership(0.5, 2, 1000000, 5);
  const double pair_sigma = std::sqrt(0.75 * 0.25 / 1e6);
  CHECK(std::abs(pair - 0.75) <= 3.0 * pair_sigma);
}

TEST_CASE("input validation") {
  const auto family = weibull_family({1.0}, 1.0);
  CHECK_THROWS_AS(estimate_winner_probs(family, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_max_membership(0.0, 2, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_max_membership(0.5, 0, 10, 1),
                  std::invalid_argument);
}
