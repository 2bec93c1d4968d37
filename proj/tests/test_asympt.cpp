#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "winner/asympt.hpp"
#include "winner/errors.hpp"
#include "winner/family.hpp"
#include "test_support.hpp"

using winner::alpha_weights;
using winner::approximation_error;
using winner::BnSequence;
using winner::classify_limit;
using winner::empirical_limit_cdf;
using winner::estimate_rho;
using winner::inverse_power_tail;
using winner::LimitMeasure;
using winner::PlayerFamily;
using winner::RhoEstimate;
using winner::triangular_limit;
using winner::unit_grid;
using winner::weibull_family;
using winner::test::decay_perturbation;
using winner::test::golden_ratio_deltas;
using winner::test::random_family;

namespace {

PlayerFamily perturbed_uniform(std::size_t n) {
  return PlayerFamily::perturbed(std::vector<double>(n, 1.0),
                                 inverse_power_tail(1.0),
                                 decay_perturbation(golden_ratio_deltas(n)));
}

}  // namespace

TEST_CASE("alpha_weights: direct ratios") {
  CHECK(alpha_weights(weibull_family({1.0, 2.0, 3.0}, 1.0)) ==
        std::vector<double>{1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0});

  const auto uniform10 = weibull_family(std::vector<double>(10, 1.0), 1.0);
  for (double a : alpha_weights(uniform10)) {
    CHECK(a == doctest::Approx(0.1).epsilon(1e-15));
  }

  const auto linear = weibull_family({1.0, 2.0, 3.0, 4.0}, 1.0);
  const auto alpha = alpha_weights(linear);
  CHECK(alpha[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(alpha[3] == doctest::Approx(0.4).epsilon(1e-15));

  const auto generic = PlayerFamily::generic(
      {winner::GenericPlayer{[](double x) { return 1.0 / x; }, nullptr, ""}});
  CHECK_THROWS_AS(alpha_weights(generic), std::invalid_argument);
}

TEST_CASE("approximation_error: proportional families are exact") {
  CHECK(approximation_error(weibull_family({1.0, 2.0, 3.0}, 1.0)) <= 1e-12);
  CHECK(approximation_error(weibull_family({4.0}, 2.0)) <= 1e-12);
  CHECK_THROWS_AS(approximation_error(weibull_family({0.0, 1.0}, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("approximation_error shrinks as n grows on a perturbed family") {
  const double err10 = approximation_error(perturbed_uniform(10));
  const double err1000 = approximation_error(perturbed_uniform(1000));
  CHECK(err1000 < err10);
  CHECK(err1000 < 0.02);
}

TEST_CASE("empirical_limit_cdf: linear weights approach x^2") {
  const auto family =
      PlayerFamily::proportional(winner::power_weights(1.0, 100000),
                                 inverse_power_tail(1.0));
  const auto cdf = empirical_limit_cdf(family, {0.5});
  CHECK(cdf[0] == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("empirical_limit_cdf: geometric weights pile up at 1") {
  const auto family = PlayerFamily::proportional(
      winner::geometric_weights(2.0, 60), inverse_power_tail(1.0));
  const auto at_09 = empirical_limit_cdf(family, {0.9})[0];
  // b_54 / b_60 = (2^55 - 2) / (2^61 - 2), a hair below 2^-6.
  CHECK(at_09 == doctest::Approx(0.015625).epsilon(1e-12));

  const auto larger = PlayerFamily::proportional(
      winner::geometric_weights(2.0, 200), inverse_power_tail(1.0));
  const auto at_09_larger = empirical_limit_cdf(larger, {0.9})[0];
  CHECK(at_09_larger < 0.002);
  CHECK(at_09_larger < at_09);
}

TEST_CASE("empirical_limit_cdf: harmonic weights pile up at 0") {
  const auto family = PlayerFamily::proportional(
      winner::harmonic_weights(1000000), inverse_power_tail(1.0));
  CHECK(empirical_limit_cdf(family, {0.01})[0] >= 0.66);
}

TEST_CASE("empirical_limit_cdf is a valid cdf on the grid") {
  std::mt19937_64 rng(8);
  const auto grid = unit_grid(101);
  for (int trial = 0; trial < 10; ++trial) {
    const PlayerFamily family = random_family(rng);
    if (!family.has_weights()) continue;
    const auto cdf = empirical_limit_cdf(family, grid);
    CHECK(cdf.front() == 0.0);
    CHECK(cdf.back() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t k = 1; k < cdf.size(); ++k) {
      CHECK(cdf[k] >= cdf[k - 1] - 1e-15);
    }
  }
}

TEST_CASE("empirical_limit_cdf converges to x^rho for power-law b") {
  // c_i = b(i) - b(i-1) with b(t) = t^rho.
  const std::size_t n = 100000;
  for (double rho : {0.5, 1.0, 2.0, 3.0}) {
    std::vector<double> weights(n);
    double prev = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double b = std::pow(static_cast<double>(i), rho);
      weights[i - 1] = b - prev;
      prev = b;
    }
    const auto family =
        PlayerFamily::proportional(weights, inverse_power_tail(1.0));
    const auto grid = unit_grid(101);
    const auto cdf = empirical_limit_cdf(family, grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(cdf[k] - std::pow(grid[k], rho)));
    }
    CHECK(worst < 0.02);
  }
}

TEST_CASE("estimate_rho: quadratic cumulative weights give rho = 2") {
  const auto b = BnSequence::from_values([](std::int64_t n) {
    return 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
  });
  const RhoEstimate est = estimate_rho(b, 100000);
  CHECK(est.rho_hat == doctest::Approx(2.0).epsilon(0.025));
  CHECK(est.ratio_condition_holds);
  CHECK(est.sequence_of_ratios.size() >= 8);
}

TEST_CASE("estimate_rho: doubling weights diverge with a failing ratio condition") {
  const auto b = BnSequence::from_values([](std::int64_t n) {
    return std::pow(2.0, static_cast<double>(n) + 1.0) - 2.0;
  });
  const RhoEstimate est = estimate_rho(b, 60);
  CHECK(std::isinf(est.rho_hat));
  CHECK_FALSE(est.ratio_condition_holds);
  CHECK(est.sequence_of_ratios.front().second < 1e-15);  // b_n/b_2n -> 0
}

TEST_CASE("estimate_rho: exp(sqrt(n)) growth keeps the ratio condition") {
  const auto b = BnSequence::from_log(
      [](std::int64_t n) { return std::sqrt(static_cast<double>(n)); });
  const RhoEstimate est = estimate_rho(b, 100000);
  CHECK(std::isinf(est.rho_hat));
  CHECK(est.ratio_condition_holds);
}

TEST_CASE("estimate_rho washes out slowly varying factors") {
  for (double rho : {0.5, 1.0, 2.0, 3.0}) {
    const auto b = BnSequence::from_values([rho](std::int64_t n) {
      return std::pow(static_cast<double>(n), rho) *
             std::log(static_cast<double>(n) + 1.0);
    });
    const RhoEstimate est = estimate_rho(b, 1000000);
    CHECK(std::abs(est.rho_hat - rho) < 0.1);
  }
}

TEST_CASE("estimate_rho rejects bad sequences") {
  const auto shrinking = BnSequence::from_values([](std::int64_t n) {
    return 1.0 / static_cast<double>(n);
  });
  CHECK_THROWS_AS(estimate_rho(shrinking, 100000), std::invalid_argument);

  // Plain values overflow at the doubled probe; log space is the way out.
  const auto overflowing = BnSequence::from_values([](std::int64_t n) {
    return std::exp(std::sqrt(static_cast<double>(n)));
  });
  CHECK_THROWS_AS(estimate_rho(overflowing, 100000000), winner::NumericalError);
}

TEST_CASE("classify_limit maps rho to the measure kinds") {
  RhoEstimate est;
  est.rho_hat = 2.0;
  CHECK(classify_limit(est).kind() == LimitMeasure::Kind::power_law);
  CHECK(classify_limit(est).rho() == doctest::Approx(2.0));

  est.rho_hat = std::numeric_limits<double>::infinity();
  CHECK(classify_limit(est).kind() == LimitMeasure::Kind::point_mass_at_one);

  est.rho_hat = 0.0;
  CHECK(classify_limit(est).kind() == LimitMeasure::Kind::point_mass_at_zero);

  est.rho_hat = 100.0;  // beyond the 64 threshold
  CHECK(classify_limit(est).kind() == LimitMeasure::Kind::point_mass_at_one);

  est.rho_hat = 0.001;  // below 1/64
  CHECK(classify_limit(est).kind() == LimitMeasure::Kind::point_mass_at_zero);
}

TEST_CASE("limit measure canonicalization and cdf shapes") {
  CHECK(LimitMeasure::power_law(0.0).kind() ==
        LimitMeasure::Kind::point_mass_at_zero);
  CHECK(LimitMeasure::power_law(std::numeric_limits<double>::infinity())
            .kind() == LimitMeasure::Kind::point_mass_at_one);

  const auto square = LimitMeasure::power_law(2.0);
  CHECK(square.cdf(0.5) == doctest::Approx(0.25));
  CHECK(LimitMeasure::point_mass_at_zero().cdf(0.2) == 1.0);
  CHECK(LimitMeasure::point_mass_at_one().cdf(0.999) == 0.0);
  CHECK(LimitMeasure::point_mass_at_one().cdf(1.0) == 1.0);

  CHECK_THROWS_AS(LimitMeasure::density([](double) { return 3.0; }),
                  std::invalid_argument);
}

TEST_CASE("triangular_limit normalizes g into a density") {
  const auto uniform = triangular_limit([](double) { return 1.0; });
  CHECK(uniform.bn_slope == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(uniform.measure.density_fn()(0.3) == doctest::Approx(1.0));

  const auto linear = triangular_limit([](double x) { return x; });
  CHECK(linear.bn_slope == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(linear.measure.density_fn()(0.5) == doctest::Approx(1.0));
  CHECK(linear.measure.cdf(0.5) == doctest::Approx(0.25).epsilon(1e-9));

  CHECK_THROWS_AS(triangular_limit([](double) { return 0.0; }),
                  std::invalid_argument);
}

TEST_CASE("triangular array empirical cdf matches the limit density") {
  const auto g = [](double x) { return x; };
  const auto family = PlayerFamily::triangular(g, 10000);
  const auto limit = triangular_limit(g);
  const auto grid = unit_grid(101);
  const auto cdf = empirical_limit_cdf(family, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(cdf[k] - limit.measure.cdf(grid[k])) <= 0.01);
  }
}

TEST_CASE("winner measure approaches the alpha measure in total variation") {
  // The l1 gap between the two measures is bounded by the worst relative
  // error and shrinks as n grows.
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n : {10, 100, 1000}) {
    const auto family = perturbed_uniform(n);
    const auto exact = winner::winner_probs_exact(family);
    const auto alpha = alpha_weights(family);
    const double tv = winner::l1_distance(exact.probs, alpha);
    CHECK(tv <= approximation_error(family) + 1e-12);
    CHECK(tv < prev);
    prev = tv;
  }
}
