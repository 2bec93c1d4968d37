#include "winner/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "winner/rng.hpp"

namespace winner {

WinnerDistribution SimReport::as_distribution() const {
  WinnerDistribution dist;
  dist.method = Method::monte_carlo;
  dist.probs = probs_hat;
  double worst = 0.0;
  for (double r : ci_radius) worst = std::max(worst, r);
  dist.tolerance_estimate = worst;
  return dist;
}

double sample_player(const PlayerFamily& family, std::size_t i, double u,
                     const InversionConfig& inv_cfg) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("sample_player: u must lie in (0, 1)");
  }
  // F_i(x) = u  <=>  nu_i(x) = -ln u.
  const double t = -std::log(u);
  if (family.has_weights() && family.weights()[i] == 0.0) {
    return 0.0;  // nu_i == 0: F_i == 1 on (0, inf), the player sits at 0
  }
  return invert_player_nu(family, i, t, inv_cfg);
}

namespace {

struct ArgmaxCounts {
  std::vector<std::int64_t> counts;
  std::int64_t ties = 0;
};

// Tally argmax indices over replicates [first, last).
ArgmaxCounts run_replicates(const PlayerFamily& family, const CounterRng& rng,
                            std::int64_t first, std::int64_t last,
                            const InversionConfig& inv_cfg) {
  const std::size_t n = family.size();
  ArgmaxCounts out;
  out.counts.assign(n, 0);
  for (std::int64_t t = first; t < last; ++t) {
    std::size_t best = 0;
    double best_x = -1.0;
    bool tied = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double u =
          rng.uniform(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i));
      const double x = sample_player(family, i, u, inv_cfg);
      if (x > best_x) {
        best = i;
        best_x = x;
        tied = false;
      } else if (x == best_x) {
        tied = true;  // lowest index keeps the win
      }
    }
    ++out.counts[best];
    if (tied) ++out.ties;
  }
  return out;
}

}  // namespace

SimReport estimate_winner_probs(const PlayerFamily& family, std::int64_t draws,
                                std::uint64_t seed,
                                const InversionConfig& inv_cfg) {
  if (draws < 1) {
    throw std::invalid_argument("estimate_winner_probs: draws must be >= 1");
  }
  inv_cfg.validate();
  const std::size_t n = family.size();
  const CounterRng rng(seed);

  // Counter-based keys make replicates order-independent; accumulate in
  // fixed-size chunks so the integer merge is identical however the chunks
  // are scheduled.
  constexpr std::int64_t kChunk = 1 << 16;
  SimReport report;
  report.counts.assign(n, 0);
  report.draws = draws;
  report.seed = seed;
  report.rng_label = CounterRng::label();
  for (std::int64_t first = 0; first < draws; first += kChunk) {
    const std::int64_t last = std::min(draws, first + kChunk);
    const ArgmaxCounts chunk = run_replicates(family, rng, first, last, inv_cfg);
    for (std::size_t i = 0; i < n; ++i) report.counts[i] += chunk.counts[i];
    report.tie_count += chunk.ties;
  }

  report.probs_hat.resize(n);
  report.ci_radius.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(report.counts[i]) /
                     static_cast<double>(draws);
    report.probs_hat[i] = p;
    report.ci_radius[i] =
        3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
  }
  return report;
}

bool transform_invariance_check(const PlayerFamily& family,
                                const Transform& transform, std::int64_t draws,
                                std::uint64_t seed,
                                const InversionConfig& inv_cfg) {
  if (draws < 1) {
    throw std::invalid_argument(
        "transform_invariance_check: draws must be >= 1");
  }
  const PlayerFamily transformed = transform_family(family, transform);
  const std::size_t n = family.size();
  const CounterRng rng(seed);
  for (std::int64_t t = 0; t < draws; ++t) {
    std::size_t best_a = 0, best_b = 0;
    double max_a = -1.0, max_b = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u =
          rng.uniform(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i));
      const double xa = sample_player(family, i, u, inv_cfg);
      const double xb = sample_player(transformed, i, u, inv_cfg);
      if (xa > max_a) {
        max_a = xa;
        best_a = i;
      }
      if (xb > max_b) {
        max_b = xb;
        best_b = i;
      }
    }
    if (best_a != best_b) return false;
  }
  return true;
}

double bernoulli_max_membership(double p, std::int64_t n, std::int64_t draws,
                                std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("bernoulli_max_membership: p must lie in (0, 1)");
  }
  if (n < 1) {
    throw std::invalid_argument("bernoulli_max_membership: n must be >= 1");
  }
  if (draws < 1) {
    throw std::invalid_argument("bernoulli_max_membership: draws must be >= 1");
  }
  const CounterRng rng(seed);
  std::int64_t member = 0;
  for (std::int64_t t = 0; t < draws; ++t) {
    bool first_is_one = false;
    bool any_other_one = false;
    for (std::int64_t i = 0; i < n; ++i) {
      const bool one =
          rng.uniform(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)) < p;
      if (i == 0) {
        first_is_one = one;
      } else if (one) {
        any_other_one = true;
      }
    }
    // X_1 attains the maximum unless it is 0 while someone else drew 1.
    if (first_is_one || !any_other_one) ++member;
  }
  return static_cast<double>(member) / static_cast<double>(draws);
}

}  // namespace winner
