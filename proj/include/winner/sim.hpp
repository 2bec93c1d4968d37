#ifndef WINNER_SIM_HPP
#define WINNER_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "winner/exact.hpp"
#include "winner/family.hpp"

namespace winner {

/// Monte Carlo estimate of the winner law. Deterministic given
/// (family, draws, seed); internal chunking never changes the counts.
struct SimReport {
  std::vector<std::int64_t> counts;
  std::int64_t draws = 0;
  std::vector<double> probs_hat;  // counts / draws
  std::vector<double> ci_radius;  // 3 sigma normal radii
  std::uint64_t seed = 0;
  std::string rng_label;
  /// Exact floating-point ties observed between distinct players (broken
  /// toward the lowest index). Measure-zero for continuous families.
  std::int64_t tie_count = 0;

  WinnerDistribution as_distribution() const;
};

/// Quantile draw: the x with F_i(x) = u, via the analytic inverse when the
/// family provides one and bracketing bisection otherwise. Requires
/// 0 < u < 1.
double sample_player(const PlayerFamily& family, std::size_t i, double u,
                     const InversionConfig& inv_cfg = {});

/// Inverse-transform sampling of all n players per replicate, counting the
/// argmax index. Uniforms come from a counter stream keyed by
/// (seed, replicate, player): exactly draws * n variates are consumed.
SimReport estimate_winner_probs(const PlayerFamily& family, std::int64_t draws,
                                std::uint64_t seed,
                                const InversionConfig& inv_cfg = {});

/// Replays the identical uniform stream through the family and its
/// transform under f; true iff the argmax index agrees on every replicate.
/// Order preservation of f makes this an exact path-wise identity.
bool transform_invariance_check(const PlayerFamily& family,
                                const Transform& transform, std::int64_t draws,
                                std::uint64_t seed,
                                const InversionConfig& inv_cfg = {});

/// P(X_1 attains the maximum, ties included) for n i.i.d. Bernoulli(p)
/// players; converges to p + (1-p)^n.
double bernoulli_max_membership(double p, std::int64_t n, std::int64_t draws,
                                std::uint64_t seed);

}  // namespace winner

#endif  // WINNER_SIM_HPP
