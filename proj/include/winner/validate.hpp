#ifndef WINNER_VALIDATE_HPP
#define WINNER_VALIDATE_HPP

#include <string>
#include <vector>

#include "winner/family.hpp"
#include "winner/tail.hpp"

namespace winner {

/// Sampling configuration for the black-box family checks. Defaults: 64
/// log-spaced grid points in [1e-9, 1e9]; divergence at 0+ probed at
/// x = 1e-12 against the 1e12 threshold; vanishing at infinity probed at
/// x = 1e12 against 1e-6.
///
/// The divergence/vanish thresholds are heuristics tuned for tails at
/// least as steep as 1/x; shallower tails (e.g. x^{-1/2}) trip them at the
/// default probe points even though they satisfy the limit conditions, so
/// callers with such tails should widen the thresholds.
struct ProbeConfig {
  double grid_min = 1e-9;
  double grid_max = 1e9;
  int grid_points = 64;
  double small_x = 1e-12;
  double divergence_threshold = 1e12;
  double large_x = 1e12;
  double vanish_threshold = 1e-6;
  double inverse_rel_tol = 1e-8;
};

/// Log-spaced grid in [cfg.grid_min, cfg.grid_max].
std::vector<double> probe_grid(const ProbeConfig& cfg);

/// Spot-checks a tail: non-increasing on the grid, diverging at 0+,
/// vanishing at infinity, inverse round-trip eval(inverse(y)) = y on a log
/// grid of y when an inverse is present. Returns human-readable findings;
/// empty means all probes passed.
std::vector<std::string> validate_tail(const TailFunction& tail,
                                       const ProbeConfig& cfg = {});

/// Spot-checks every nu_i of the family (monotonicity, limits, CDF range)
/// plus the perturbation bounds when applicable.
std::vector<std::string> validate_family(const PlayerFamily& family,
                                         const ProbeConfig& cfg = {});

/// Throws std::invalid_argument listing all findings when validation fails.
void require_valid(const PlayerFamily& family, const ProbeConfig& cfg = {});

}  // namespace winner

#endif  // WINNER_VALIDATE_HPP
