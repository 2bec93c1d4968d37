#ifndef WINNER_ASYMPT_HPP
#define WINNER_ASYMPT_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "winner/exact.hpp"
#include "winner/family.hpp"

namespace winner {

/// Classification of the weak limit of the winner-index measure on [0, 1]:
/// a power law x^rho, a point mass at an endpoint (the rho = 0 / rho = inf
/// boundaries, canonicalized), or an explicit density for triangular
/// arrays.
class LimitMeasure {
 public:
  enum class Kind { power_law, point_mass_at_zero, point_mass_at_one, density };

  /// rho in [0, inf]; exactly 0 and inf canonicalize to the point masses.
  static LimitMeasure power_law(double rho);
  static LimitMeasure point_mass_at_zero();
  static LimitMeasure point_mass_at_one();
  /// f must integrate to 1 over [0, 1] within 1e-6.
  static LimitMeasure density(std::function<double(double)> f);

  Kind kind() const { return kind_; }
  /// Exponent of a power_law measure (throws otherwise).
  double rho() const;
  const std::function<double(double)>& density_fn() const;

  /// Distribution function on [0, 1].
  double cdf(double x) const;

 private:
  LimitMeasure() = default;
  Kind kind_ = Kind::power_law;
  double rho_ = 1.0;
  std::function<double(double)> density_;
};

/// Output of estimate_rho: the tail exponent recovered from the doubling
/// ratios b_n / b_2n -> (1/2)^rho, together with the probe evidence.
struct RhoEstimate {
  /// In [0, inf]; +inf when the ratios vanish (exponential-type growth).
  double rho_hat = 0.0;
  /// (n_k, b(n_k) / b(2 n_k)) on the doubling schedule, largest n first.
  std::vector<std::pair<std::int64_t, double>> sequence_of_ratios;
  /// Whether b_{n+1} / b_n -> 1 held at the largest probe (the regularity
  /// condition for the power-law classification).
  bool ratio_condition_holds = false;
  /// (n, b(n+1) / b(n)) witnesses at the schedule points.
  std::vector<std::pair<std::int64_t, double>> ratio_witness;
};

/// Cumulative-weight sequence b(n), carried in log space so that
/// exponential-type sequences (2^n, e^{sqrt n}) stay representable at the
/// doubled probes.
struct BnSequence {
  std::function<double(std::int64_t)> log_b;

  /// Wraps a direct b(n); overflow (b = inf) is detected at probe time.
  static BnSequence from_values(std::function<double(std::int64_t)> b);
  static BnSequence from_log(std::function<double(std::int64_t)> log_b);
  /// Partial sums of the family weights: b(k) = sum_{i<=k} c_i.
  static BnSequence from_weights(const std::vector<double>& weights);
};

struct RhoConfig {
  /// Doubling-schedule points n_k = n_max / 2^k, while n_k >= schedule_floor
  /// and at most max_points of them.
  std::int64_t schedule_floor = 8;
  int max_points = 8;
  /// |b(n+1)/b(n) - 1| threshold at n_max for the regularity condition.
  double ratio_tolerance = 0.01;
};

/// First-order weights alpha_i = c_i / b_n approximating p_i for large n.
/// Requires explicit weights.
std::vector<double> alpha_weights(const PlayerFamily& family);

/// max_i |p_i / alpha_i - 1| with p from winner_probs_exact. Requires all
/// weights positive.
double approximation_error(const PlayerFamily& family,
                           const InversionConfig& inv_cfg = {},
                           const QuadratureConfig& quad_cfg = {});

/// F_n(x) = sum_{i <= floor(n x)} c_i / b_n on the given grid points
/// (grid values clamped to [0, 1]).
std::vector<double> empirical_limit_cdf(const PlayerFamily& family,
                                        const std::vector<double>& grid);

/// Equally spaced grid of `points` values spanning [0, 1].
std::vector<double> unit_grid(int points = 101);

/// Recovers rho from b(n)/b(2n) -> (1/2)^rho on a doubling schedule,
/// extrapolating -log2 of the ratios against 1/ln n by least squares.
/// Diverging exponents (growth by more than 0.5 per doubling at the top of
/// the schedule) report rho_hat = inf.
RhoEstimate estimate_rho(const BnSequence& b, std::int64_t n_max,
                         const RhoConfig& cfg = {});

/// Power-law classification: power_law(rho_hat) with point masses declared
/// beyond the 1/64 and 64 thresholds. Also meaningful when the regularity
/// condition failed; the caller should surface est.ratio_condition_holds
/// alongside.
LimitMeasure classify_limit(const RhoEstimate& est);

struct TriangularLimit {
  LimitMeasure measure = LimitMeasure::power_law(1.0);
  /// Predicted slope of b_n: b_n ~ n * integral_0^1 g.
  double bn_slope = 0.0;
};

/// Limit of a triangular array c_{in} = g(i/n): the density g / integral(g)
/// on [0, 1].
TriangularLimit triangular_limit(const std::function<double(double)>& g);

/// sum_i |a_i - b_i|; the total-variation-style distance between two winner
/// measures on the common support {i/n}.
double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace winner

#endif  // WINNER_ASYMPT_HPP
