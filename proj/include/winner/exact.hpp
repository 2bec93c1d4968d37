#ifndef WINNER_EXACT_HPP
#define WINNER_EXACT_HPP

#include <string>
#include <vector>

#include "winner/family.hpp"

namespace winner {

/// How a probability vector was produced.
enum class Method { basic_formula, product_form, asymptotic, monte_carlo };

std::string method_name(Method method);

/// The law of the winner index: probs[i] = P(player i attains the maximum).
struct WinnerDistribution {
  std::vector<double> probs;
  Method method = Method::basic_formula;
  /// Reported, never silently absorbed: quadrature error estimate plus the
  /// budgeted inversion slack. Normalization holds within
  /// max(1e-8, tolerance_estimate) for the analytic methods.
  double tolerance_estimate = 0.0;

  double sum() const;
};

/// Numerical inversion of the monotone summed exponent. The bracket
/// expands by factors of 10 from [bracket_lo, bracket_hi] when the start
/// does not straddle the target.
struct InversionConfig {
  double bracket_lo = 1e-6;
  double bracket_hi = 1e6;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 200;

  void validate() const;
};

enum class QuadratureScheme { gauss_laguerre, truncated_adaptive };

/// gauss_laguerre: the e^{-y} weight is built into the rule; `nodes` points
/// integrate the proportional-family integrand exactly from 2 nodes up.
/// truncated_adaptive: Gauss-Kronrod refinement on [0, y_max]; the dropped
/// tail is bounded by (1 + y_max) e^{-y_max}, which is added to the
/// reported tolerance_estimate. Requires y_max >= 30.
struct QuadratureConfig {
  QuadratureScheme scheme = QuadratureScheme::gauss_laguerre;
  int nodes = 64;
  double y_max = 50.0;
  /// Per-player target for the adaptive scheme.
  double adaptive_tol = 1e-10;

  void validate() const;
};

/// S_n(x) = sum_i nu_i(x); non-increasing in x.
double sum_nu(const PlayerFamily& family, double x);

/// The generalized inverse x_n(y) of S_n: |S_n(x_n(y)) - y| <=
/// abs_tol + rel_tol * y. Proportional-shape families with an analytic
/// tail inverse short-circuit to x_n(y) = r^{-1}(y / b_n).
double invert_sum(const PlayerFamily& family, double y,
                  const InversionConfig& cfg = {});

/// Solution x of nu_i(x) = t: analytic when the family provides one,
/// bracketing bisection otherwise.
double invert_player_nu(const PlayerFamily& family, std::size_t i, double t,
                        const InversionConfig& cfg = {});

/// Basic formula: p_i = integral_0^inf nu_i(x_n(y)) e^{-y} dy, with x_n(y)
/// computed once per quadrature node and shared across players.
WinnerDistribution winner_probs_exact(const PlayerFamily& family,
                                      const InversionConfig& inv_cfg = {},
                                      const QuadratureConfig& quad_cfg = {});

/// Independent cross-check: p_i = integral_0^1 prod_{j != i} F_j(x_i(u)) du
/// with x_i(u) the per-player quantile at u. Shares no code path with the
/// summed-exponent inversion above.
WinnerDistribution winner_probs_product(const PlayerFamily& family,
                                        const QuadratureConfig& quad_cfg = {},
                                        const InversionConfig& inv_cfg = {});

}  // namespace winner

#endif  // WINNER_EXACT_HPP
