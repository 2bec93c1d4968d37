#ifndef WINNER_QUADRATURE_HPP
#define WINNER_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace winner {

/// Nodes and weights of the n-point Gauss-Laguerre rule:
///   integral_0^inf f(y) e^{-y} dy ~= sum_k weight[k] * f(node[k]).
/// Exact for polynomials f of degree <= 2n - 1. Nodes ascend.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Builds the rule by Newton iteration on the Laguerre recurrence
/// (long double internally). n in [2, 192]; larger n overflows the
/// recurrence values.
GaussLaguerreRule gauss_laguerre(int n);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int segments = 0;
};

/// Adaptive Gauss-Kronrod 7-15 on [a, b]: splits intervals until the
/// embedded |K15 - G7| estimate meets the proportionally allocated
/// tolerance. Throws NumericalError once more than max_segments panels
/// have been processed (refinement budget exceeded).
QuadratureResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                        double a, double b, double abs_tol,
                                        int max_segments = 4000);

}  // namespace winner

#endif  // WINNER_QUADRATURE_HPP
