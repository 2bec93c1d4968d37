#ifndef WINNER_ROOT_FINDING_HPP
#define WINNER_ROOT_FINDING_HPP

#include <functional>

namespace winner {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Finds [lo, hi] with f(lo) >= y >= f(hi) for a non-increasing f, starting
/// from [lo0, hi0] and multiplying/dividing the failing endpoint by 10, at
/// most max_expansions times per side, within [1e-300, 1e300].
/// Throws NumericalError when no such bracket exists in range.
Bracket expand_bracket_decreasing(const std::function<double(double)>& f,
                                  double y, double lo0, double hi0,
                                  int max_expansions = 60);

/// Bisection for a non-increasing f on a bracket with f(lo) >= y >= f(hi).
/// Returns x with |f(x) - y| <= abs_tol + rel_tol * |y|. Throws
/// NumericalError when max_iter halvings cannot meet the tolerance. Flat
/// segments of f converge to the bisection midpoint, an arbitrary but valid
/// preimage.
double bisect_decreasing(const std::function<double(double)>& f, double y,
                         Bracket bracket, double abs_tol, double rel_tol,
                         int max_iter = 200);

}  // namespace winner

#endif  // WINNER_ROOT_FINDING_HPP
