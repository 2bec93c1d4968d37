#ifndef WINNER_TAIL_HPP
#define WINNER_TAIL_HPP

#include <functional>
#include <string>

namespace winner {

/// Shared tail shape r of a hazard exponent nu_i(x) = c_i * r(x).
///
/// Contract: eval is non-negative, continuous and non-increasing on
/// (0, inf), diverging at 0+ and vanishing at infinity. The optional
/// inverse is the generalized inverse r^{-1}(y) = sup{x : r(x) >= y};
/// when r is continuous and strictly decreasing this is the ordinary
/// inverse. Both functions must be pure: family objects are shared
/// across threads without synchronization.
struct TailFunction {
  std::function<double(double)> eval;
  std::function<double(double)> inverse;  // empty when no analytic inverse
  std::string label;

  bool has_inverse() const { return static_cast<bool>(inverse); }
};

/// r(x) = x^{-alpha} with inverse y^{-1/alpha}. The tail of the Weibull-type
/// family F(x) = exp(-c / x^alpha). Requires alpha > 0.
TailFunction inverse_power_tail(double alpha);

/// Monotone completion of exp(-ln^2 x): equals exp(-ln^2 x) on the
/// decreasing branch x >= 1 and exp(+ln^2 x) on (0, 1), which keeps the
/// function continuous, strictly decreasing, infinite at 0+ and vanishing
/// at infinity. Inverse: exp(-sign(ln y) * sqrt(|ln y|)).
TailFunction log_square_tail();

}  // namespace winner

#endif  // WINNER_TAIL_HPP
