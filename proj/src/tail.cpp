#include "winner/tail.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace winner {

TailFunction inverse_power_tail(double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("inverse_power_tail: alpha must be > 0");
  }
  TailFunction tail;
  tail.eval = [alpha](double x) { return std::pow(x, -alpha); };
  tail.inverse = [alpha](double y) { return std::pow(y, -1.0 / alpha); };
  tail.label = "x^-" + std::to_string(alpha);
  return tail;
}

TailFunction log_square_tail() {
  TailFunction tail;
  tail.eval = [](double x) {
    const double t = std::log(x);
    return std::exp(t >= 0.0 ? -t * t : t * t);
  };
  tail.inverse = [](double y) {
    const double t = std::log(y);
    return std::exp(t >= 0.0 ? -std::sqrt(t) : std::sqrt(-t));
  };
  tail.label = "exp(-sgn(ln x) ln^2 x)";
  return tail;
}

}  // namespace winner
