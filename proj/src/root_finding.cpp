#include "winner/root_finding.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "winner/errors.hpp"

namespace winner {

namespace {
constexpr double kMinAbscissa = 1e-300;
constexpr double kMaxAbscissa = 1e300;
}  // namespace

Bracket expand_bracket_decreasing(const std::function<double(double)>& f,
                                  double y, double lo0, double hi0,
                                  int max_expansions) {
  if (!(lo0 > 0.0) || !(hi0 > lo0)) {
    throw std::invalid_argument("expand_bracket_decreasing: need 0 < lo < hi");
  }
  double lo = lo0;
  double hi = hi0;
  double f_lo = f(lo);
  for (int k = 0; f_lo < y; ++k) {
    if (k >= max_expansions || lo <= kMinAbscissa) {
      std::ostringstream os;
      os << "expand_bracket_decreasing: f(" << lo << ") = " << f_lo
         << " never reaches y = " << y << " on the low side";
      throw NumericalError(os.str());
    }
    lo /= 10.0;
    f_lo = f(lo);
  }
  double f_hi = f(hi);
  for (int k = 0; f_hi > y; ++k) {
    if (k >= max_expansions || hi >= kMaxAbscissa) {
      std::ostringstream os;
      os << "expand_bracket_decreasing: f(" << hi << ") = " << f_hi
         << " never drops to y = " << y << " on the high side";
      throw NumericalError(os.str());
    }
    hi *= 10.0;
    f_hi = f(hi);
  }
  return Bracket{lo, hi};
}

double bisect_decreasing(const std::function<double(double)>& f, double y,
                         Bracket bracket, double abs_tol, double rel_tol,
                         int max_iter) {
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) {
    throw std::invalid_argument("bisect_decreasing: tolerances must be > 0");
  }
  double lo = bracket.lo;
  double hi = bracket.hi;
  const double f_tol = abs_tol + rel_tol * std::abs(y);
  for (int it = 0; it < max_iter; ++it) {
    // Geometric midpoint while the bracket spans decades, arithmetic once
    // it is tight; keeps iteration counts flat across magnitudes.
    double mid = (hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::abs(v - y) <= f_tol) return mid;
    if (v > y) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * mid) {
      // Bracket exhausted to machine resolution; accept if the residual is
      // merely round-off noise above the requested tolerance.
      const double r = f(0.5 * (lo + hi));
      if (std::abs(r - y) <= 1e3 * f_tol) return 0.5 * (lo + hi);
      break;
    }
  }
  std::ostringstream os;
  os << "bisect_decreasing: residual tolerance " << f_tol
     << " not met for y = " << y << " within iteration budget";
  throw NumericalError(os.str());
}

}  // namespace winner
