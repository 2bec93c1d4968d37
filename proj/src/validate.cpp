#include "winner/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace winner {

namespace {

std::string format_probe(const char* what, double x, double value) {
  std::ostringstream os;
  os << what << " at x=" << x << " (value " << value << ")";
  return os.str();
}

void check_monotone_limits(const std::function<double(double)>& f,
                           const ProbeConfig& cfg, const std::string& name,
                           std::vector<std::string>* issues) {
  const std::vector<double> grid = probe_grid(cfg);
  double prev = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double v = f(x);
    if (std::isnan(v) || v < 0.0) {
      issues->push_back(name + ": " + format_probe("negative or NaN value", x, v));
      return;
    }
    // Allow a hair of slack for round-off in flat regions.
    if (v > prev * (1.0 + 1e-12) + 1e-300) {
      issues->push_back(name + ": " + format_probe("not non-increasing", x, v));
      return;
    }
    prev = std::min(prev, v);
  }
  const double at_small = f(cfg.small_x);
  if (!(at_small >= cfg.divergence_threshold)) {
    issues->push_back(name + ": " +
                      format_probe("divergence at 0+ not confirmed", cfg.small_x,
                                   at_small));
  }
  const double at_large = f(cfg.large_x);
  if (!(at_large <= cfg.vanish_threshold)) {
    issues->push_back(name + ": " +
                      format_probe("vanishing at infinity not confirmed",
                                   cfg.large_x, at_large));
  }
}

}  // namespace

std::vector<double> probe_grid(const ProbeConfig& cfg) {
  if (!(cfg.grid_min > 0.0) || !(cfg.grid_max > cfg.grid_min) ||
      cfg.grid_points < 2) {
    throw std::invalid_argument("probe_grid: bad ProbeConfig");
  }
  std::vector<double> grid(cfg.grid_points);
  const double lo = std::log(cfg.grid_min);
  const double hi = std::log(cfg.grid_max);
  for (int i = 0; i < cfg.grid_points; ++i) {
    grid[i] = std::exp(lo + (hi - lo) * i / (cfg.grid_points - 1));
  }
  return grid;
}

std::vector<std::string> validate_tail(const TailFunction& tail,
                                       const ProbeConfig& cfg) {
  std::vector<std::string> issues;
  if (!tail.eval) {
    issues.push_back("tail: eval missing");
    return issues;
  }
  check_monotone_limits(tail.eval, cfg, "tail " + tail.label, &issues);
  if (tail.has_inverse()) {
    // y on a log grid; continuity of r makes the generalized inverse an
    // exact preimage, so eval(inverse(y)) should reproduce y.
    for (double y : probe_grid(cfg)) {
      const double x = tail.inverse(y);
      if (!(x > 0.0) || !std::isfinite(x)) {
        issues.push_back("tail " + tail.label + ": inverse not positive at y=" +
                         std::to_string(y));
        continue;
      }
      const double back = tail.eval(x);
      if (!(std::abs(back - y) <= cfg.inverse_rel_tol * std::abs(y))) {
        issues.push_back("tail " + tail.label +
                         ": inverse round-trip failed at y=" + std::to_string(y));
      }
    }
  }
  return issues;
}

std::vector<std::string> validate_family(const PlayerFamily& family,
                                         const ProbeConfig& cfg) {
  std::vector<std::string> issues;

  if (const TailFunction* tail = family.tail()) {
    const auto tail_issues = validate_tail(*tail, cfg);
    issues.insert(issues.end(), tail_issues.begin(), tail_issues.end());
  }

  // Per-player probes. Weighted variants inherit monotonicity from the
  // tail, so probing every player matters mostly for generic families and
  // for perturbed ones (where delta could break monotonicity).
  const std::vector<double> grid = probe_grid(cfg);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const bool zero_weight =
        family.has_weights() && family.weights()[i] == 0.0;
    if (zero_weight) continue;  // nu_i == 0 identically; nothing to probe
    std::ostringstream name;
    name << "nu_" << (i + 1);
    check_monotone_limits([&](double x) { return family.nu(i, x); }, cfg,
                          name.str(), &issues);
    // CDF consistency on a handful of grid points.
    double prev_cdf = 0.0;
    for (double x : grid) {
      const double F = family.cdf(i, x);
      if (!(F >= 0.0 && F <= 1.0) || F + 1e-12 < prev_cdf) {
        issues.push_back(name.str() + ": cdf not a valid non-decreasing cdf");
        break;
      }
      prev_cdf = std::max(prev_cdf, F);
    }
  }

  if (const Perturbation* p = family.perturbation()) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (double x : grid) {
        const double d = p->delta(i, x);
        if (!(d >= -p->lower_bound - 1e-12 && d <= p->upper_bound + 1e-12)) {
          std::ostringstream os;
          os << "delta_" << (i + 1) << " out of [-m, M] at x=" << x
             << " (value " << d << ")";
          issues.push_back(os.str());
          break;
        }
      }
    }
  }

  return issues;
}

void require_valid(const PlayerFamily& family, const ProbeConfig& cfg) {
  const auto issues = validate_family(family, cfg);
  if (issues.empty()) return;
  std::ostringstream os;
  os << "family validation failed:";
  for (const std::string& s : issues) os << "\n  - " << s;
  throw std::invalid_argument(os.str());
}

}  // namespace winner
