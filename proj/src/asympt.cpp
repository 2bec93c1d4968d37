#include "winner/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "winner/errors.hpp"
#include "winner/quadrature.hpp"

namespace winner {

namespace {

constexpr double kRhoPointMassThreshold = 64.0;
constexpr double kDensityNormTol = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LimitMeasure LimitMeasure::power_law(double rho) {
  if (std::isnan(rho) || rho < 0.0) {
    throw std::invalid_argument("LimitMeasure: rho must lie in [0, inf]");
  }
  if (rho == 0.0) return point_mass_at_zero();
  if (std::isinf(rho)) return point_mass_at_one();
  LimitMeasure m;
  m.kind_ = Kind::power_law;
  m.rho_ = rho;
  return m;
}

LimitMeasure LimitMeasure::point_mass_at_zero() {
  LimitMeasure m;
  m.kind_ = Kind::point_mass_at_zero;
  m.rho_ = 0.0;
  return m;
}

LimitMeasure LimitMeasure::point_mass_at_one() {
  LimitMeasure m;
  m.kind_ = Kind::point_mass_at_one;
  m.rho_ = kInf;
  return m;
}

LimitMeasure LimitMeasure::density(std::function<double(double)> f) {
  if (!f) {
    throw std::invalid_argument("LimitMeasure: density function required");
  }
  const QuadratureResult mass = adaptive_gauss_kronrod(f, 0.0, 1.0, 1e-10);
  if (!(std::abs(mass.value - 1.0) <= kDensityNormTol)) {
    std::ostringstream os;
    os << "LimitMeasure: density integrates to " << mass.value
       << ", not 1 within " << kDensityNormTol;
    throw std::invalid_argument(os.str());
  }
  LimitMeasure m;
  m.kind_ = Kind::density;
  m.density_ = std::move(f);
  return m;
}

double LimitMeasure::rho() const {
  if (kind_ == Kind::density) {
    throw std::invalid_argument("LimitMeasure: density variant has no rho");
  }
  return rho_;
}

const std::function<double(double)>& LimitMeasure::density_fn() const {
  if (kind_ != Kind::density) {
    throw std::invalid_argument("LimitMeasure: not a density variant");
  }
  return density_;
}

double LimitMeasure::cdf(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  switch (kind_) {
    case Kind::power_law:
      return std::pow(x, rho_);
    case Kind::point_mass_at_zero:
      return 1.0;
    case Kind::point_mass_at_one:
      return x < 1.0 ? 0.0 : 1.0;
    case Kind::density:
      if (x == 0.0) return 0.0;
      return adaptive_gauss_kronrod(density_, 0.0, x, 1e-10).value;
  }
  return 0.0;  // unreachable
}

BnSequence BnSequence::from_values(std::function<double(std::int64_t)> b) {
  if (!b) throw std::invalid_argument("BnSequence: function required");
  BnSequence seq;
  seq.log_b = [b = std::move(b)](std::int64_t n) {
    const double v = b(n);
    if (!(v > 0.0)) {
      throw std::invalid_argument("BnSequence: b(n) must be positive");
    }
    return std::log(v);
  };
  return seq;
}

BnSequence BnSequence::from_log(std::function<double(std::int64_t)> log_b) {
  if (!log_b) throw std::invalid_argument("BnSequence: function required");
  BnSequence seq;
  seq.log_b = std::move(log_b);
  return seq;
}

BnSequence BnSequence::from_weights(const std::vector<double>& weights) {
  auto prefix = std::make_shared<std::vector<double>>();
  prefix->reserve(weights.size() + 1);
  prefix->push_back(0.0);
  double acc = 0.0;
  for (double c : weights) {
    acc += c;
    prefix->push_back(acc);
  }
  BnSequence seq;
  seq.log_b = [prefix](std::int64_t n) {
    if (n < 1 || n >= static_cast<std::int64_t>(prefix->size())) {
      throw std::invalid_argument("BnSequence: n outside the weight range");
    }
    return std::log((*prefix)[static_cast<std::size_t>(n)]);
  };
  return seq;
}

std::vector<double> alpha_weights(const PlayerFamily& family) {
  if (!family.has_weights()) {
    throw std::invalid_argument(
        "alpha_weights: family has no explicit weights");
  }
  const std::vector<double>& c = family.weights();
  const double b_n = family.total_weight();
  std::vector<double> alpha(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) alpha[i] = c[i] / b_n;
  return alpha;
}

double approximation_error(const PlayerFamily& family,
                           const InversionConfig& inv_cfg,
                           const QuadratureConfig& quad_cfg) {
  const std::vector<double> alpha = alpha_weights(family);
  for (double a : alpha) {
    if (!(a > 0.0)) {
      throw std::invalid_argument(
          "approximation_error: all weights must be positive");
    }
  }
  const WinnerDistribution exact =
      winner_probs_exact(family, inv_cfg, quad_cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    worst = std::max(worst, std::abs(exact.probs[i] / alpha[i] - 1.0));
  }
  return worst;
}

std::vector<double> empirical_limit_cdf(const PlayerFamily& family,
                                        const std::vector<double>& grid) {
  if (!family.has_weights()) {
    throw std::invalid_argument(
        "empirical_limit_cdf: family has no explicit weights");
  }
  const std::vector<double>& c = family.weights();
  const std::size_t n = c.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + c[i];
  const double b_n = prefix[n];

  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid) {
    x = std::clamp(x, 0.0, 1.0);
    // k/n <= x < (k+1)/n; the nudge keeps grid points that are exact
    // multiples of 1/n from landing one index low after rounding.
    const auto k = static_cast<std::size_t>(std::min<double>(
        static_cast<double>(n),
        std::floor(x * static_cast<double>(n) + 1e-9)));
    out.push_back(prefix[k] / b_n);
  }
  return out;
}

std::vector<double> unit_grid(int points) {
  if (points < 2) throw std::invalid_argument("unit_grid: points must be >= 2");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / (points - 1);
  }
  return grid;
}

RhoEstimate estimate_rho(const BnSequence& b, std::int64_t n_max,
                         const RhoConfig& cfg) {
  if (!b.log_b) throw std::invalid_argument("estimate_rho: b required");
  if (n_max < 2) throw std::invalid_argument("estimate_rho: n_max must be >= 2");

  const auto log_b = [&](std::int64_t n) {
    const double v = b.log_b(n);
    if (std::isnan(v) || std::isinf(v)) {
      std::ostringstream os;
      os << "estimate_rho: b(" << n
         << ") overflowed; supply the sequence in log space";
      throw NumericalError(os.str());
    }
    return v;
  };

  // Doubling schedule, largest n first.
  std::vector<std::int64_t> schedule;
  for (std::int64_t n = n_max;
       n >= cfg.schedule_floor &&
       static_cast<int>(schedule.size()) < cfg.max_points;
       n /= 2) {
    schedule.push_back(n);
    if (n == 1) break;
  }
  if (schedule.size() < 2) {
    throw std::invalid_argument("estimate_rho: schedule too short");
  }

  RhoEstimate est;
  std::vector<double> exponents;   // -log2(b_n / b_2n)
  std::vector<double> regressors;  // 1 / ln n
  double prev_log = -kInf;
  for (std::int64_t n : schedule) {
    const double ln = log_b(n);
    const double l2n = log_b(2 * n);
    if (l2n + 1e-12 < ln || (prev_log != -kInf && ln > prev_log + 1e-12)) {
      throw std::invalid_argument(
          "estimate_rho: b is not non-decreasing on the probes");
    }
    prev_log = ln;
    est.sequence_of_ratios.emplace_back(n, std::exp(ln - l2n));
    exponents.push_back((l2n - ln) / std::log(2.0));
    regressors.push_back(1.0 / std::log(static_cast<double>(n)));
  }

  // Regularity condition b_{n+1}/b_n -> 1, witnessed along the schedule and
  // decided at the largest probe.
  for (std::int64_t n : schedule) {
    est.ratio_witness.emplace_back(n, std::exp(log_b(n + 1) - log_b(n)));
  }
  est.ratio_condition_holds =
      std::abs(est.ratio_witness.front().second - 1.0) < cfg.ratio_tolerance;

  // Exponential-type growth: the doubling exponent itself keeps growing
  // with n instead of settling. Report infinity rather than extrapolating.
  if (exponents.size() >= 2 && exponents[0] > exponents[1] + 0.5) {
    est.rho_hat = kInf;
    return est;
  }

  // Least-squares intercept of exponent against 1/ln n; kills the
  // first-order bias from slowly varying factors.
  const std::size_t m = exponents.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sx += regressors[k];
    sy += exponents[k];
    sxx += regressors[k] * regressors[k];
    sxy += regressors[k] * exponents[k];
  }
  const double det = m * sxx - sx * sx;
  double rho = (det != 0.0) ? (sxx * sy - sx * sxy) / det : sy / m;
  rho = std::max(rho, 0.0);
  if (rho > kRhoPointMassThreshold) rho = kInf;
  if (rho < 1.0 / kRhoPointMassThreshold) rho = 0.0;
  est.rho_hat = rho;
  return est;
}

LimitMeasure classify_limit(const RhoEstimate& est) {
  if (std::isnan(est.rho_hat) || est.rho_hat < 0.0) {
    throw std::invalid_argument("classify_limit: invalid rho_hat");
  }
  if (est.rho_hat > kRhoPointMassThreshold) {
    return LimitMeasure::point_mass_at_one();
  }
  if (est.rho_hat < 1.0 / kRhoPointMassThreshold) {
    return LimitMeasure::point_mass_at_zero();
  }
  return LimitMeasure::power_law(est.rho_hat);
}

TriangularLimit triangular_limit(const std::function<double(double)>& g) {
  if (!g) throw std::invalid_argument("triangular_limit: g required");
  const QuadratureResult mass = adaptive_gauss_kronrod(g, 0.0, 1.0, 1e-10);
  if (!(mass.value > 0.0)) {
    throw std::invalid_argument("triangular_limit: integral of g must be > 0");
  }
  TriangularLimit out;
  out.bn_slope = mass.value;
  const double norm = mass.value;
  out.measure = LimitMeasure::density(
      [g, norm](double x) { return g(x) / norm; });
  return out;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l1_distance: size mismatch");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace winner
