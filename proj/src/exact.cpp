#include "winner/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "winner/errors.hpp"
#include "winner/quadrature.hpp"
#include "winner/root_finding.hpp"

namespace winner {

std::string method_name(Method method) {
  switch (method) {
    case Method::basic_formula:
      return "basic-formula";
    case Method::product_form:
      return "product-form";
    case Method::asymptotic:
      return "asymptotic";
    case Method::monte_carlo:
      return "monte-carlo";
  }
  return "unknown";
}

double WinnerDistribution::sum() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

void InversionConfig::validate() const {
  if (!(bracket_lo > 0.0) || !(bracket_hi > bracket_lo)) {
    throw std::invalid_argument("InversionConfig: need 0 < bracket_lo < bracket_hi");
  }
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("InversionConfig: tolerances must be > 0");
  }
  if (max_iter < 1) {
    throw std::invalid_argument("InversionConfig: max_iter must be >= 1");
  }
}

void QuadratureConfig::validate() const {
  if (nodes < 2) {
    throw std::invalid_argument("QuadratureConfig: nodes must be >= 2");
  }
  if (scheme == QuadratureScheme::truncated_adaptive && !(y_max >= 30.0)) {
    throw std::invalid_argument(
        "QuadratureConfig: y_max must be >= 30 for the adaptive scheme");
  }
  if (!(adaptive_tol > 0.0)) {
    throw std::invalid_argument("QuadratureConfig: adaptive_tol must be > 0");
  }
}

double sum_nu(const PlayerFamily& family, double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("sum_nu: x must be > 0");
  }
  switch (family.variant()) {
    case PlayerFamily::Variant::proportional:
    case PlayerFamily::Variant::triangular:
      return family.total_weight() * family.tail()->eval(x);
    default: {
      double total = 0.0;
      for (std::size_t i = 0; i < family.size(); ++i) {
        total += family.nu(i, x);
      }
      return total;
    }
  }
}

double invert_sum(const PlayerFamily& family, double y,
                  const InversionConfig& cfg) {
  cfg.validate();
  if (!(y > 0.0)) {
    throw std::domain_error("invert_sum: y must be > 0");
  }
  if (const TailFunction* tail = family.shared_tail();
      tail && tail->has_inverse()) {
    return tail->inverse(y / family.total_weight());
  }
  const auto sum = [&family](double x) { return sum_nu(family, x); };
  try {
    const Bracket bracket =
        expand_bracket_decreasing(sum, y, cfg.bracket_lo, cfg.bracket_hi);
    return bisect_decreasing(sum, y, bracket, cfg.abs_tol, cfg.rel_tol,
                             cfg.max_iter);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("invert_sum: ") + e.what());
  }
}

double invert_player_nu(const PlayerFamily& family, std::size_t i, double t,
                        const InversionConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) {
    throw std::domain_error("invert_player_nu: t must be > 0");
  }
  if (family.player_has_inverse(i)) {
    return family.player_inverse(i, t);
  }
  const auto nu_i = [&family, i](double x) { return family.nu(i, x); };
  try {
    const Bracket bracket =
        expand_bracket_decreasing(nu_i, t, cfg.bracket_lo, cfg.bracket_hi);
    return bisect_decreasing(nu_i, t, bracket, cfg.abs_tol, cfg.rel_tol,
                             cfg.max_iter);
  } catch (const NumericalError& e) {
    std::ostringstream os;
    os << "invert_player_nu (player " << (i + 1) << "): " << e.what();
    throw NumericalError(os.str());
  }
}

namespace {

double checked_integrand(const PlayerFamily& family, std::size_t i, double x,
                         double y) {
  const double v = family.nu(i, x);
  if (std::isnan(v) || v < 0.0) {
    std::ostringstream os;
    os << "winner_probs_exact: negative integrand nu_" << (i + 1) << "("
       << x << ") at y = " << y << "; user nu is likely non-monotone";
    throw NumericalError(os.str());
  }
  return v;
}

std::vector<double> laguerre_probs(const PlayerFamily& family,
                                   const InversionConfig& inv_cfg,
                                   const GaussLaguerreRule& rule) {
  const std::size_t n = family.size();
  // The inversion does not depend on the player; do it once per node.
  std::vector<double> x_at_node(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    x_at_node[k] = invert_sum(family, rule.nodes[k], inv_cfg);
  }
  std::vector<double> probs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {  // fixed node order
      acc += rule.weights[k] *
             checked_integrand(family, i, x_at_node[k], rule.nodes[k]);
    }
    probs[i] = acc;
  }
  return probs;
}

WinnerDistribution exact_gauss_laguerre(const PlayerFamily& family,
                                        const InversionConfig& inv_cfg,
                                        const QuadratureConfig& quad_cfg) {
  WinnerDistribution dist;
  dist.method = Method::basic_formula;
  dist.probs =
      laguerre_probs(family, inv_cfg, gauss_laguerre(quad_cfg.nodes));

  // Truncation estimate from the embedded half-order rule. The
  // normalization defect is useless here: the integrands sum to y by the
  // inversion identity, so per-player errors cancel in the sum.
  const std::vector<double> coarse = laguerre_probs(
      family, inv_cfg, gauss_laguerre(std::max(2, quad_cfg.nodes / 2)));
  double quad_est = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    quad_est = std::max(quad_est, std::abs(dist.probs[i] - coarse[i]));
  }
  dist.tolerance_estimate =
      quad_est + static_cast<double>(family.size()) * inv_cfg.abs_tol;
  return dist;
}

WinnerDistribution exact_adaptive(const PlayerFamily& family,
                                  const InversionConfig& inv_cfg,
                                  const QuadratureConfig& quad_cfg) {
  const std::size_t n = family.size();
  // x_n(y) cache shared across players; adaptive refinement revisits the
  // same nodes for every i.
  std::map<double, double> cache;
  const auto x_of_y = [&](double y) {
    if (const auto it = cache.find(y); it != cache.end()) return it->second;
    const double x = invert_sum(family, y, inv_cfg);
    cache.emplace(y, x);
    return x;
  };

  const double tail_bound = (1.0 + quad_cfg.y_max) * std::exp(-quad_cfg.y_max);

  WinnerDistribution dist;
  dist.method = Method::basic_formula;
  dist.probs.assign(n, 0.0);
  double err_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto integrand = [&](double y) {
      return checked_integrand(family, i, x_of_y(y), y) * std::exp(-y);
    };
    QuadratureResult r;
    try {
      r = adaptive_gauss_kronrod(integrand, 0.0, quad_cfg.y_max,
                                 quad_cfg.adaptive_tol);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("winner_probs_exact: ") + e.what());
    }
    dist.probs[i] = r.value;
    err_total += r.error_estimate;
  }
  dist.tolerance_estimate =
      err_total + tail_bound + static_cast<double>(n) * inv_cfg.abs_tol;
  return dist;
}

}  // namespace

WinnerDistribution winner_probs_exact(const PlayerFamily& family,
                                      const InversionConfig& inv_cfg,
                                      const QuadratureConfig& quad_cfg) {
  inv_cfg.validate();
  quad_cfg.validate();
  if (quad_cfg.scheme == QuadratureScheme::gauss_laguerre) {
    return exact_gauss_laguerre(family, inv_cfg, quad_cfg);
  }
  return exact_adaptive(family, inv_cfg, quad_cfg);
}

WinnerDistribution winner_probs_product(const PlayerFamily& family,
                                        const QuadratureConfig& quad_cfg,
                                        const InversionConfig& inv_cfg) {
  inv_cfg.validate();
  quad_cfg.validate();
  const std::size_t n = family.size();

  WinnerDistribution dist;
  dist.method = Method::product_form;
  dist.probs.assign(n, 0.0);
  double err_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (family.has_weights() && family.weights()[i] == 0.0) {
      continue;  // nu_i == 0: the player sits at 0 and never wins
    }
    // p_i = integral_0^1 prod_{j != i} F_j(x_i(u)) du, u = F_i(x).
    const auto integrand = [&](double u) {
      const double t = -std::log(u);
      if (t <= 0.0) return 1.0;  // u rounded to 1: x -> inf, every F_j -> 1
      const double x = invert_player_nu(family, i, t, inv_cfg);
      double others = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) others += family.nu(j, x);
      }
      return std::exp(-others);
    };
    QuadratureResult r;
    try {
      r = adaptive_gauss_kronrod(integrand, 0.0, 1.0, quad_cfg.adaptive_tol);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("winner_probs_product: ") + e.what());
    }
    dist.probs[i] = r.value;
    err_total += r.error_estimate;
  }
  dist.tolerance_estimate =
      err_total + static_cast<double>(n) * inv_cfg.abs_tol;
  return dist;
}

}  // namespace winner
