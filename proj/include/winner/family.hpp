#ifndef WINNER_FAMILY_HPP
#define WINNER_FAMILY_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "winner/tail.hpp"

namespace winner {

/// Bounded multiplicative perturbation delta_i(x) of a proportional family:
/// nu_i(x) = c_i * r(x) * (1 + delta_i(x)), with -m <= delta_i(x) <= M,
/// m < 1, and delta_i(x) -> 0 as x -> infinity (uniformly in i).
struct Perturbation {
  std::function<double(std::size_t, double)> delta;  // (player, x) -> delta
  double lower_bound = 0.0;  // m in [0, 1)
  double upper_bound = 0.0;  // M in [0, inf)
};

/// One player of a Generic family: an arbitrary hazard exponent nu with an
/// optional analytic inverse (t -> x such that nu(x) = t).
struct GenericPlayer {
  std::function<double(double)> nu;
  std::function<double(double)> inverse;  // empty when unavailable
  std::string label;

  bool has_inverse() const { return static_cast<bool>(inverse); }
};

/// Strictly increasing continuous change of variable on (0, inf), given
/// together with its inverse. Used to transport a family through
/// x -> f(x), which leaves the winner distribution unchanged.
struct Transform {
  std::function<double(double)> f;
  std::function<double(double)> f_inv;
  std::string label;
};

/// A collection of hazard exponents {nu_i}, i = 0..n-1, representing the
/// distributions F_i(x) = exp(-nu_i(x)) of n independent positive random
/// variables.
///
/// Variants:
///   proportional  nu_i(x) = c_i * r(x)
///   perturbed     nu_i(x) = c_i * r(x) * (1 + delta_i(x))
///   generic       nu_i given directly per player
///   triangular    nu_i(x) = g(i/n) * r(x), weights materialized from a
///                 density-shape g on [0, 1]
///
/// Families are immutable after construction; copies share state. All
/// user-supplied functions must be pure (documented contract, not
/// enforced), which makes a family safe to use from concurrent evaluators.
class PlayerFamily {
 public:
  enum class Variant { proportional, perturbed, generic, triangular };

  static PlayerFamily proportional(std::vector<double> weights,
                                   TailFunction tail);
  static PlayerFamily perturbed(std::vector<double> weights, TailFunction tail,
                                Perturbation perturbation);
  static PlayerFamily generic(std::vector<GenericPlayer> players);
  /// Materializes c_i = g(i/n) for i = 1..n (1-based in the ratio i/n).
  static PlayerFamily triangular(std::function<double(double)> g,
                                 std::size_t n, TailFunction tail);
  /// triangular with the default tail r(x) = 1/x.
  static PlayerFamily triangular(std::function<double(double)> g,
                                 std::size_t n);

  Variant variant() const { return data_->variant; }
  std::size_t size() const { return data_->n; }

  /// Hazard exponent nu_i(x) = -ln F_i(x). Requires i < size() and x > 0.
  double nu(std::size_t i, double x) const;

  /// F_i(x) = exp(-nu_i(x)).
  double cdf(std::size_t i, double x) const;

  /// True for every variant except generic.
  bool has_weights() const { return data_->variant != Variant::generic; }
  const std::vector<double>& weights() const;

  /// b_n = sum of weights. Requires has_weights().
  double total_weight() const;

  /// The common tail r when nu_i = c_i * r exactly (proportional and
  /// triangular variants); nullptr otherwise. Enables analytic inversion
  /// of both the per-player nu_i and the summed exponent.
  const TailFunction* shared_tail() const;

  /// The tail r for any weighted variant (including perturbed); nullptr
  /// for generic.
  const TailFunction* tail() const;

  /// Perturbation of a perturbed family; nullptr otherwise.
  const Perturbation* perturbation() const;

  /// Players of a generic family; empty otherwise.
  const std::vector<GenericPlayer>& players() const { return data_->players; }

  /// True when nu_i has an analytic inverse: shared tail with inverse, or a
  /// generic player carrying one.
  bool player_has_inverse(std::size_t i) const;

  /// Analytic solution x of nu_i(x) = t. Requires player_has_inverse(i) and
  /// t > 0. Numeric fallback for the general case lives in exact.hpp
  /// (invert_player_nu).
  double player_inverse(std::size_t i, double t) const;

  const std::string& label() const { return data_->label; }

 private:
  struct Data {
    Variant variant = Variant::proportional;
    std::size_t n = 0;
    std::vector<double> weights;  // empty for generic
    double total_weight = 0.0;
    TailFunction tail;                    // weighted variants
    Perturbation perturbation;            // perturbed only
    std::vector<GenericPlayer> players;   // generic only
    std::string label;
  };

  explicit PlayerFamily(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  void check_index(std::size_t i) const;
  static void check_weights(const std::vector<double>& weights);

  std::shared_ptr<const Data> data_;
};

/// Proportional family with r(x) = x^{-alpha}: F_i(x) = exp(-c_i / x^alpha).
/// Requires alpha > 0 and at least one positive weight.
PlayerFamily weibull_family(std::vector<double> weights, double alpha);

/// Transports the family through x -> f(x): the result has hazard
/// exponents nu~_i(x) = nu_i(f^{-1}(x)) and the same winner distribution.
/// The inverse is spot-checked (f_inv(f(x)) = x on a log grid) and a
/// failing round-trip throws std::invalid_argument.
PlayerFamily transform_family(const PlayerFamily& family,
                              const Transform& transform);

/// Builtin weight rules used by the CLI family files: power c_i = i^s,
/// geometric c_i = q^i, harmonic c_i = 1/i (i = 1..n).
std::vector<double> power_weights(double s, std::size_t n);
std::vector<double> geometric_weights(double q, std::size_t n);
std::vector<double> harmonic_weights(std::size_t n);

}  // namespace winner

#endif  // WINNER_FAMILY_HPP
