#include "winner/family.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace winner {

namespace {

constexpr double kInverseProbeRelTol = 1e-8;

// Log-spaced probe points used to spot-check a transform's inverse.
std::vector<double> transform_probe_grid() {
  std::vector<double> grid;
  for (int e = -6; e <= 6; ++e) {
    grid.push_back(std::pow(10.0, e));
    grid.push_back(3.0 * std::pow(10.0, e));
  }
  return grid;
}

}  // namespace

void PlayerFamily::check_weights(const std::vector<double>& weights) {
  if (weights.empty()) {
    throw std::invalid_argument("PlayerFamily: at least one player required");
  }
  double total = 0.0;
  for (double c : weights) {
    if (!(c >= 0.0)) {
      throw std::invalid_argument("PlayerFamily: weights must be >= 0");
    }
    total += c;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("PlayerFamily: all weights are zero");
  }
}

PlayerFamily PlayerFamily::proportional(std::vector<double> weights,
                                        TailFunction tail) {
  check_weights(weights);
  if (!tail.eval) {
    throw std::invalid_argument("PlayerFamily: tail.eval is required");
  }
  auto data = std::make_shared<Data>();
  data->variant = Variant::proportional;
  data->n = weights.size();
  data->weights = std::move(weights);
  for (double c : data->weights) data->total_weight += c;
  data->tail = std::move(tail);
  data->label = "proportional(" + data->tail.label + ")";
  return PlayerFamily(std::move(data));
}

PlayerFamily PlayerFamily::perturbed(std::vector<double> weights,
                                     TailFunction tail,
                                     Perturbation perturbation) {
  check_weights(weights);
  if (!tail.eval) {
    throw std::invalid_argument("PlayerFamily: tail.eval is required");
  }
  if (!perturbation.delta) {
    throw std::invalid_argument("PlayerFamily: perturbation.delta is required");
  }
  if (!(perturbation.lower_bound >= 0.0 && perturbation.lower_bound < 1.0)) {
    throw std::invalid_argument(
        "PlayerFamily: perturbation lower bound m must lie in [0, 1)");
  }
  if (!(perturbation.upper_bound >= 0.0)) {
    throw std::invalid_argument(
        "PlayerFamily: perturbation upper bound M must be >= 0");
  }
  auto data = std::make_shared<Data>();
  data->variant = Variant::perturbed;
  data->n = weights.size();
  data->weights = std::move(weights);
  for (double c : data->weights) data->total_weight += c;
  data->tail = std::move(tail);
  data->perturbation = std::move(perturbation);
  data->label = "perturbed(" + data->tail.label + ")";
  return PlayerFamily(std::move(data));
}

PlayerFamily PlayerFamily::generic(std::vector<GenericPlayer> players) {
  if (players.empty()) {
    throw std::invalid_argument("PlayerFamily: at least one player required");
  }
  for (const GenericPlayer& p : players) {
    if (!p.nu) {
      throw std::invalid_argument("PlayerFamily: generic player missing nu");
    }
  }
  auto data = std::make_shared<Data>();
  data->variant = Variant::generic;
  data->n = players.size();
  data->players = std::move(players);
  data->label = "generic";
  return PlayerFamily(std::move(data));
}

PlayerFamily PlayerFamily::triangular(std::function<double(double)> g,
                                      std::size_t n, TailFunction tail) {
  if (n < 1) {
    throw std::invalid_argument("PlayerFamily: triangular needs n >= 1");
  }
  if (!g) {
    throw std::invalid_argument("PlayerFamily: triangular needs g");
  }
  if (!tail.eval) {
    throw std::invalid_argument("PlayerFamily: tail.eval is required");
  }
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = g(static_cast<double>(i + 1) / static_cast<double>(n));
    if (!(c >= 0.0)) {
      throw std::invalid_argument("PlayerFamily: g(i/n) must be >= 0");
    }
    weights[i] = c;
  }
  check_weights(weights);
  auto data = std::make_shared<Data>();
  data->variant = Variant::triangular;
  data->n = n;
  data->weights = std::move(weights);
  for (double c : data->weights) data->total_weight += c;
  data->tail = std::move(tail);
  data->label = "triangular(" + data->tail.label + ")";
  return PlayerFamily(std::move(data));
}

PlayerFamily PlayerFamily::triangular(std::function<double(double)> g,
                                      std::size_t n) {
  return triangular(std::move(g), n, inverse_power_tail(1.0));
}

void PlayerFamily::check_index(std::size_t i) const {
  if (i >= data_->n) {
    throw std::out_of_range("PlayerFamily: player index out of range");
  }
}

double PlayerFamily::nu(std::size_t i, double x) const {
  check_index(i);
  if (!(x > 0.0)) {
    throw std::domain_error("PlayerFamily::nu: x must be > 0");
  }
  const Data& d = *data_;
  switch (d.variant) {
    case Variant::proportional:
    case Variant::triangular:
      return d.weights[i] * d.tail.eval(x);
    case Variant::perturbed:
      return d.weights[i] * d.tail.eval(x) *
             (1.0 + d.perturbation.delta(i, x));
    case Variant::generic:
      return d.players[i].nu(x);
  }
  return 0.0;  // unreachable
}

double PlayerFamily::cdf(std::size_t i, double x) const {
  return std::exp(-nu(i, x));
}

const std::vector<double>& PlayerFamily::weights() const {
  if (!has_weights()) {
    throw std::invalid_argument(
        "PlayerFamily: generic family has no explicit weights");
  }
  return data_->weights;
}

double PlayerFamily::total_weight() const {
  if (!has_weights()) {
    throw std::invalid_argument(
        "PlayerFamily: generic family has no explicit weights");
  }
  return data_->total_weight;
}

const TailFunction* PlayerFamily::shared_tail() const {
  if (data_->variant == Variant::proportional ||
      data_->variant == Variant::triangular) {
    return &data_->tail;
  }
  return nullptr;
}

const TailFunction* PlayerFamily::tail() const {
  if (data_->variant == Variant::generic) return nullptr;
  return &data_->tail;
}

const Perturbation* PlayerFamily::perturbation() const {
  if (data_->variant != Variant::perturbed) return nullptr;
  return &data_->perturbation;
}

bool PlayerFamily::player_has_inverse(std::size_t i) const {
  check_index(i);
  if (const TailFunction* t = shared_tail()) return t->has_inverse();
  if (data_->variant == Variant::generic) {
    return data_->players[i].has_inverse();
  }
  return false;
}

double PlayerFamily::player_inverse(std::size_t i, double t) const {
  check_index(i);
  if (!(t > 0.0)) {
    throw std::domain_error("PlayerFamily::player_inverse: t must be > 0");
  }
  if (const TailFunction* tail = shared_tail(); tail && tail->has_inverse()) {
    const double c = data_->weights[i];
    // c = 0 means nu_i == 0 on (0, inf): the player is stuck at 0.
    if (c == 0.0) return 0.0;
    return tail->inverse(t / c);
  }
  if (data_->variant == Variant::generic && data_->players[i].has_inverse()) {
    return data_->players[i].inverse(t);
  }
  throw std::invalid_argument(
      "PlayerFamily::player_inverse: no analytic inverse for this player");
}

PlayerFamily weibull_family(std::vector<double> weights, double alpha) {
  return PlayerFamily::proportional(std::move(weights),
                                    inverse_power_tail(alpha));
}

namespace {

TailFunction transform_tail(const TailFunction& tail,
                            const Transform& transform) {
  TailFunction out;
  out.eval = [eval = tail.eval, f_inv = transform.f_inv](double x) {
    return eval(f_inv(x));
  };
  if (tail.has_inverse()) {
    out.inverse = [inv = tail.inverse, f = transform.f](double y) {
      return f(inv(y));
    };
  }
  out.label = tail.label + " o " +
              (transform.label.empty() ? "f^-1" : transform.label + "^-1");
  return out;
}

}  // namespace

PlayerFamily transform_family(const PlayerFamily& family,
                              const Transform& transform) {
  if (!transform.f || !transform.f_inv) {
    throw std::invalid_argument("transform_family: f and f_inv are required");
  }
  for (double x : transform_probe_grid()) {
    const double y = transform.f(x);
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw std::invalid_argument(
          "transform_family: f must map (0, inf) into (0, inf)");
    }
    const double back = transform.f_inv(y);
    if (!(std::abs(back - x) <= kInverseProbeRelTol * std::abs(x))) {
      throw std::invalid_argument(
          "transform_family: inverse round-trip failure at probe point");
    }
  }

  switch (family.variant()) {
    case PlayerFamily::Variant::proportional:
      return PlayerFamily::proportional(
          family.weights(), transform_tail(*family.tail(), transform));
    case PlayerFamily::Variant::triangular: {
      // The materialized weights are what define the family; rebuild from
      // them directly to avoid re-sampling g.
      const std::vector<double> w = family.weights();
      return PlayerFamily::proportional(
          w, transform_tail(*family.tail(), transform));
    }
    case PlayerFamily::Variant::perturbed: {
      const Perturbation& p = *family.perturbation();
      Perturbation moved;
      moved.delta = [delta = p.delta, f_inv = transform.f_inv](
                        std::size_t i, double x) { return delta(i, f_inv(x)); };
      moved.lower_bound = p.lower_bound;
      moved.upper_bound = p.upper_bound;
      return PlayerFamily::perturbed(
          family.weights(), transform_tail(*family.tail(), transform),
          std::move(moved));
    }
    case PlayerFamily::Variant::generic: {
      std::vector<GenericPlayer> players;
      players.reserve(family.size());
      for (const GenericPlayer& p : family.players()) {
        GenericPlayer q;
        q.nu = [nu = p.nu, f_inv = transform.f_inv](double x) {
          return nu(f_inv(x));
        };
        if (p.has_inverse()) {
          q.inverse = [inv = p.inverse, f = transform.f](double t) {
            return f(inv(t));
          };
        }
        q.label = p.label;
        players.push_back(std::move(q));
      }
      return PlayerFamily::generic(std::move(players));
    }
  }
  throw std::logic_error("transform_family: unknown variant");
}

std::vector<double> power_weights(double s, std::size_t n) {
  if (!(s >= 0.0)) {
    throw std::invalid_argument("power_weights: s must be >= 0");
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::pow(static_cast<double>(i + 1), s);
  }
  return w;
}

std::vector<double> geometric_weights(double q, std::size_t n) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("geometric_weights: q must be > 0");
  }
  std::vector<double> w(n);
  double v = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    v *= q;
    w[i] = v;
  }
  return w;
}

std::vector<double> harmonic_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 1.0 / static_cast<double>(i + 1);
  }
  return w;
}

}  // namespace winner
