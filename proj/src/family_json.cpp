#include "winner/family_json.hpp"

#include <cmath>
#include <stdexcept>

namespace winner {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("family spec: " + msg);
}

double require_number(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    fail(std::string("missing numeric field \"") + key + "\"");
  }
  return spec[key].get<double>();
}

std::size_t require_count(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number_integer() ||
      spec[key].get<std::int64_t>() < 1) {
    fail(std::string("field \"") + key + "\" must be a positive integer");
  }
  return static_cast<std::size_t>(spec[key].get<std::int64_t>());
}

double alpha_or_default(const json& spec) {
  return spec.contains("alpha") ? require_number(spec, "alpha") : 1.0;
}

Perturbation perturbation_from_json(const json& spec, std::size_t n) {
  if (!spec.is_object() || spec.value("kind", "") != "decay") {
    fail("perturbation.kind must be \"decay\"");
  }
  if (!spec.contains("d") || !spec["d"].is_array()) {
    fail("perturbation.d must be an array");
  }
  std::vector<double> d = spec["d"].get<std::vector<double>>();
  if (d.size() != n) fail("perturbation.d length must equal player count");
  double lo = 0.0, hi = 0.0;
  for (double v : d) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(-lo < 1.0)) fail("perturbation requires min d_i > -1");
  Perturbation p;
  p.delta = [d = std::move(d)](std::size_t i, double x) {
    return d[i] / (1.0 + x);
  };
  p.lower_bound = -lo;
  p.upper_bound = hi;
  return p;
}

GenericPlayer generic_player_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind")) {
    fail("generic player needs a \"kind\"");
  }
  const std::string kind = spec["kind"].get<std::string>();
  GenericPlayer p;
  if (kind == "weibull" || kind == "inverse_power") {
    const double c = require_number(spec, "c");
    const double alpha = require_number(spec, "alpha");
    if (!(c > 0.0) || !(alpha > 0.0)) fail("player needs c > 0 and alpha > 0");
    p.nu = [c, alpha](double x) { return c * std::pow(x, -alpha); };
    p.inverse = [c, alpha](double t) { return std::pow(t / c, -1.0 / alpha); };
    p.label = kind;
  } else if (kind == "logsquare") {
    const TailFunction tail = log_square_tail();
    p.nu = tail.eval;
    p.inverse = tail.inverse;
    p.label = kind;
  } else {
    fail("unknown generic player kind \"" + kind + "\"");
  }
  return p;
}

}  // namespace

std::vector<double> weights_from_json(const nlohmann::json& spec) {
  if (spec.contains("weights")) {
    if (!spec["weights"].is_array() || spec["weights"].empty()) {
      fail("\"weights\" must be a non-empty array");
    }
    return spec["weights"].get<std::vector<double>>();
  }
  if (spec.contains("weights_rule")) {
    const json& rule = spec["weights_rule"];
    if (!rule.is_object() || !rule.contains("kind")) {
      fail("\"weights_rule\" needs a \"kind\"");
    }
    const std::size_t n = require_count(spec, "n");
    const std::string kind = rule["kind"].get<std::string>();
    if (kind == "power") return power_weights(require_number(rule, "param"), n);
    if (kind == "geometric") {
      return geometric_weights(require_number(rule, "param"), n);
    }
    if (kind == "harmonic") return harmonic_weights(n);
    fail("unknown weights_rule kind \"" + kind + "\"");
  }
  fail("either \"weights\" or \"weights_rule\" is required");
}

std::function<double(double)> g_builtin(const std::string& name) {
  if (name == "uniform") return [](double) { return 1.0; };
  if (name == "linear") return [](double x) { return x; };
  if (name == "quadratic") return [](double x) { return x * x; };
  fail("unknown triangular g \"" + name + "\"");
}

PlayerFamily family_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("variant")) {
    fail("spec must be an object with a \"variant\"");
  }
  const std::string variant = spec["variant"].get<std::string>();

  if (variant == "weibull") {
    return weibull_family(weights_from_json(spec), alpha_or_default(spec));
  }
  if (variant == "proportional") {
    return PlayerFamily::proportional(weights_from_json(spec),
                                      inverse_power_tail(alpha_or_default(spec)));
  }
  if (variant == "perturbed") {
    std::vector<double> weights = weights_from_json(spec);
    if (!spec.contains("perturbation")) {
      fail("perturbed variant needs \"perturbation\"");
    }
    Perturbation p = perturbation_from_json(spec["perturbation"], weights.size());
    return PlayerFamily::perturbed(std::move(weights),
                                   inverse_power_tail(alpha_or_default(spec)),
                                   std::move(p));
  }
  if (variant == "generic") {
    if (!spec.contains("players") || !spec["players"].is_array() ||
        spec["players"].empty()) {
      fail("generic variant needs a non-empty \"players\" array");
    }
    std::vector<GenericPlayer> players;
    for (const json& p : spec["players"]) {
      players.push_back(generic_player_from_json(p));
    }
    return PlayerFamily::generic(std::move(players));
  }
  if (variant == "triangular") {
    if (!spec.contains("g") || !spec["g"].is_string()) {
      fail("triangular variant needs a builtin \"g\" name");
    }
    const std::size_t n = require_count(spec, "n");
    return PlayerFamily::triangular(g_builtin(spec["g"].get<std::string>()), n,
                                    inverse_power_tail(alpha_or_default(spec)));
  }
  fail("unknown variant \"" + variant + "\"");
}

}  // namespace winner
