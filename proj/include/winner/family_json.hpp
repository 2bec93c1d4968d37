#ifndef WINNER_FAMILY_JSON_HPP
#define WINNER_FAMILY_JSON_HPP

#include <json.hpp>

#include "winner/family.hpp"

namespace winner {

/// Builds a family from its JSON specification:
///
///   {"variant": "weibull" | "proportional" | "perturbed" | "generic"
///             | "triangular",
///    "weights": [1, 2, 3],
///    // or, instead of explicit weights:
///    "weights_rule": {"kind": "power" | "geometric" | "harmonic",
///                     "param": s_or_q},
///    "n": 100,                     // player count for rules / triangular
///    "alpha": 1.0,                 // tail r(x) = x^-alpha (default 1)
///    "perturbation": {"kind": "decay", "d": [0.5, -0.3]},  // d_i/(1+x)
///    "g": "uniform" | "linear" | "quadratic",              // triangular
///    "players": [{"kind": "weibull", "c": 1, "alpha": 2},  // generic
///                {"kind": "logsquare"}]}
///
/// Throws std::invalid_argument on malformed specs.
PlayerFamily family_from_json(const nlohmann::json& spec);

/// Resolves "weights" / "weights_rule" (+ "n") to an explicit vector.
std::vector<double> weights_from_json(const nlohmann::json& spec);

/// Named g builtins for triangular families.
std::function<double(double)> g_builtin(const std::string& name);

}  // namespace winner

#endif  // WINNER_FAMILY_JSON_HPP
