#include "winner/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "winner/asympt.hpp"
#include "winner/errors.hpp"
#include "winner/exact.hpp"
#include "winner/family_json.hpp"
#include "winner/sim.hpp"
#include "winner/validate.hpp"

namespace winner::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("job spec: " + msg);
}

InversionConfig inversion_from_json(const json& job) {
  InversionConfig cfg;
  if (job.contains("inversion")) {
    const json& j = job["inversion"];
    cfg.bracket_lo = j.value("bracket_lo", cfg.bracket_lo);
    cfg.bracket_hi = j.value("bracket_hi", cfg.bracket_hi);
    cfg.abs_tol = j.value("abs_tol", cfg.abs_tol);
    cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
  }
  cfg.validate();
  return cfg;
}

QuadratureConfig quadrature_from_json(const json& job) {
  QuadratureConfig cfg;
  if (job.contains("quadrature")) {
    const json& j = job["quadrature"];
    if (j.contains("scheme")) {
      const std::string scheme = j["scheme"].get<std::string>();
      if (scheme == "gauss-laguerre") {
        cfg.scheme = QuadratureScheme::gauss_laguerre;
      } else if (scheme == "truncated-adaptive") {
        cfg.scheme = QuadratureScheme::truncated_adaptive;
      } else {
        fail("unknown quadrature scheme \"" + scheme + "\"");
      }
    }
    cfg.nodes = j.value("nodes", cfg.nodes);
    cfg.y_max = j.value("y_max", cfg.y_max);
    cfg.adaptive_tol = j.value("adaptive_tol", cfg.adaptive_tol);
  }
  cfg.validate();
  return cfg;
}

PlayerFamily family_from_job(const json& job) {
  if (!job.contains("family")) fail("\"family\" is required");
  PlayerFamily family = family_from_json(job["family"]);
  if (job.value("validate", false)) {
    require_valid(family);
  }
  return family;
}

std::int64_t require_int(const json& job, const char* key) {
  if (!job.contains(key) || !job[key].is_number_integer()) {
    fail(std::string("missing integer field \"") + key + "\"");
  }
  return job[key].get<std::int64_t>();
}

std::uint64_t require_seed(const json& job) {
  if (!job.contains("seed") || !job["seed"].is_number_integer()) {
    fail("\"seed\" is required for simulation commands");
  }
  return job["seed"].get<std::uint64_t>();
}

std::vector<double> grid_from_job(const json& job) {
  return unit_grid(static_cast<int>(job.value("grid_points", 101)));
}

json distribution_to_json(const WinnerDistribution& dist) {
  return json{{"method", method_name(dist.method)},
              {"probs", dist.probs},
              {"tolerance_estimate", dist.tolerance_estimate},
              {"sum", dist.sum()}};
}

json sim_report_to_json(const SimReport& report) {
  return json{{"method", "monte-carlo"},
              {"probs_hat", report.probs_hat},
              {"counts", report.counts},
              {"ci_radius", report.ci_radius},
              {"draws", report.draws},
              {"seed", report.seed},
              {"rng_label", report.rng_label},
              {"tie_count", report.tie_count}};
}

json rho_to_json(const RhoEstimate& est) {
  json ratios = json::array();
  for (const auto& [n, r] : est.sequence_of_ratios) ratios.push_back({n, r});
  json witness = json::array();
  for (const auto& [n, r] : est.ratio_witness) witness.push_back({n, r});
  json out{{"ratio_condition_holds", est.ratio_condition_holds},
           {"ratios", ratios},
           {"ratio_witness", witness}};
  if (std::isinf(est.rho_hat)) {
    out["rho_hat"] = "inf";  // JSON has no infinity literal
  } else {
    out["rho_hat"] = est.rho_hat;
  }
  const LimitMeasure measure = classify_limit(est);
  switch (measure.kind()) {
    case LimitMeasure::Kind::power_law:
      out["classification"] = "power_law";
      break;
    case LimitMeasure::Kind::point_mass_at_zero:
      out["classification"] = "point_mass_at_zero";
      break;
    case LimitMeasure::Kind::point_mass_at_one:
      out["classification"] = "point_mass_at_one";
      break;
    case LimitMeasure::Kind::density:
      out["classification"] = "density";
      break;
  }
  return out;
}

BnSequence bn_sequence_from_job(const json& job) {
  if (job.contains("b_rule")) {
    const json& rule = job["b_rule"];
    const std::string kind = rule.value("kind", "");
    if (kind == "exp_sqrt") {
      const double c = rule.value("c", 1.0);
      if (!(c > 0.0)) fail("b_rule exp_sqrt needs c > 0");
      return BnSequence::from_log([c](std::int64_t n) {
        return c * std::sqrt(static_cast<double>(n));
      });
    }
    if (kind == "power") {
      const double rho = rule.value("rho", 1.0);
      if (!(rho >= 0.0)) fail("b_rule power needs rho >= 0");
      return BnSequence::from_log([rho](std::int64_t n) {
        return rho * std::log(static_cast<double>(n));
      });
    }
    fail("unknown b_rule kind \"" + kind + "\"");
  }
  if (job.contains("weights_rule")) {
    const json& rule = job["weights_rule"];
    const std::string kind = rule.value("kind", "");
    const double param =
        rule.contains("param") ? rule["param"].get<double>() : 0.0;
    if (kind == "geometric") {
      // Closed form in log space; partial sums overflow for q > 1 long
      // before the doubled probes do.
      const double q = param;
      if (!(q > 0.0)) fail("geometric weights_rule needs param > 0");
      return BnSequence::from_log([q](std::int64_t n) {
        const double nd = static_cast<double>(n);
        if (q == 1.0) return std::log(nd);
        if (q > 1.0) {
          return nd * std::log(q) + std::log(q / (q - 1.0)) +
                 std::log1p(-std::pow(q, -nd));
        }
        return std::log(q * (1.0 - std::pow(q, nd)) / (1.0 - q));
      });
    }
    if (kind == "power" || kind == "harmonic") {
      // Exact partial sums, evaluated on demand.
      const double s = param;
      if (kind == "power" && !(s >= 0.0)) {
        fail("power weights_rule needs param >= 0");
      }
      const bool harmonic = (kind == "harmonic");
      return BnSequence::from_values([s, harmonic](std::int64_t n) {
        double acc = 0.0;
        for (std::int64_t i = 1; i <= n; ++i) {
          const double x = static_cast<double>(i);
          acc += harmonic ? 1.0 / x : std::pow(x, s);
        }
        return acc;
      });
    }
    fail("unknown weights_rule kind \"" + kind + "\"");
  }
  if (job.contains("family")) {
    const PlayerFamily family = family_from_json(job["family"]);
    return BnSequence::from_weights(family.weights());
  }
  fail("rho command needs \"b_rule\", \"weights_rule\", or \"family\"");
}

json run_command(const json& job) {
  const std::string command = job.value("command", "");

  if (command == "exact") {
    const PlayerFamily family = family_from_job(job);
    const WinnerDistribution dist = winner_probs_exact(
        family, inversion_from_json(job), quadrature_from_json(job));
    return distribution_to_json(dist);
  }

  if (command == "approx") {
    const PlayerFamily family = family_from_job(job);
    json out{{"method", method_name(Method::asymptotic)},
             {"alpha", alpha_weights(family)}};
    if (job.value("with_exact_error", false)) {
      out["max_rel_error_vs_exact"] = approximation_error(
          family, inversion_from_json(job), quadrature_from_json(job));
    }
    return out;
  }

  if (command == "simulate") {
    const PlayerFamily family = family_from_job(job);
    const SimReport report =
        estimate_winner_probs(family, require_int(job, "draws"),
                              require_seed(job), inversion_from_json(job));
    return sim_report_to_json(report);
  }

  if (command == "compare") {
    const PlayerFamily family = family_from_job(job);
    const InversionConfig inv_cfg = inversion_from_json(job);
    const WinnerDistribution exact =
        winner_probs_exact(family, inv_cfg, quadrature_from_json(job));
    const SimReport sim = estimate_winner_probs(
        family, require_int(job, "draws"), require_seed(job), inv_cfg);
    double max_abs_diff = 0.0;
    std::vector<bool> within(family.size());
    bool all_within = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const double diff = std::abs(sim.probs_hat[i] - exact.probs[i]);
      max_abs_diff = std::max(max_abs_diff, diff);
      within[i] = diff <= sim.ci_radius[i];
      all_within = all_within && within[i];
    }
    return json{{"exact", distribution_to_json(exact)},
                {"simulation", sim_report_to_json(sim)},
                {"max_abs_diff", max_abs_diff},
                {"within_ci", within},
                {"all_within_ci", all_within}};
  }

  if (command == "rho") {
    const BnSequence b = bn_sequence_from_job(job);
    const RhoEstimate est = estimate_rho(b, require_int(job, "n_max"));
    return rho_to_json(est);
  }

  if (command == "limit-cdf") {
    const PlayerFamily family = family_from_job(job);
    const std::vector<double> grid = grid_from_job(job);
    return json{{"grid", grid}, {"cdf", empirical_limit_cdf(family, grid)}};
  }

  if (command == "triangular") {
    if (!job.contains("g") || !job["g"].is_string()) {
      fail("triangular command needs a builtin \"g\" name");
    }
    const auto g = g_builtin(job["g"].get<std::string>());
    const std::size_t n = static_cast<std::size_t>(require_int(job, "n"));
    const TriangularLimit limit = triangular_limit(g);
    const PlayerFamily family = PlayerFamily::triangular(g, n);
    const std::vector<double> grid = grid_from_job(job);
    std::vector<double> density(grid.size());
    std::vector<double> cdf_limit(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      density[k] = limit.measure.density_fn()(grid[k]);
      cdf_limit[k] = limit.measure.cdf(grid[k]);
    }
    return json{{"bn_slope", limit.bn_slope},
                {"n", n},
                {"bn_over_n", family.total_weight() / static_cast<double>(n)},
                {"grid", grid},
                {"density", density},
                {"cdf_limit", cdf_limit},
                {"cdf_empirical", empirical_limit_cdf(family, grid)}};
  }

  if (command == "bernoulli") {
    const double p = job.value("p", -1.0);
    const std::int64_t n = require_int(job, "n");
    const std::int64_t draws = require_int(job, "draws");
    const double estimate =
        bernoulli_max_membership(p, n, draws, require_seed(job));
    const double expected = p + std::pow(1.0 - p, static_cast<double>(n));
    return json{
        {"estimate", estimate},
        {"expected", expected},
        {"abs_error", std::abs(estimate - expected)},
        {"ci_radius", 3.0 * std::sqrt(expected * (1.0 - expected) /
                                      static_cast<double>(draws))},
        {"draws", draws}};
  }

  fail("unknown command \"" + command + "\"");
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string format15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format15(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Column layout of the per-index table for each command.
std::vector<std::pair<std::string, json>> csv_table(const json& report) {
  const std::string command = report["command"].get<std::string>();
  const json& r = report["result"];
  std::vector<std::pair<std::string, json>> cols;
  if (command == "exact") {
    cols.emplace_back("prob", r["probs"]);
  } else if (command == "approx") {
    cols.emplace_back("alpha", r["alpha"]);
  } else if (command == "simulate") {
    cols.emplace_back("prob_hat", r["probs_hat"]);
    cols.emplace_back("count", r["counts"]);
    cols.emplace_back("ci_radius", r["ci_radius"]);
  } else if (command == "compare") {
    cols.emplace_back("p_exact", r["exact"]["probs"]);
    cols.emplace_back("p_hat", r["simulation"]["probs_hat"]);
    cols.emplace_back("ci_radius", r["simulation"]["ci_radius"]);
    cols.emplace_back("within_ci", r["within_ci"]);
  } else if (command == "limit-cdf") {
    cols.emplace_back("x", r["grid"]);
    cols.emplace_back("cdf", r["cdf"]);
  } else if (command == "triangular") {
    cols.emplace_back("x", r["grid"]);
    cols.emplace_back("density", r["density"]);
    cols.emplace_back("cdf_empirical", r["cdf_empirical"]);
    cols.emplace_back("cdf_limit", r["cdf_limit"]);
  } else if (command == "rho") {
    json ns = json::array(), ratios = json::array();
    for (const auto& pair : r["ratios"]) {
      ns.push_back(pair[0]);
      ratios.push_back(pair[1]);
    }
    cols.emplace_back("n", ns);
    cols.emplace_back("b_ratio", ratios);
  }
  return cols;
}

void csv_scalars(const json& node, const std::string& prefix,
                 std::ostream& os) {
  for (const auto& [key, value] : node.items()) {
    if (value.is_object()) {
      csv_scalars(value, prefix + key + ".", os);
    } else if (!value.is_array()) {
      os << prefix << key << "," << csv_cell(value) << "\n";
    }
  }
}

}  // namespace

nlohmann::json run_job(const nlohmann::json& job) {
  if (!job.is_object()) {
    throw std::invalid_argument("job spec: not a JSON object");
  }
  const auto start = std::chrono::steady_clock::now();
  json result = run_command(job);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  return json{{"schema", kReportSchema},
              {"command", job.value("command", "")},
              {"job", job},
              {"result", std::move(result)},
              {"wall_time_seconds", elapsed.count()},
              {"timestamp", iso_timestamp()}};
}

std::string report_to_csv(const nlohmann::json& report) {
  std::ostringstream os;
  os << "key,value\n";
  os << "schema," << report["schema"].get<std::string>() << "\n";
  os << "command," << report["command"].get<std::string>() << "\n";
  csv_scalars(report["result"], "", os);
  os << "wall_time_seconds,"
     << format15(report["wall_time_seconds"].get<double>()) << "\n";
  os << "timestamp," << report["timestamp"].get<std::string>() << "\n";

  const auto cols = csv_table(report);
  if (!cols.empty()) {
    os << "\nindex";
    for (const auto& [name, values] : cols) os << "," << name;
    os << "\n";
    const std::size_t rows = cols.front().second.size();
    for (std::size_t k = 0; k < rows; ++k) {
      os << (k + 1);
      for (const auto& [name, values] : cols) os << "," << csv_cell(values[k]);
      os << "\n";
    }
  }
  return os.str();
}

int run_and_emit(const nlohmann::json& job, std::ostream& fallback_out,
                 std::ostream& err) {
  try {
    std::string format = "json";
    std::string path;
    if (job.contains("output")) {
      format = job["output"].value("format", "json");
      path = job["output"].value("path", "");
      if (format != "json" && format != "csv") {
        fail("output.format must be \"json\" or \"csv\"");
      }
    }
    const json report = run_job(job);
    const std::string payload =
        format == "csv" ? report_to_csv(report) : report.dump(2) + "\n";
    if (path.empty()) {
      fallback_out << payload;
    } else {
      std::ofstream out(path);
      if (!out) fail("cannot open output path \"" + path + "\"");
      out << payload;
    }
    return kOk;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid job: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "invalid job: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::domain_error& e) {
    err << "invalid job: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::out_of_range& e) {
    err << "invalid job: " << e.what() << "\n";
    return kValidationError;
  }
}

}  // namespace winner::cli
