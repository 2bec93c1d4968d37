#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "winner/cli.hpp"

using nlohmann::json;
using winner::cli::kNumericalError;
using winner::cli::kOk;
using winner::cli::kValidationError;
using winner::cli::report_to_csv;
using winner::cli::run_and_emit;
using winner::cli::run_job;

namespace {

json weibull_job(const char* command) {
  return json{{"command", command},
              {"family",
               {{"variant", "weibull"}, {"weights", {1.0, 2.0, 3.0}},
                {"alpha", 1.0}}}};
}

// Fields that legitimately differ between two runs of the same job.
void strip_volatile(json* report) {
  report->erase("timestamp");
  report->erase("wall_time_seconds");
  if (report->contains("result") && (*report)["result"].is_object()) {
    (*report)["result"].erase("wall_time_seconds");
  }
}

double csv_value(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ",", 0) == 0) {
      return std::stod(line.substr(key.size() + 1));
    }
  }
  FAIL("csv key not found: " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("exact command reports the closed-form winner law") {
  const json report = run_job(weibull_job("exact"));
  CHECK(report["schema"] == "winner-report/1");
  CHECK(report["command"] == "exact");
  const auto probs = report["result"]["probs"].get<std::vector<double>>();
  REQUIRE(probs.size() == 3);
  CHECK(probs[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(probs[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reports round-trip through their job echo") {
  json job = weibull_job("compare");
  job["draws"] = 20000;
  job["seed"] = 42;
  json first = run_job(job);
  json second = run_job(first["job"]);
  strip_volatile(&first);
  strip_volatile(&second);
  CHECK(first.dump() == second.dump());
}

TEST_CASE("csv and json carry identical values at 15 digits") {
  json job = weibull_job("exact");
  const json report = run_job(job);
  const std::string csv = report_to_csv(report);

  // Vector values from the table section.
  std::istringstream in(csv);
  std::string line;
  bool in_table = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.rfind("index,", 0) == 0) {
      in_table = true;
      continue;
    }
    if (!in_table || line.empty()) continue;
    const auto comma = line.find(',');
    const double from_csv = std::stod(line.substr(comma + 1));
    const double from_json = report["result"]["probs"][row].get<double>();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", from_json);
    CHECK(from_csv == std::stod(buf));
    ++row;
  }
  CHECK(row == 3);

  // Scalar values from the key,value section.
  CHECK(csv_value(csv, "tolerance_estimate") ==
        doctest::Approx(report["result"]["tolerance_estimate"].get<double>()));
}

TEST_CASE("approx command reports alpha weights and the exact gap") {
  json job = weibull_job("approx");
  job["with_exact_error"] = true;
  const json report = run_job(job);
  const auto alpha = report["result"]["alpha"].get<std::vector<double>>();
  CHECK(alpha[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(report["result"]["max_rel_error_vs_exact"].get<double>() < 1e-10);
}

TEST_CASE("simulate command is reproducible") {
  json job = weibull_job("simulate");
  job["draws"] = 10000;
  job["seed"] = 5;
  const json a = run_job(job);
  const json b = run_job(job);
  CHECK(a["result"]["counts"] == b["result"]["counts"]);
  CHECK(a["result"]["rng_label"].get<std::string>() ==
        "splitmix64-counter/1");
}

TEST_CASE("compare command flags per-index CI coverage") {
  json job = weibull_job("compare");
  job["draws"] = 50000;
  job["seed"] = 42;
  const json report = run_job(job);
  const json& r = report["result"];
  CHECK(r["all_within_ci"].get<bool>());
  CHECK(r["max_abs_diff"].get<double>() < 0.01);
  CHECK(r["within_ci"].size() == 3);
}

TEST_CASE("rho command recovers the power-law exponent") {
  const json job{{"command", "rho"},
                 {"weights_rule", {{"kind", "power"}, {"param", 1.0}}},
                 {"n_max", 100000}};
  const json report = run_job(job);
  CHECK(report["result"]["rho_hat"].get<double>() ==
        doctest::Approx(2.0).epsilon(0.03));
  CHECK(report["result"]["classification"] == "power_law");
  CHECK(report["result"]["ratio_condition_holds"].get<bool>());
}

TEST_CASE("rho command serializes divergent exponents as a string") {
  const json job{{"command", "rho"},
                 {"weights_rule", {{"kind", "geometric"}, {"param", 2.0}}},
                 {"n_max", 60}};
  const json report = run_job(job);
  CHECK(report["result"]["rho_hat"] == "inf");
  CHECK(report["result"]["classification"] == "point_mass_at_one");
  CHECK_FALSE(report["result"]["ratio_condition_holds"].get<bool>());
}

TEST_CASE("limit-cdf command evaluates the weight cdf on the grid") {
  const json job{{"command", "limit-cdf"},
                 {"family",
                  {{"variant", "proportional"},
                   {"weights_rule", {{"kind", "power"}, {"param", 1.0}}},
                   {"n", 10000}}},
                 {"grid_points", 11}};
  const json report = run_job(job);
  const auto cdf = report["result"]["cdf"].get<std::vector<double>>();
  REQUIRE(cdf.size() == 11);
  CHECK(cdf[5] == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(cdf[10] == doctest::Approx(1.0));
}

TEST_CASE("triangular command reports slope and both cdfs") {
  const json job{{"command", "triangular"},
                 {"g", "linear"},
                 {"n", 1000},
                 {"grid_points", 21}};
  const json report = run_job(job);
  CHECK(report["result"]["bn_slope"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));
  const auto emp = report["result"]["cdf_empirical"].get<std::vector<double>>();
  const auto lim = report["result"]["cdf_limit"].get<std::vector<double>>();
  REQUIRE(emp.size() == lim.size());
  for (std::size_t k = 0; k < emp.size(); ++k) {
    CHECK(std::abs(emp[k] - lim[k]) < 0.01);
  }
}

TEST_CASE("bernoulli command reports estimate vs expectation") {
  const json job{{"command", "bernoulli"}, {"p", 0.5}, {"n", 2},
                 {"draws", 100000}, {"seed", 7}};
  const json report = run_job(job);
  CHECK(report["result"]["expected"].get<double>() == doctest::Approx(0.75));
  CHECK(report["result"]["abs_error"].get<double>() <
        report["result"]["ci_radius"].get<double>());
}

TEST_CASE("validation failures exit with code 2") {
  std::ostringstream out, err;
  // alpha <= 0 is rejected by the family builder.
  json bad = weibull_job("exact");
  bad["family"]["alpha"] = -1.0;
  CHECK(run_and_emit(bad, out, err) == kValidationError);
  CHECK(err.str().find("invalid job") != std::string::npos);

  json missing_seed = weibull_job("simulate");
  missing_seed["draws"] = 10;
  CHECK(run_and_emit(missing_seed, out, err) == kValidationError);

  json unknown{{"command", "frobnicate"}};
  CHECK(run_and_emit(unknown, out, err) == kValidationError);
}

TEST_CASE("numerical failures exit with code 3 naming the operation") {
  // An iteration budget of 1 cannot meet a 1e-12 tolerance on a family
  // whose summed exponent must be inverted by bisection.
  json job{{"command", "exact"},
           {"family",
            {{"variant", "perturbed"},
             {"weights", {1.0, 2.0}},
             {"alpha", 1.0},
             {"perturbation", {{"kind", "decay"}, {"d", {0.5, -0.3}}}}}},
           {"inversion", {{"max_iter", 1}}}};
  std::ostringstream out, err;
  CHECK(run_and_emit(job, out, err) == kNumericalError);
  CHECK(err.str().find("invert_sum") != std::string::npos);
}

TEST_CASE("reports land in the requested output file") {
  const std::string path = "/tmp/winner_cli_test_report.json";
  std::remove(path.c_str());
  json job = weibull_job("exact");
  job["output"] = {{"format", "json"}, {"path", path}};
  std::ostringstream out, err;
  REQUIRE(run_and_emit(job, out, err) == kOk);
  CHECK(out.str().empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  const json report = json::parse(in);
  CHECK(report["schema"] == "winner-report/1");
  std::remove(path.c_str());
}

TEST_CASE("the installed binary runs end to end") {
  const std::string report_path = "/tmp/winner_cli_subprocess.json";
  std::remove(report_path.c_str());
  const std::string cmd = std::string(WINNER_CLI_PATH) +
                          " exact --weights 1,2,3 --alpha 1 --out " +
                          report_path + " > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in(report_path);
  REQUIRE(in.good());
  const json report = json::parse(in);
  CHECK(report["result"]["probs"][2].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  std::remove(report_path.c_str());

  const std::string bad = std::string(WINNER_CLI_PATH) +
                          " exact --weights 0,0 --alpha 1 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == kValidationError);
}
