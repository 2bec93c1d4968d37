// winner — batch front-end over the argmax-distribution library.
//
// One invocation runs one command, either from a JSON job file
// (`winner exact --job job.json`) or from flag shorthand
// (`winner exact --weights 1,2,3 --alpha 1`). Flags given alongside a job
// file override the corresponding job fields.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "winner/cli.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string job_path;
  std::string family_file;
  std::string weights;
  double alpha = 0.0;
  bool has_alpha = false;
  std::int64_t draws = 0;
  bool has_draws = false;
  std::int64_t seed = 0;
  bool has_seed = false;
  int grid_points = 0;
  std::int64_t n_max = 0;
  std::string out_path;
  std::string format;
  bool validate = false;
  // command-specific extras
  double p = 0.0;
  bool has_p = false;
  std::int64_t n = 0;
  bool has_n = false;
  std::string g;
  std::string weights_rule_kind;
  double weights_rule_param = 0.0;
  bool has_rule_param = false;
  bool with_exact_error = false;
};

std::vector<double> parse_weight_list(const std::string& text) {
  std::vector<double> weights;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    weights.push_back(std::stod(item));
  }
  return weights;
}

json build_job(const std::string& command, const CommonFlags& flags) {
  json job;
  if (!flags.job_path.empty()) {
    std::ifstream in(flags.job_path);
    if (!in) {
      throw std::invalid_argument("cannot read job file: " + flags.job_path);
    }
    job = json::parse(in);
  }
  job["command"] = command;

  if (!flags.family_file.empty()) {
    std::ifstream in(flags.family_file);
    if (!in) {
      throw std::invalid_argument("cannot read family file: " +
                                  flags.family_file);
    }
    job["family"] = json::parse(in);
  }
  if (!flags.weights.empty()) {
    if (!job.contains("family")) job["family"] = {{"variant", "weibull"}};
    job["family"]["weights"] = parse_weight_list(flags.weights);
  }
  if (flags.has_alpha) {
    if (!job.contains("family")) job["family"] = {{"variant", "weibull"}};
    job["family"]["alpha"] = flags.alpha;
  }
  if (flags.has_draws) job["draws"] = flags.draws;
  if (flags.has_seed) job["seed"] = flags.seed;
  if (flags.grid_points > 0) job["grid_points"] = flags.grid_points;
  if (flags.n_max > 0) job["n_max"] = flags.n_max;
  if (flags.validate) job["validate"] = true;
  if (flags.has_p) job["p"] = flags.p;
  if (flags.has_n) job["n"] = flags.n;
  if (!flags.g.empty()) job["g"] = flags.g;
  if (!flags.weights_rule_kind.empty()) {
    json rule{{"kind", flags.weights_rule_kind}};
    if (flags.has_rule_param) rule["param"] = flags.weights_rule_param;
    job["weights_rule"] = rule;
  }
  if (flags.with_exact_error) job["with_exact_error"] = true;
  if (!flags.out_path.empty() || !flags.format.empty()) {
    json output = job.contains("output") ? job["output"] : json::object();
    if (!flags.out_path.empty()) output["path"] = flags.out_path;
    if (!flags.format.empty()) output["format"] = flags.format;
    job["output"] = output;
  }
  return job;
}

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--job", flags->job_path, "JSON job file");
  cmd->add_option("--family-file", flags->family_file,
                  "family specification JSON file");
  cmd->add_option("--weights", flags->weights,
                  "comma-separated weights, e.g. 1,2,3");
  cmd->add_option("--alpha", flags->alpha, "tail exponent r(x) = x^-alpha")
      ->each([flags](const std::string&) { flags->has_alpha = true; });
  cmd->add_option("--draws", flags->draws, "Monte Carlo replicates")
      ->each([flags](const std::string&) { flags->has_draws = true; });
  cmd->add_option("--seed", flags->seed, "simulation seed")
      ->each([flags](const std::string&) { flags->has_seed = true; });
  cmd->add_option("--grid-points", flags->grid_points,
                  "points of the [0,1] evaluation grid");
  cmd->add_option("--n-max", flags->n_max, "largest probe for rho estimation");
  cmd->add_option("--out", flags->out_path, "report output path");
  cmd->add_option("--format", flags->format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--validate", flags->validate,
                "run probe validation on the family before computing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "winner: exact, asymptotic, and Monte Carlo distribution of the "
      "argmax index of independent non-identically distributed positive "
      "random variables"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string command;

  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{
           {"exact", "winner probabilities via the basic formula"},
           {"approx", "first-order weights alpha_i = c_i / b_n"},
           {"simulate", "Monte Carlo estimate of the winner law"},
           {"compare", "exact vs Monte Carlo with CI flags"},
           {"rho", "tail exponent from the b_n doubling ratios"},
           {"limit-cdf", "empirical CDF of the winner-index measure"},
           {"triangular", "limit density of a triangular array"},
           {"bernoulli", "tie-aware membership check, i.i.d. Bernoulli"}}) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common_flags(cmd, &flags);
    if (name == "bernoulli") {
      cmd->add_option("--p", flags.p, "success probability")
          ->each([&flags](const std::string&) { flags.has_p = true; });
    }
    if (name == "bernoulli" || name == "triangular") {
      cmd->add_option("--n", flags.n, "player count")
          ->each([&flags](const std::string&) { flags.has_n = true; });
    }
    if (name == "triangular") {
      cmd->add_option("--g", flags.g, "builtin density shape: uniform, linear, quadratic");
    }
    if (name == "rho") {
      cmd->add_option("--weights-rule", flags.weights_rule_kind,
                      "weight rule: power, geometric, harmonic");
      cmd->add_option("--param", flags.weights_rule_param,
                      "rule parameter (s or q)")
          ->each([&flags](const std::string&) { flags.has_rule_param = true; });
    }
    if (name == "approx") {
      cmd->add_flag("--with-exact-error", flags.with_exact_error,
                    "also report max_i |p_i/alpha_i - 1|");
    }
    cmd->callback([&command, name = name]() { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  json job;
  try {
    job = build_job(command, flags);
  } catch (const std::exception& e) {
    std::cerr << "invalid job: " << e.what() << "\n";
    return winner::cli::kValidationError;
  }
  return winner::cli::run_and_emit(job, std::cout, std::cerr);
}
