#ifndef WINNER_CLI_HPP
#define WINNER_CLI_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace winner::cli {

inline constexpr const char* kReportSchema = "winner-report/1";

/// Exit codes of the batch runner.
enum ExitCode : int { kOk = 0, kValidationError = 2, kNumericalError = 3 };

/// Executes one job object {"command": ..., ...} and returns the report
/// {"schema": "winner-report/1", "command", "job" (echo), "result",
/// "wall_time_seconds", "timestamp"}. Throws std::invalid_argument /
/// std::domain_error on bad specs and NumericalError on numerical failure;
/// the caller maps those to exit codes.
nlohmann::json run_job(const nlohmann::json& job);

/// Flat CSV rendering of a report: scalar key,value rows followed by the
/// command's vector table. Numeric values are printed with 15 significant
/// digits.
std::string report_to_csv(const nlohmann::json& report);

/// Full pipeline: run the job, write the report to the configured output
/// (or `fallback_out` as JSON when the job names no path), map exceptions
/// to exit codes, and print diagnostics to `err`.
int run_and_emit(const nlohmann::json& job, std::ostream& fallback_out,
                 std::ostream& err);

}  // namespace winner::cli

#endif  // WINNER_CLI_HPP
