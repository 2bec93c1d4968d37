#ifndef WINNER_ERRORS_HPP
#define WINNER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace winner {

/// Thrown when an iterative numerical procedure fails to deliver its
/// contract (bracket exhaustion, iteration budget, refinement budget).
/// Input validation problems use std::invalid_argument / std::domain_error
/// instead; the CLI maps the two groups to distinct exit codes.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace winner

#endif  // WINNER_ERRORS_HPP
