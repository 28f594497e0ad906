#ifndef TFG_ACCEPTANCE_HPP
#define TFG_ACCEPTANCE_HPP

// The acceptance suite: nine property criteria over the dyadic odometer and
// the Fibonacci subshift, each with a wall-clock limit.

#include <cstdint>
#include <string>
#include <vector>

namespace tfg {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double limit = 0;  // seconds; exceeding it fails the criterion
  std::string detail;

  /// `PASS C<id> <title> (<seconds>s < <limit>s): <detail>`.
  std::string line() const;
};

inline constexpr int kCriteria = 9;

/// Runs one criterion, 1..kCriteria. Never throws; errors become failures.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// All criteria in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

}  // namespace tfg

#endif  // TFG_ACCEPTANCE_HPP
