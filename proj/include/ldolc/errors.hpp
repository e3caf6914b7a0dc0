#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ldolc {

/// Input text that cannot be turned into a problem, rational or trajectory.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's hypotheses do not hold. Carries every failed hypothesis,
/// each naming the offending index where one exists.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(std::vector<std::string> failures);
  explicit PreconditionError(const std::string& failure)
      : PreconditionError(std::vector<std::string>{failure}) {}

  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

/// Enumeration would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldolc
