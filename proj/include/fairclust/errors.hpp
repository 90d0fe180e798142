#pragma once

#include <stdexcept>
#include <string>

namespace fairclust {

// Bad arguments, malformed input data, or parameter combinations that make a
// request meaningless.  CLI maps these to exit code 2.
struct InvalidParams : std::runtime_error {
  explicit InvalidParams(const std::string& what) : std::runtime_error(what) {}
};

// The constraint set admits no clustering at all for the given k.  Exit code 3.
struct Infeasible : std::runtime_error {
  explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// The instance is too large for the exact search under the configured budget.
// Exit code 4.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct MetricViolation : InvalidParams {
  explicit MetricViolation(const std::string& what) : InvalidParams(what) {}
};

struct ColorMissing : InvalidParams {
  explicit ColorMissing(const std::string& what) : InvalidParams(what) {}
};

struct MissingSimilaritySets : InvalidParams {
  explicit MissingSimilaritySets(const std::string& what) : InvalidParams(what) {}
};

struct MissingOutcomeLabels : InvalidParams {
  explicit MissingOutcomeLabels(const std::string& what) : InvalidParams(what) {}
};

struct MissingClassLabels : InvalidParams {
  explicit MissingClassLabels(const std::string& what) : InvalidParams(what) {}
};

struct RequiresCoordinates : InvalidParams {
  explicit RequiresCoordinates(const std::string& what) : InvalidParams(what) {}
};

}  // namespace fairclust
