#pragma once

#include <stdexcept>

namespace xlab {

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// An internal computation produced a value that should be mathematically
// impossible (e.g. a nonpositive trace of G G*); signals a solver failure,
// not a violated inequality.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonExpander : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace xlab
