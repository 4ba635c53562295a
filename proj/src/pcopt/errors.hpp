#ifndef PCOPT_ERRORS_HPP
#define PCOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition (dimension mismatch, out-of-range parameter, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Objective produced a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Line-search doubling ran past the step cap; the restriction has no
/// detectable minimizer in range.
class UnboundedDescentError : public Error {
 public:
  using Error::Error;
};

/// The repeated-querying subroutine hit its round cap: the two function
/// values are indistinguishable at the requested confidence.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// Thrown by the oracle when the query budget is spent. Optimizer loops
/// treat this as normal termination, not a failure.
class BudgetExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcopt

#endif  // PCOPT_ERRORS_HPP
