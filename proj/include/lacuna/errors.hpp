#pragma once

#include <stdexcept>
#include <string>

namespace lacuna {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input validation failures (bad words, bad parameters, malformed files).
struct InvalidInput : Error {
  using Error::Error;
};

struct SyntaxError : InvalidInput {
  int line;
  SyntaxError(int line_, const std::string& what)
      : InvalidInput("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

struct EmptyRelatorError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotCyclicallyReducedError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotSymmetrizedError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct BadLambdaError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct MuTooLargeError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotSmallCancellationError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct BadExponentError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct PhiInadmissibleError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct IntervalOverlapError : Error {
  using Error::Error;
};

struct NotInBallError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotExactError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct TooFewExactPairsError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct BallTooSmallError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct TraceNotClosedError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NotAQuotientError : Error {
  using Error::Error;
};

struct NoFillingFoundError : Error {
  using Error::Error;
};

// Resource limits. These are distinct from negative analysis verdicts: a
// budget error means "the computation was cut short", never "the answer is
// no".
struct BudgetExceededError : Error {
  using Error::Error;
};

struct OracleBudgetExceededError : BudgetExceededError {
  using BudgetExceededError::BudgetExceededError;
};

struct MemoryBudgetExceededError : BudgetExceededError {
  using BudgetExceededError::BudgetExceededError;
};

}  // namespace lacuna
