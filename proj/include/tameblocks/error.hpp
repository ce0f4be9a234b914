#pragma once

#include <stdexcept>
#include <string>

namespace tameblocks {

enum class ErrorKind {
  NotPrime,
  NotSquare,
  ShapeMismatch,
  DegreeMismatch,
  NotMember,
  NotNormal,
  NotSylow,
  NotSemidihedral,
  TooLarge,
  BudgetExceeded,
  Stalled,
  RecipeInvalid,
  DataCorrupt,
  Inconclusive,
  NonUnique,
  Unrecognized,
  InvalidInput,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  /// CLI exit code: 2 = invalid input, 3 = budget exceeded, 1 = check failure.
  int exit_code() const;

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void check(bool cond, ErrorKind k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

}  // namespace tameblocks
