#include "tameblocks/error.hpp"

namespace tameblocks {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotSylow: return "NotSylow";
    case ErrorKind::NotSemidihedral: return "NotSemidihedral";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Stalled: return "Stalled";
    case ErrorKind::RecipeInvalid: return "RecipeInvalid";
    case ErrorKind::DataCorrupt: return "DataCorrupt";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::NonUnique: return "NonUnique";
    case ErrorKind::Unrecognized: return "Unrecognized";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

int Error::exit_code() const {
  switch (kind_) {
    case ErrorKind::NotPrime:
    case ErrorKind::NotSquare:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::NotMember:
    case ErrorKind::NotNormal:
    case ErrorKind::RecipeInvalid:
    case ErrorKind::InvalidInput:
      return 2;
    case ErrorKind::TooLarge:
    case ErrorKind::BudgetExceeded:
      return 3;
    default:
      return 1;
  }
}

}  // namespace tameblocks
