#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct UnsupportedShape : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct RankMismatch : Error { using Error::Error; };
struct NonPsd : Error { using Error::Error; };
struct NotInTangentSpace : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };

// Mock-diagonal entry <= 0 in a candidate factor.  `column` is 1-based,
// matching the usual linear-algebra numbering in error messages.
struct ZeroOrNegativePivot : Error {
  int column;
  ZeroOrNegativePivot(int col, const std::string& msg) : Error(msg), column(col) {}
};

// Pivot failure while factorizing: the matrix lies outside the restricted
// class, and `column` (1-based) identifies the offending column.
struct NotRestricted : Error {
  int column;
  NotRestricted(int col, const std::string& msg) : Error(msg), column(col) {}
};

}  // namespace lrc
