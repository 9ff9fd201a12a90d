#ifndef TSID_ERROR_HPP
#define TSID_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsid {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  SingularMatrix,
  NonConvergence,
  NotObservable,
  InsufficientData,
  SingularHankel,
  NoOrderFound,
  MissingStep,
  ZeroRoot,
  EmptySeries,
  ParseError,
  IoError,
  UsageError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the named kinds above,
/// so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tsid

#endif  // TSID_ERROR_HPP
