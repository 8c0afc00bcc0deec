#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qes {

enum class ErrorKind {
  ZeroVector,
  NotNormalized,
  DomainError,
  OutOfRange,
  ShapeMismatch,
  EmptyHistogram,
  EmptySlice,
  InsufficientData,
  ToleranceFailure,
  InternalConsistency,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qes
