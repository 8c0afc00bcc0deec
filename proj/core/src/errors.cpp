#include "qes/errors.hpp"

namespace qes {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::EmptyHistogram: return "EmptyHistogram";
    case ErrorKind::EmptySlice: return "EmptySlice";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ToleranceFailure: return "ToleranceFailure";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace qes
