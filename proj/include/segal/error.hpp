#ifndef SEGAL_ERROR_HPP
#define SEGAL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace segal {

enum class ErrorKind {
  SignatureMismatch,
  InternalInconsistency,
  InvalidType,
  NotOrientationPreserving,
  OutOfDisc,
  GridMismatch,
  DegenerateFrame,
  InvalidACS,
  NonMonotone,
  InvalidPhi,
  JacobianDegenerate,
  DomainError,
  DegenerateQuad,
  QuadratureFailure,
  OutOfWindow,
  CurveEscape,
  InversionFailure,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::InvalidType: return "InvalidType";
    case ErrorKind::NotOrientationPreserving: return "NotOrientationPreserving";
    case ErrorKind::OutOfDisc: return "OutOfDisc";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::InvalidACS: return "InvalidACS";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::InvalidPhi: return "InvalidPhi";
    case ErrorKind::JacobianDegenerate: return "JacobianDegenerate";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateQuad: return "DegenerateQuad";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::CurveEscape: return "CurveEscape";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace segal

#endif  // SEGAL_ERROR_HPP
