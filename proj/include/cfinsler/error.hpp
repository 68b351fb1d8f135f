#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfinsler {

enum class ErrorCode {
  NonFiniteEvaluation,
  StencilOutsideDomain,
  HermitianViolation,
  SingularMatrix,
  DomainViolation,
  InvalidCatalogEntry,
  InvalidCurvatureTag,
  ZeroVector,
  DegenerateK1,
  DegenerateUs,
  NotWeaklyKahler,
  EmptyAfterRejection,
  ConfigError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorCode::HermitianViolation: return "HermitianViolation";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::InvalidCatalogEntry: return "InvalidCatalogEntry";
    case ErrorCode::InvalidCurvatureTag: return "InvalidCurvatureTag";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DegenerateK1: return "DegenerateK1";
    case ErrorCode::DegenerateUs: return "DegenerateUs";
    case ErrorCode::NotWeaklyKahler: return "NotWeaklyKahler";
    case ErrorCode::EmptyAfterRejection: return "EmptyAfterRejection";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Numerical failures (as opposed to bad input) map to CLI exit code 3.
constexpr bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteEvaluation:
    case ErrorCode::StencilOutsideDomain:
    case ErrorCode::HermitianViolation:
    case ErrorCode::SingularMatrix:
    case ErrorCode::DegenerateK1:
    case ErrorCode::DegenerateUs:
    case ErrorCode::NotWeaklyKahler:
    case ErrorCode::DomainViolation:
    case ErrorCode::EmptyAfterRejection:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cfinsler
