#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace toledo {

enum class ErrorKind {
  NonNegativePoint,
  NotHyperbolic,
  AnchorOffAxis,
  CoincidentGeodesics,
  RelationViolated,
  TooFewGenerators,
  DegenerateRep,
  Inconsistent,
  NotDiscrete,
  BadOrdering,
  NumericallyNotHyperbolic,
  DegeneratePair,
  OddN,
  IndexOutOfRange,
  NotHyperbolicGenerator,
  SimplicityCheckFailed,
  RetryBudgetExhausted,
  BudgetExceeded,
  SpreadTooLarge,
  InvalidArgument,
  MalformedDocument,
};

const char* error_name(ErrorKind kind);

/// Domain error carrying a stable name used by the CLI and the HTTP service.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const char* name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

inline const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonNegativePoint: return "NonNegativePoint";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::AnchorOffAxis: return "AnchorOffAxis";
    case ErrorKind::CoincidentGeodesics: return "CoincidentGeodesics";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::TooFewGenerators: return "TooFewGenerators";
    case ErrorKind::DegenerateRep: return "DegenerateRep";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::BadOrdering: return "BadOrdering";
    case ErrorKind::NumericallyNotHyperbolic: return "NumericallyNotHyperbolic";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::OddN: return "OddN";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotHyperbolicGenerator: return "NotHyperbolicGenerator";
    case ErrorKind::SimplicityCheckFailed: return "SimplicityCheckFailed";
    case ErrorKind::RetryBudgetExhausted: return "RetryBudgetExhausted";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SpreadTooLarge: return "SpreadTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

/// Short scientific form for residuals quoted in error messages.
inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace toledo
