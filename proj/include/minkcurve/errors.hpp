#pragma once

#include <stdexcept>
#include <string>

namespace mink {

enum class ErrorKind {
  ZeroVector,
  NotC2,
  NonConvex,
  NotConvex,
  DegenerateSpeed,
  FlatUnitCircle,
  AntiProfileFit,
  GuardViolation,
  ZeroCurvature,
  VanishingCurvature,
  PointOnCurve,
  NotConstantWidth,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

/// Module-level failure. what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace mink
