#pragma once

#include <stdexcept>
#include <string>

namespace cheegerlab {

enum class ErrorKind {
  StencilEscape,
  ChartExhausted,
  SingularMetric,
  DegeneratePlane,
  RankInstability,
  SamplerFailure,
  ConstraintViolation,
  HypothesisViolated,
  NonInvertible,
  NotTangent,
  UnknownScenario,
  NumericFailure,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::StencilEscape: return "StencilEscape";
    case ErrorKind::ChartExhausted: return "ChartExhausted";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::DegeneratePlane: return "DegeneratePlane";
    case ErrorKind::RankInstability: return "RankInstability";
    case ErrorKind::SamplerFailure: return "SamplerFailure";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

/// Library error with a machine-readable kind, the module that raised it,
/// and the residual that tripped the check (NaN when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string what_arg,
        double residual = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(std::string(error_kind_name(kind)) + " [" + module +
                           "]: " + what_arg),
        kind_(kind),
        module_(std::move(module)),
        residual_(residual) {}

  ErrorKind kind() const { return kind_; }
  const std::string& module() const { return module_; }
  double residual() const { return residual_; }

 private:
  ErrorKind kind_;
  std::string module_;
  double residual_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& module,
                               const std::string& msg,
                               double residual = std::numeric_limits<double>::quiet_NaN()) {
  throw Error(kind, module, msg, residual);
}

}  // namespace cheegerlab
