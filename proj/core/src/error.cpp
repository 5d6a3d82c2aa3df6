#include "ferrohyst/error.hpp"

namespace ferrohyst {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::CutoffViolation: return "cutoff-violation";
    case ErrorCode::InvalidDensity: return "invalid-density";
    case ErrorCode::InvalidCoefficient: return "invalid-coefficient";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::ShapeDegeneracy: return "shape-degeneracy";
    case ErrorCode::StepDivergence: return "step-divergence";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ferrohyst
