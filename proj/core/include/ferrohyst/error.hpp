#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ferrohyst {

enum class ErrorCode {
  InvalidParameter,
  CutoffViolation,
  InvalidDensity,
  InvalidCoefficient,
  OutOfRange,
  ShapeDegeneracy,
  StepDivergence,
  NoConvergence,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ferrohyst
