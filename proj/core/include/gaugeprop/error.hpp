#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaugeprop {

enum class ErrorCode {
  InvalidArgument,
  RefinementOverflow,
  NonFiniteValue,
  NoConvergence,
  DegenerateTime,
  TurningPoint,
  SupportOverflow,
  DegenerateFit,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying one of the library's error codes. The message is
/// prefixed with the code name so diagnostics stay greppable.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace gaugeprop
