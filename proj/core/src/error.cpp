#include "gaugeprop/error.hpp"

namespace gaugeprop {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RefinementOverflow: return "RefinementOverflow";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateTime: return "DegenerateTime";
    case ErrorCode::TurningPoint: return "TurningPoint";
    case ErrorCode::SupportOverflow: return "SupportOverflow";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace gaugeprop
