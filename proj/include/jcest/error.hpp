#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jcest {

enum class ErrorCode {
  DegenerateGamma0,
  TruncationTooSmall,
  InvalidRate,
  InvalidArgument,
  SinVanishes,
  SingularSLD,
  UnsupportedCombination,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// the CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateGamma0: return "DegenerateGamma0";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::InvalidRate: return "InvalidRate";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SinVanishes: return "SinVanishes";
    case ErrorCode::SingularSLD: return "SingularSLD";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace jcest
