#pragma once

#include <stdexcept>
#include <string>

namespace duelgrad {

enum class ErrorCode {
  kInvalidDimension,
  kDimensionMismatch,
  kInvalidArgument,
  kInvalidMean,
  kNotApplicable,
  kInadmissible,
  kUseSignTuning,
  kCounterOverflow,
  kConfig,
  kIo,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so callers (and the CLI's
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace duelgrad
