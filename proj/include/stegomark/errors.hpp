#pragma once

#include <stdexcept>
#include <string>

namespace stegomark {

enum class ErrorCode {
  NonOctetLength,
  PayloadTooLarge,
  TruncatedFrame,
  CorruptFrame,
  InsufficientCapacity,
  UnknownScheme,
  NoWatermarkFound,
  NoInsertionPoint,
  ConfigMismatch,
  NotWatermarked,
  MixedExperiments,
  TransportError,
  OversizePrompt,
  EmptySource,
  InvalidInput,
  IoError,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

const char *error_code_name(ErrorCode code);

}  // namespace stegomark
