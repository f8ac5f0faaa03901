#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoax {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  Io,
  UnknownPostId,
  DuplicatePostId,
  OverlappingTrainingSets,
  EmptyTrainingSet,
  NonFiniteLoss,
  EmptyEvaluationSet,
  FractionTooSmall,
  TooFewPosts,
  SinglePage,
  InvalidParams,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is what the C API reports;
/// the message carries the offending value (line number, id, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hoax
