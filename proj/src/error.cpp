#include "hoax/error.hpp"

namespace hoax {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::UnknownPostId: return "UnknownPostId";
    case ErrorCode::DuplicatePostId: return "DuplicatePostId";
    case ErrorCode::OverlappingTrainingSets: return "OverlappingTrainingSets";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::EmptyEvaluationSet: return "EmptyEvaluationSet";
    case ErrorCode::FractionTooSmall: return "FractionTooSmall";
    case ErrorCode::TooFewPosts: return "TooFewPosts";
    case ErrorCode::SinglePage: return "SinglePage";
    case ErrorCode::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

}  // namespace hoax
