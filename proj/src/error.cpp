// Copyright 2026 The CEG Reward Authors
// SPDX-License-Identifier: Apache-2.0

#include "ceg/error.hpp"

namespace ceg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyConcept: return "EmptyConcept";
    case ErrorCode::InvalidQuorum: return "InvalidQuorum";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::CyclicGraph: return "CyclicGraph";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidCeg: return "InvalidCeg";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::InvalidReward: return "InvalidReward";
    case ErrorCode::RatioOverflow: return "RatioOverflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return ErrorClass::Input;
    case ErrorCode::CyclicGraph:
      return ErrorClass::Cycle;
    case ErrorCode::ProviderUnavailable:
      return ErrorClass::Provider;
    case ErrorCode::Internal:
      return ErrorClass::Internal;
    default:
      return ErrorClass::Precondition;
  }
}

nlohmann::json Error::to_json() const {
  return {{"code", std::string(to_string(code_))}, {"message", what()}, {"detail", detail_}};
}

}  // namespace ceg
