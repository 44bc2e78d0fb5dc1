#pragma once

#include <stdexcept>
#include <string>

namespace naimark {

enum class ErrorKind {
  InvalidInput,
  NotIsometric,
  PadBoundTooSmall,
  DegenerateInput,
  NotUnitNorm,
  TooLarge,
  ScalingDegenerate,
  NotAFrame,
  ParseError,
};

inline const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::PadBoundTooSmall: return "PadBoundTooSmall";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotUnitNorm: return "NotUnitNorm";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ScalingDegenerate: return "ScalingDegenerate";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

/// Library error carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace naimark
