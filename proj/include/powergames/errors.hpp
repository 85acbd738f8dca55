#pragma once

#include <stdexcept>
#include <string>

namespace powergames {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error { using Error::Error; };
struct NegativeValue : Error { using Error::Error; };
struct ProbSumInvalid : Error { using Error::Error; };
struct SizeOverflow : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct VisibilityMismatch : Error { using Error::Error; };
struct ZeroDirectGain : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct RestartLimitExceeded : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace powergames
