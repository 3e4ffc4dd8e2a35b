#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tinv {

enum class ErrorCode {
  // join / model
  MissingBar,
  DuplicateBar,
  VolumeExceedsMarket,
  UnknownSymbol,
  // numerics
  ZeroVolatility,
  ParticipationExceedsOne,
  DegenerateCost,
  InsufficientPoints,
  SingularDesign,
  NonPositiveMean,
  InvalidConfig,
  // ingest, structural
  MissingHeader,
  UnreadableFile,
  UnwritableDir,
  // ingest, row level
  MalformedRow,
  BadNumber,
  NonPositiveVolume,
  NonPositivePrice,
  BadSide,
  BadDate,
  OHLCViolation,
  NonPositiveField,
  UnknownSector,
  UnknownCap,
  DuplicateSymbol,
};

std::string_view to_string(ErrorCode code) noexcept;

// Fatal error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Non-fatal, row-level finding. `row` is 1-based; 0 means "not tied to a row".
struct Diagnostic {
  std::size_t row = 0;
  ErrorCode code;
  std::string message;
};

}  // namespace tinv
