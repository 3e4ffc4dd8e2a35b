#include "tinv/errors.hpp"

namespace tinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingBar: return "MissingBar";
    case ErrorCode::DuplicateBar: return "DuplicateBar";
    case ErrorCode::VolumeExceedsMarket: return "VolumeExceedsMarket";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ZeroVolatility: return "ZeroVolatility";
    case ErrorCode::ParticipationExceedsOne: return "ParticipationExceedsOne";
    case ErrorCode::DegenerateCost: return "DegenerateCost";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::NonPositiveMean: return "NonPositiveMean";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::UnreadableFile: return "UnreadableFile";
    case ErrorCode::UnwritableDir: return "UnwritableDir";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::BadNumber: return "BadNumber";
    case ErrorCode::NonPositiveVolume: return "NonPositiveVolume";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::BadSide: return "BadSide";
    case ErrorCode::BadDate: return "BadDate";
    case ErrorCode::OHLCViolation: return "OHLCViolation";
    case ErrorCode::NonPositiveField: return "NonPositiveField";
    case ErrorCode::UnknownSector: return "UnknownSector";
    case ErrorCode::UnknownCap: return "UnknownCap";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
  }
  return "Unknown";
}

}  // namespace tinv
