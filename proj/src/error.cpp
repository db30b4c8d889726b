#include "augsos/error.hpp"

namespace augsos {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NormalizationBudgetExceeded: return "NormalizationBudgetExceeded";
    case ErrorCode::OrderUndecided: return "OrderUndecided";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::NotInAugmentationIdeal: return "NotInAugmentationIdeal";
    case ErrorCode::InvalidTorsion: return "InvalidTorsion";
    case ErrorCode::WitnessRequired: return "WitnessRequired";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::NotInPower: return "NotInPower";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::DiagonalUncertified: return "DiagonalUncertified";
    case ErrorCode::BasisTooLarge: return "BasisTooLarge";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace augsos
