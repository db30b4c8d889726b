#pragma once

#include <stdexcept>
#include <string>

namespace augsos {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Io,
  GroupMismatch,
  ShapeMismatch,
  NormalizationBudgetExceeded,
  OrderUndecided,
  InvalidGroup,
  InvalidWitness,
  NotInAugmentationIdeal,
  InvalidTorsion,
  WitnessRequired,
  UnsupportedModel,
  NotInPower,
  MalformedCertificate,
  DiagonalUncertified,
  BasisTooLarge,
  SearchFailed,
  NotPsd,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace augsos
