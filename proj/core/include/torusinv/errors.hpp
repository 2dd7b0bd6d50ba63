#pragma once

#include <stdexcept>
#include <string>

namespace torusinv {

enum class ErrorCode {
  NotSquarefree,
  DegenerateTraceForm,
  NotSemiMagic,
  NotAGroup,
  SingularMatrix,
  BadIdempotents,
  NumericallyIndeterminate,
  DegreeTooLarge,
  RepeatedRoots,
  RootResidualTooLarge,
  GaloisSpecRequired,
  GaloisSpecInvalid,
  TauNotInGalois,
  ReconstructionFailed,
  PreconditionsFailed,
  NotAnOrder,
  DegenerateQ,
  NotHermitian,
  NotPositive,
  ZeroEntropy,
  DegenerateForm,
  DNotSquarefree,
  InputParseError,
  SchemaMismatch,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace torusinv
