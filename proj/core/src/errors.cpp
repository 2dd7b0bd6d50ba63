#include "torusinv/errors.hpp"

namespace torusinv {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::DegenerateTraceForm: return "DegenerateTraceForm";
    case ErrorCode::NotSemiMagic: return "NotSemiMagic";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::BadIdempotents: return "BadIdempotents";
    case ErrorCode::NumericallyIndeterminate: return "NumericallyIndeterminate";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::RepeatedRoots: return "RepeatedRoots";
    case ErrorCode::RootResidualTooLarge: return "RootResidualTooLarge";
    case ErrorCode::GaloisSpecRequired: return "GaloisSpecRequired";
    case ErrorCode::GaloisSpecInvalid: return "GaloisSpecInvalid";
    case ErrorCode::TauNotInGalois: return "TauNotInGalois";
    case ErrorCode::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorCode::PreconditionsFailed: return "PreconditionsFailed";
    case ErrorCode::NotAnOrder: return "NotAnOrder";
    case ErrorCode::DegenerateQ: return "DegenerateQ";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroEntropy: return "ZeroEntropy";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::DNotSquarefree: return "DNotSquarefree";
    case ErrorCode::InputParseError: return "InputParseError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
  }
  return "Unknown";
}

}  // namespace torusinv
