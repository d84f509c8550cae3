#include "ftp/error.hpp"

namespace ftp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::InvalidScene: return "InvalidScene";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::SolutionInsideDisk: return "SolutionInsideDisk";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::CalledOnAbsorbed: return "CalledOnAbsorbed";
    case ErrorCode::AbsorbedWeights: return "AbsorbedWeights";
    case ErrorCode::DegenerateAngles: return "DegenerateAngles";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::GeometryPreconditionViolated: return "GeometryPreconditionViolated";
    case ErrorCode::MissingRatio: return "MissingRatio";
    case ErrorCode::ShiftedConfigInvalid: return "ShiftedConfigInvalid";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::StepTooSmall: return "StepTooSmall";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
  }
  return "Unknown";
}

}  // namespace ftp
