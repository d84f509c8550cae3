#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ftp {

enum class ErrorCode {
  InvalidConfiguration,
  InvalidScene,
  InvalidArgument,
  DegenerateProjection,
  DegenerateAngle,
  SolutionInsideDisk,
  NonConvergence,
  CalledOnAbsorbed,
  AbsorbedWeights,
  DegenerateAngles,
  SingularSystem,
  GeometryPreconditionViolated,
  MissingRatio,
  ShiftedConfigInvalid,
  PreconditionViolated,
  Underdetermined,
  StepTooSmall,
  StepTooLarge,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as an ftp::Error; the code is what the
// CLI prints in its ERROR:<code>:<detail> line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ftp
