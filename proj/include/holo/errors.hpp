#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace holo {

// Base for every failure the pipeline can report. `kind` is the stable
// machine-readable tag used in CLI error objects; `exit_code` follows the
// CLI convention (2 = configuration misuse, 3 = numerical failure).
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg, int exit_code = 3)
      : std::runtime_error(msg), kind_(std::move(kind)), exit_code_(exit_code) {}

  const std::string& kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return exit_code_; }

private:
  std::string kind_;
  int exit_code_;
};

#define HOLO_ERROR_CLASS(Name, code)                                     \
  class Name : public Error {                                            \
  public:                                                                \
    explicit Name(const std::string& msg) : Error(#Name, msg, code) {}   \
  };

HOLO_ERROR_CLASS(NotUnitary, 3)
HOLO_ERROR_CLASS(NotHermitian, 3)
HOLO_ERROR_CLASS(ConvergenceFailure, 3)
HOLO_ERROR_CLASS(SingularOverlap, 3)
HOLO_ERROR_CLASS(BandCrossing, 3)
HOLO_ERROR_CLASS(LoopNotClosed, 3)
HOLO_ERROR_CLASS(BlockMismatch, 3)
HOLO_ERROR_CLASS(GapClosed, 3)
HOLO_ERROR_CLASS(DimensionMismatch, 3)
HOLO_ERROR_CLASS(ThetaResolutionFailure, 3)
HOLO_ERROR_CLASS(UnsupportedModel, 2)
HOLO_ERROR_CLASS(UnsupportedLoop, 2)
HOLO_ERROR_CLASS(ConfigError, 2)

#undef HOLO_ERROR_CLASS

}  // namespace holo
