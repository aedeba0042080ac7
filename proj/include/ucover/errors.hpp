#pragma once

#include <stdexcept>
#include <string>

namespace ucover {

// Process exit status used by the command-line tool. Documented in README.
enum class ExitCode : int {
  ok = 0,
  usage = 1,
  invalid_input = 2,
  not_connected = 3,
  group_too_large = 4,
  not_effective = 5,
  unsupported = 6,
  oracle_mismatch = 7,
  twisting = 8,
  internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

#define UCOVER_ERROR(Name, Code)                                     \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(what, Code) {}    \
  };

UCOVER_ERROR(ContractViolation, ExitCode::internal)
UCOVER_ERROR(InternalConsistencyError, ExitCode::internal)
UCOVER_ERROR(ParseError, ExitCode::invalid_input)
UCOVER_ERROR(ValidationError, ExitCode::invalid_input)
UCOVER_ERROR(NotConnected, ExitCode::not_connected)
UCOVER_ERROR(GroupTooLargeOrInfinite, ExitCode::group_too_large)
UCOVER_ERROR(NilpotencyFailure, ExitCode::not_effective)
UCOVER_ERROR(CoverNotEffective, ExitCode::not_effective)
UCOVER_ERROR(NotEffective, ExitCode::not_effective)
UCOVER_ERROR(Unsupported, ExitCode::unsupported)
UCOVER_ERROR(OracleMismatch, ExitCode::oracle_mismatch)
UCOVER_ERROR(TwistingViolation, ExitCode::twisting)
UCOVER_ERROR(NotSurjective, ExitCode::twisting)

#undef UCOVER_ERROR

}  // namespace ucover
