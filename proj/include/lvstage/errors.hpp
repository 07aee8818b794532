#ifndef LVSTAGE_ERRORS_HPP
#define LVSTAGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lvstage {

// Error taxonomy shared with the C API (codes must stay in sync with
// lvs_status in lvstage.h).
enum class ErrorCode : int {
  InvalidArgument = 1,
  ParseError = 2,
  MplusViolation = 3,
  SingularSystem = 4,
  NonConvergence = 5,
  ExtinctProfile = 6,
  BracketFailure = 7,
  CouplingSignError = 8,
  NotASteadyState = 9,
  InconsistentSigns = 10,
  ContinuumCheckFailed = 11,
  OrderViolation = 12,
  PositivityBreach = 13,
  MismatchedOutcome = 14,
  NumericFailure = 15,
  Internal = 17,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace lvstage

#endif
