#pragma once

#include <stdexcept>
#include <string>

namespace ivmine {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidAtom,
  kLanguageMismatch,
  kGridMismatch,
  kEmptyInterval,
  kPointExpected,
  kInvalidRepresentation,
  kUnknownObject,
  kGuardExceeded,
  kParse,
  kIo,
};

// All library failures are reported through this exception type; the code
// lets the CLI map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ivmine
