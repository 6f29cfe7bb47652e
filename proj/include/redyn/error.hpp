#pragma once

#include <stdexcept>
#include <string>

namespace redyn {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NotUnitary,
  InvalidState,
  Parse,
  Io,
  Internal,
};

// Single exception type for the library; the code survives the trip across
// the C boundary as a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace redyn
