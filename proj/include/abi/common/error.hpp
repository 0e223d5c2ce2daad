#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abi {

enum class ErrorKind {
  InvalidArgument,
  InvalidData,
  InvalidState,
  InvalidConfig,
  TargetNotReached,
  TrainingFailure,
  DegenerateData,
  PlacementFailure,
  PermissionDenied,
  NotVisible,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every engine failure. The kind is stable and is
/// what the wire protocols report back to clients.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace abi
