#include "abi/common/error.hpp"

namespace abi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidData: return "invalid-data";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::TargetNotReached: return "target-not-reached";
    case ErrorKind::TrainingFailure: return "training-failure";
    case ErrorKind::DegenerateData: return "degenerate-data";
    case ErrorKind::PlacementFailure: return "placement-failure";
    case ErrorKind::PermissionDenied: return "permission-denied";
    case ErrorKind::NotVisible: return "not-visible";
  }
  return "unknown";
}

}  // namespace abi
