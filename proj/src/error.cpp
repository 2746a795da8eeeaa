#include "mtirl/error.hpp"

namespace mtirl {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid input";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::suboptimal_demonstration: return "suboptimal demonstration";
    case ErrorCode::numerical: return "numerical failure";
    case ErrorCode::coverage_infeasible: return "coverage infeasible";
    case ErrorCode::undefined_informativeness: return "undefined informativeness";
    case ErrorCode::exhausted: return "exhausted";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace mtirl
