#pragma once

#include <stdexcept>
#include <string>

namespace mtirl {

enum class ErrorCode {
  invalid_input,
  dimension_mismatch,
  suboptimal_demonstration,
  numerical,
  coverage_infeasible,
  undefined_informativeness,
  exhausted,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mtirl
