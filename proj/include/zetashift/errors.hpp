#pragma once

#include <stdexcept>

namespace zetashift {

// Argument violates a documented precondition (CLI exit code 2).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input leaves the supported numeric range: poles, ordinates beyond the
// evaluation window, shift overflow (CLI exit code 3).
class numeric_range_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace zetashift
