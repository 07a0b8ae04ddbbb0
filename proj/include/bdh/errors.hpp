#pragma once

#include <stdexcept>

namespace bdh {

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct insufficient_data : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct limit_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bdh
