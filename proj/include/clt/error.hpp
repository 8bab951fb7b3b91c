#pragma once

#include <stdexcept>
#include <string>

namespace clt {

// Error taxonomy shared by the library and the CLI exit-code mapping.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_input : error {
  using error::error;
};
struct invalid_state : error {
  using error::error;
};
struct precondition_violation : error {
  using error::error;
};
struct degenerate_input : error {
  using error::error;
};
struct invalid_oracle : error {
  using error::error;
};
struct out_of_scope : error {
  using error::error;
};

}  // namespace clt
