#pragma once

#include <stdexcept>
#include <string>

namespace mobilecc {

enum class Errc {
  invalid_radius,
  degenerate_direction,
  invalid_input,
  invalid_node,
  pool_exhausted,
  invalid_window,
  spurious_cm,
  configuration,
  invalid_aggregation,
  parse,
  io,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mobilecc
