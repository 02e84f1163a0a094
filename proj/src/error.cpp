#include "mobilecc/error.hpp"

namespace mobilecc {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_radius: return "invalid radius";
    case Errc::degenerate_direction: return "degenerate direction";
    case Errc::invalid_input: return "invalid input";
    case Errc::invalid_node: return "invalid node";
    case Errc::pool_exhausted: return "mobile pool exhausted";
    case Errc::invalid_window: return "invalid window";
    case Errc::spurious_cm: return "spurious congestion message";
    case Errc::configuration: return "configuration error";
    case Errc::invalid_aggregation: return "invalid aggregation";
    case Errc::parse: return "parse error";
    case Errc::io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace mobilecc
