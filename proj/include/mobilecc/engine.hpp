#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "mobilecc/config.hpp"
#include "mobilecc/metrics.hpp"
#include "mobilecc/placement.hpp"
#include "mobilecc/routing.hpp"
#include "mobilecc/topology.hpp"

namespace mobilecc {

// Same-time events run in this order.
enum class EventKind : std::uint8_t {
  generate,
  tx_attempt,
  receive,
  drop,
  sample_tick,
  mobile_arrive,
  congestion_msg_arrive,
};

std::string_view to_string(EventKind kind);

/// One line of the event trace. `detail` carries kind-specific fields.
struct TraceEvent {
  SimTime time = 0;
  EventKind kind = EventKind::generate;
  NodeId node{};
  std::uint64_t uid = 0;
  std::string detail;
};

using TraceSink = std::function<void(const TraceEvent&)>;

/// Format: "<seconds> <kind> <node> <uid>[ <detail>]".
std::string format_trace(const TraceEvent& e);

/// Single-threaded discrete-event run over one network. The network is
/// copied in; `network()` exposes the end state.
class Simulator {
 public:
  Simulator(Network network, SimConfig config, TraceSink trace = {});
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  RunMetrics run();

  const Network& network() const;
  const OverrideTable& overrides() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Run one simulation. Throws Errc::configuration before any event when the
/// config or the network is invalid.
RunMetrics run(const Network& network, const SimConfig& config, TraceSink trace = {});

}  // namespace mobilecc
