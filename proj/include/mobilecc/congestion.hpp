#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mobilecc/topology.hpp"

namespace mobilecc {

struct CongestionMessage {
  NodeId congested{};
  int level = 0;
  double recv_per_period = 0.0;
  double fwd_per_period = 0.0;
  std::uint64_t recv_count = 0;
  std::uint64_t fwd_count = 0;
  double window_start = 0.0;  // seconds; t0 of the additional-resources rate
  double detected_at = 0.0;   // seconds
  std::vector<NeighborEntry> neighbors;
};

struct ContributorProfile {
  NodeId node{};
  double sending_rate = 0.0;  // packets per second into the congested node

  friend bool operator==(const ContributorProfile&, const ContributorProfile&) = default;
};

/// Packets per second the congested node receives but cannot forward:
/// (recv - tran) / (t - t0). A negative deficit is reported as zero.
double additional_resources(std::uint64_t recv, std::uint64_t tran, double t, double t0);

inline double additional_resources(const CongestionMessage& cm) {
  return additional_resources(cm.recv_count, cm.fwd_count, cm.detected_at, cm.window_start);
}

struct DetectionParams {
  std::size_t threshold = 6;         // queued data packets
  double sample_period = 1.0;        // seconds
  std::uint32_t cooldown_periods = 10;
  bool lifetime_window = false;      // t0 = first transmission, counters never reset
};

struct DetectorState {
  std::optional<SimTime> last_cm;
};

/// Evaluated at a sample tick. Emits a message when the queue holds at least
/// `threshold` data packets, the window deficit is positive and the node is
/// out of cooldown. Never fires for the sink or a radio-off mobile.
std::optional<CongestionMessage> detect(const NodeState& node, DetectorState& state, SimTime now,
                                        const DetectionParams& params);

/// Upstream neighbors that fed the congested node during the window, by
/// descending rate then ascending id. Throws spurious_cm when there are none.
std::vector<ContributorProfile> contributors(const CongestionMessage& cm, const Network& network);

}  // namespace mobilecc
