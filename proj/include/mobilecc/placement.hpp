#pragma once

#include <vector>

#include "mobilecc/congestion.hpp"
#include "mobilecc/geometry.hpp"
#include "mobilecc/topology.hpp"

namespace mobilecc {

struct PlacementPlan {
  Point target;
  std::vector<NodeId> served;
  NodeId next_hop_hint{};  // where the mobile forwards: an existing node, the next chain mobile, or the sink
  NodeId mobile{};
  NodeId congested{};
};

inline constexpr std::size_t kMaxSubsetSize = 6;
inline constexpr std::size_t kMaxContributors = 20;

/// Relief placement for one congested node: a single contributor whose rate
/// covers the deficit if one works, otherwise the smallest subset (2..6)
/// whose common point has a non-congested forwarder. Empty when nothing is
/// feasible. Throws pool_exhausted when no mobile is idle.
std::vector<PlacementPlan> plan_dynamic(const CongestionMessage& cm, const Network& network);

/// Same first placement (the forwarder requirement only binds when the
/// first mobile already reaches the sink), then mobiles every tx_range
/// along the straight line to the sink. Throws pool_exhausted when the pool
/// cannot cover the whole chain.
std::vector<PlacementPlan> plan_direct(const CongestionMessage& cm, const Network& network);

/// Forwarder for a mobile at `target` relieving a node at `congested_level`:
/// the sink when in range, else the radio-on available node with the lowest
/// level (then id) strictly below that level. Empty if none.
std::optional<NodeId> find_forwarder(Point target, int congested_level, const Network& network);

}  // namespace mobilecc
