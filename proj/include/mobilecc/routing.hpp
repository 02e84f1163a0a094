#pragma once

#include <map>
#include <optional>

#include "mobilecc/topology.hpp"

namespace mobilecc {

struct RouteDecision {
  std::optional<NodeId> next_hop;  // empty means stall

  bool stalled() const { return !next_hop.has_value(); }
  friend bool operator==(const RouteDecision&, const RouteDecision&) = default;
};

struct RouteOverride {
  NodeId sender{};
  NodeId next_hop{};            // a mobile node, or the sink at the end of a chain
  std::optional<NodeId> avoid;  // the congested node the sender is diverted away from
};

class OverrideTable {
 public:
  /// Install or replace the override for `o.sender`. Overrides are never retracted.
  void activate(const RouteOverride& o) { active_[o.sender] = o; }
  const RouteOverride* find(NodeId sender) const {
    auto it = active_.find(sender);
    return it == active_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return active_.size(); }

 private:
  std::map<NodeId, RouteOverride> active_;
};

/// Lowest-level available neighbor strictly below the sender's level,
/// smallest id on ties. An active override wins when its target is a
/// reachable, available neighbor; otherwise the sender falls back to the
/// ordinary rule without its avoided node. Control traffic ignores
/// availability flags.
RouteDecision next_hop(NodeId sender, const Network& network, const OverrideTable& overrides,
                       bool ignore_availability = false);

/// Set a node's own availability flag. Neighbors see the change at the next
/// propagate_availability. The sink never refuses traffic.
void set_availability(Network& network, NodeId node, bool flag);

}  // namespace mobilecc
