#include "mobilecc/routing.hpp"

#include "mobilecc/error.hpp"

namespace mobilecc {

namespace {

std::optional<NodeId> lowest_level_neighbor(const NodeState& self, bool ignore_availability,
                                            std::optional<NodeId> avoid) {
  std::optional<NodeId> best;
  int best_level = 0;
  for (const auto& entry : self.neighbors) {
    if (!entry.hop || *entry.hop >= *self.level) continue;
    if (!ignore_availability && !entry.available) continue;
    if (avoid && entry.neighbor == *avoid) continue;
    // Entries are sorted by id, so strict comparison keeps the smallest id.
    if (!best || *entry.hop < best_level) {
      best = entry.neighbor;
      best_level = *entry.hop;
    }
  }
  return best;
}

}  // namespace

RouteDecision next_hop(NodeId sender, const Network& network, const OverrideTable& overrides,
                       bool ignore_availability) {
  if (!network.contains(sender)) throw Error(Errc::invalid_node, "unknown sender " + to_string(sender));
  const auto& self = network.node(sender);
  if (!self.radio_on || !self.level || self.is_sink()) return {};

  std::optional<NodeId> avoid;
  if (const auto* o = overrides.find(sender)) {
    if (const auto* entry = self.find_neighbor(o->next_hop)) {
      if (ignore_availability || entry->available) return {o->next_hop};
    }
    avoid = o->avoid;
  }
  return {lowest_level_neighbor(self, ignore_availability, avoid)};
}

void set_availability(Network& network, NodeId node, bool flag) {
  auto& n = network.node(node);
  n.available = n.is_sink() ? true : flag;
}

}  // namespace mobilecc
