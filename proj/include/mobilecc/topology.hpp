#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mobilecc/energy.hpp"
#include "mobilecc/geometry.hpp"
#include "mobilecc/node_id.hpp"
#include "mobilecc/packet.hpp"

namespace mobilecc {

struct NeighborEntry {
  NodeId neighbor{};
  std::uint32_t slot = 0;  // dense index of the neighbor inside its Network
  std::optional<int> hop;
  std::uint64_t packets_received = 0;  // from this neighbor, current window
  bool available = true;
};

struct NodeCounters {
  std::uint64_t received = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t dropped = 0;
};

struct NodeState {
  NodeId id{};
  NodeKind kind = NodeKind::fixed;
  Point position;
  double tx_range = 25.0;
  std::optional<int> level;
  bool is_source = false;

  std::deque<Packet> queue;
  std::size_t queue_capacity = 8;
  std::size_t data_queued = 0;  // control packets occupy a reserved slot

  bool available = true;
  bool radio_on = true;

  EnergyLedger energy;
  NodeCounters counters;  // lifetime
  std::optional<SimTime> t0;

  // Detection window for the additional-resources rate.
  std::uint64_t window_received = 0;
  std::uint64_t window_transmitted = 0;
  SimTime window_start = 0;

  std::vector<NeighborEntry> neighbors;  // sorted by neighbor id

  bool is_sink() const { return kind == NodeKind::sink; }
  const NeighborEntry* find_neighbor(NodeId other) const;
  NeighborEntry* find_neighbor(NodeId other);
};

class Network {
 public:
  /// Insert a node; ids must be unique and there must be at most one sink.
  /// Mobile nodes start in the idle pool with their radio off.
  void add_node(NodeState node);

  std::size_t size() const { return nodes_.size(); }
  std::span<NodeState> nodes() { return nodes_; }
  std::span<const NodeState> nodes() const { return nodes_; }

  bool contains(NodeId id) const { return index_.contains(id); }
  std::uint32_t slot_of(NodeId id) const;
  NodeState& node(NodeId id) { return nodes_[slot_of(id)]; }
  const NodeState& node(NodeId id) const { return nodes_[slot_of(id)]; }
  NodeState& at(std::uint32_t slot) { return nodes_[slot]; }
  const NodeState& at(std::uint32_t slot) const { return nodes_[slot]; }

  NodeId sink() const;
  bool has_sink() const { return sink_slot_.has_value(); }
  const NodeState& sink_node() const { return nodes_[*sink_slot_]; }

  const std::deque<NodeId>& mobile_pool() const { return pool_; }
  bool in_pool(NodeId id) const;
  bool reserved(NodeId id) const;

  /// Take the next idle mobile off the pool; it stays radio-off until admitted.
  NodeId reserve_mobile();
  /// Ids the next `count` reservations would return, without reserving.
  std::vector<NodeId> peek_pool(std::size_t count) const;

  /// Radio adjacency between two radio-on nodes, by slot.
  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    return adjacency_[static_cast<std::size_t>(a) * nodes_.size() + b] != 0;
  }

 private:
  friend void build_neighbor_tables(Network&);
  friend void admit_mobile(Network&, NodeId, Point);

  std::vector<NodeState> nodes_;
  std::unordered_map<NodeId, std::uint32_t> index_;
  std::optional<std::uint32_t> sink_slot_;
  std::deque<NodeId> pool_;
  std::vector<NodeId> reserved_;
  std::vector<char> adjacency_;
};

/// Rebuild every neighbor table from positions; radio-off nodes are invisible.
/// Per-neighbor packet counters survive for links that persist.
void build_neighbor_tables(Network& network);

/// BFS hop count from the sink over radio-on nodes; refreshes the hop
/// column of every neighbor table.
void compute_levels(Network& network);

/// Place a pooled or reserved mobile at `position`, switch its radio on and
/// recompute tables and levels.
void admit_mobile(Network& network, NodeId id, Point position);

/// Copy every node's own availability flag into its neighbors' tables.
void propagate_availability(Network& network);

}  // namespace mobilecc
