#include "mobilecc/topology.hpp"

#include <algorithm>
#include <queue>

#include "mobilecc/error.hpp"

namespace mobilecc {

const NeighborEntry* NodeState::find_neighbor(NodeId other) const {
  auto it = std::lower_bound(neighbors.begin(), neighbors.end(), other,
                             [](const NeighborEntry& e, NodeId id) { return e.neighbor < id; });
  return it != neighbors.end() && it->neighbor == other ? &*it : nullptr;
}

NeighborEntry* NodeState::find_neighbor(NodeId other) {
  return const_cast<NeighborEntry*>(std::as_const(*this).find_neighbor(other));
}

void Network::add_node(NodeState node) {
  if (raw(node.id) == 0) throw Error(Errc::invalid_input, "node ids must be positive");
  if (index_.contains(node.id))
    throw Error(Errc::invalid_input, "duplicate node id " + to_string(node.id));
  if (node.kind == NodeKind::sink && sink_slot_)
    throw Error(Errc::invalid_input, "more than one sink");
  if (!(node.tx_range > 0.0)) throw Error(Errc::invalid_radius, "tx_range must be positive");

  const auto slot = static_cast<std::uint32_t>(nodes_.size());
  if (node.kind == NodeKind::sink) {
    sink_slot_ = slot;
    node.level = 0;
  }
  if (node.kind == NodeKind::mobile) {
    node.radio_on = false;
    node.level.reset();
    pool_.push_back(node.id);
  }
  index_.emplace(node.id, slot);
  nodes_.push_back(std::move(node));
  adjacency_.assign(nodes_.size() * nodes_.size(), 0);
}

std::uint32_t Network::slot_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(Errc::invalid_node, "unknown node " + to_string(id));
  return it->second;
}

NodeId Network::sink() const {
  if (!sink_slot_) throw Error(Errc::invalid_input, "network has no sink");
  return nodes_[*sink_slot_].id;
}

bool Network::in_pool(NodeId id) const {
  return std::find(pool_.begin(), pool_.end(), id) != pool_.end();
}

bool Network::reserved(NodeId id) const {
  return std::find(reserved_.begin(), reserved_.end(), id) != reserved_.end();
}

NodeId Network::reserve_mobile() {
  if (pool_.empty()) throw Error(Errc::pool_exhausted, "no idle mobile left");
  const NodeId id = pool_.front();
  pool_.pop_front();
  reserved_.push_back(id);
  return id;
}

std::vector<NodeId> Network::peek_pool(std::size_t count) const {
  if (count > pool_.size()) throw Error(Errc::pool_exhausted, "not enough idle mobiles");
  return {pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(count)};
}

void build_neighbor_tables(Network& network) {
  auto& nodes = network.nodes_;
  const std::size_t n = nodes.size();
  network.adjacency_.assign(n * n, 0);

  for (std::uint32_t a = 0; a < n; ++a) {
    auto& self = nodes[a];
    std::vector<NeighborEntry> fresh;
    if (self.radio_on) {
      for (std::uint32_t b = 0; b < n; ++b) {
        const auto& other = nodes[b];
        if (a == b || !other.radio_on) continue;
        if (!in_range(self.position, other.position, self.tx_range)) continue;
        network.adjacency_[static_cast<std::size_t>(a) * n + b] = 1;
        NeighborEntry entry{other.id, b, other.level, 0, other.is_sink() || other.available};
        if (const auto* old = self.find_neighbor(other.id)) {
          entry.packets_received = old->packets_received;
          entry.available = old->available;
        }
        fresh.push_back(entry);
      }
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const NeighborEntry& x, const NeighborEntry& y) { return x.neighbor < y.neighbor; });
    self.neighbors = std::move(fresh);
  }
}

void compute_levels(Network& network) {
  auto nodes = network.nodes();
  for (auto& node : nodes) node.level.reset();
  if (!network.has_sink()) return;

  const std::uint32_t sink = network.slot_of(network.sink());
  nodes[sink].level = 0;
  std::queue<std::uint32_t> frontier;
  frontier.push(sink);
  while (!frontier.empty()) {
    const auto cur = frontier.front();
    frontier.pop();
    for (const auto& entry : nodes[cur].neighbors) {
      auto& next = nodes[entry.slot];
      if (next.level || !next.radio_on) continue;
      next.level = *nodes[cur].level + 1;
      frontier.push(entry.slot);
    }
  }
  for (auto& node : nodes)
    for (auto& entry : node.neighbors) entry.hop = nodes[entry.slot].level;
}

void admit_mobile(Network& network, NodeId id, Point position) {
  auto pool_it = std::find(network.pool_.begin(), network.pool_.end(), id);
  auto res_it = std::find(network.reserved_.begin(), network.reserved_.end(), id);
  if (pool_it != network.pool_.end()) {
    network.pool_.erase(pool_it);
  } else if (res_it != network.reserved_.end()) {
    network.reserved_.erase(res_it);
  } else {
    throw Error(Errc::pool_exhausted, "mobile " + to_string(id) + " is neither pooled nor reserved");
  }
  auto& node = network.node(id);
  node.position = position;
  node.radio_on = true;
  node.available = true;
  build_neighbor_tables(network);
  compute_levels(network);
}

void propagate_availability(Network& network) {
  auto nodes = network.nodes();
  for (auto& node : nodes) {
    for (auto& entry : node.neighbors) {
      const auto& other = nodes[entry.slot];
      entry.available = other.is_sink() || other.available;
    }
  }
}

}  // namespace mobilecc
