#pragma once

#include <string>
#include <vector>

#include "mobilecc/topology.hpp"

namespace testsupport {

using namespace mobilecc;

struct Spec {
  std::uint32_t id;
  NodeKind kind;
  double x;
  double y;
  bool source = false;
};

inline NodeState make_node(const Spec& s, double range = 25.0, std::size_t queue = 8) {
  NodeState n;
  n.id = NodeId{s.id};
  n.kind = s.kind;
  n.position = {s.x, s.y};
  n.tx_range = range;
  n.is_source = s.source;
  n.queue_capacity = queue;
  return n;
}

inline Network make_network(const std::vector<Spec>& specs, double range = 25.0) {
  Network net;
  for (const auto& s : specs) net.add_node(make_node(s, range));
  build_neighbor_tables(net);
  compute_levels(net);
  return net;
}

inline std::string scenario_path(const std::string& name) {
  return std::string(MOBILECC_SCENARIO_DIR) + "/" + name + ".scn";
}

}  // namespace testsupport
