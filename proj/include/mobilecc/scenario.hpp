#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobilecc/config.hpp"
#include "mobilecc/geometry.hpp"
#include "mobilecc/node_id.hpp"
#include "mobilecc/topology.hpp"

namespace mobilecc {

struct NodeSpec {
  NodeId id{};
  NodeKind kind = NodeKind::fixed;
  Point position;
  bool source = false;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

// Uniform grid deployment: `nodes` cells (sink included) drawn from a
// rows x cols lattice, sink in the upper-right corner region, sources drawn
// with `source_probability` from the lower-left region, `pool` mobiles
// parked next to the sink.
struct GeneratorSpec {
  std::uint32_t rows = 10;
  std::uint32_t cols = 10;
  double spacing = 15.0;
  std::uint32_t nodes = 50;
  double source_probability = 0.5;
  double source_region = 0.4;  // fraction of each axis from the lower-left corner
  double sink_region = 0.2;    // fraction of each axis from the upper-right corner
  std::uint32_t pool = 12;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name;
  std::vector<NodeSpec> nodes;
  std::optional<GeneratorSpec> generator;
  std::vector<double> rates;  // default sweep, aggregate packets/s
  SimConfig defaults;

  std::size_t source_count() const;
  std::size_t pool_size() const;
};

/// Parse the scenario grammar (see README). Errors carry the line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Deterministic node set for a generator spec.
std::vector<NodeSpec> generate_nodes(const GeneratorSpec& spec);

/// Network with tables and levels built; mobiles parked in the pool.
Network build_network(const Scenario& scenario);

}  // namespace mobilecc
