#pragma once

#include <cstdint>

#include "mobilecc/node_id.hpp"

namespace mobilecc {

/// Simulation time in integer nanoseconds.
using SimTime = std::int64_t;

inline constexpr SimTime kNanosPerSecond = 1'000'000'000;

constexpr SimTime seconds_to_sim(double s) { return static_cast<SimTime>(s * 1e9 + 0.5); }
constexpr double sim_to_seconds(SimTime t) { return static_cast<double>(t) / 1e9; }

struct Packet {
  std::uint64_t uid = 0;
  NodeId source{};
  SimTime created_at = 0;
  std::uint32_t hops = 0;
  std::uint32_t size_bytes = 128;
  std::uint32_t retries = 0;
  // Congestion messages ride the data path in a reserved slot.
  bool control = false;
  std::uint32_t cm_index = 0;
};

}  // namespace mobilecc
