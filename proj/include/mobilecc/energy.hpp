#pragma once

#include <cstdint>

namespace mobilecc {

class Network;

/// Timer ticks per second of the emulated mote.
inline constexpr std::uint64_t kTicksPerSecond = 32768;

struct EnergyLedger {
  std::uint64_t transmit_ticks = 0;
  std::uint64_t listen_ticks = 0;
  std::uint64_t cpu_ticks = 0;
  std::uint64_t lpm_ticks = 0;

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;
};

// Supply currents in mA at 3 V.
inline constexpr double kTransmitMilliAmps = 19.5;
inline constexpr double kListenMilliAmps = 21.8;
inline constexpr double kCpuMilliAmps = 1.8;
inline constexpr double kLpmMilliAmps = 0.0545;
inline constexpr double kSupplyVolts = 3.0;

enum class EnergyScale {
  ticks_per_second,  // divide by 32768: mA * V * s = mJ
  literal,           // "/4096*8" evaluated left to right; 64x the physical value
};

/// Energy of one node in millijoules.
double node_energy(const EnergyLedger& ledger, EnergyScale scale = EnergyScale::ticks_per_second);

/// Sum of node_energy over every node, sink and mobiles included.
double total_energy(const Network& network, EnergyScale scale = EnergyScale::ticks_per_second);

/// Whole ticks elapsed in `ns` nanoseconds (floor).
constexpr std::uint64_t ns_to_ticks(std::int64_t ns) {
  return ns <= 0 ? 0 : static_cast<std::uint64_t>(ns) * kTicksPerSecond / 1'000'000'000ULL;
}

}  // namespace mobilecc
