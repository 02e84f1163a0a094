#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mobilecc/congestion.hpp"
#include "mobilecc/energy.hpp"

namespace mobilecc {

enum class Algorithm { baseline, dynamic, direct };

// Which concurrent transmissions spoil a reception: any transmitter within
// range of the receiver, or only those addressed to the same receiver.
enum class Interference { any_in_range, same_receiver };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SimConfig {
  double sim_time = 600.0;        // s
  std::size_t queue_len = 8;      // packets
  double tx_range = 25.0;         // m
  double channel_rate = 250000;   // bit/s
  double source_rate = 1.0;       // packets/s per source
  double sample_period = 1.0;     // s
  std::uint64_t seed = 1;
  double mobile_speed = 1.0;      // m/s
  Algorithm algorithm = Algorithm::baseline;

  std::uint32_t packet_bytes = 128;

  // Abstract CSMA: random backoff of [min, max] slots before every attempt;
  // a transmission becomes audible to carrier sense `cca_time` after it starts.
  // A collided packet goes back to the queue head and draws a fresh backoff.
  double slot_time = 320e-6;
  std::uint32_t backoff_min_slots = 1;
  std::uint32_t backoff_max_slots = 8;
  double cca_time = 128e-6;
  std::uint32_t max_retries = 5;

  std::size_t congestion_threshold = 6;
  std::uint32_t cooldown_periods = 10;
  bool lifetime_window = false;
  Interference interference = Interference::same_receiver;

  double cpu_charge = 1e-3;  // s of CPU time per processed event
  EnergyScale energy_scale = EnergyScale::ticks_per_second;

  /// Throws Errc::configuration on any non-positive or inconsistent field.
  void validate() const;

  double tx_duration() const { return packet_bytes * 8.0 / channel_rate; }
  DetectionParams detection() const {
    return {congestion_threshold, sample_period, cooldown_periods, lifetime_window};
  }
};

}  // namespace mobilecc
