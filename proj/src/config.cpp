#include "mobilecc/config.hpp"

#include <cmath>

#include "mobilecc/error.hpp"

namespace mobilecc {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::baseline: return "baseline";
    case Algorithm::dynamic: return "dynamic";
    case Algorithm::direct: return "direct";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "baseline") return Algorithm::baseline;
  if (name == "dynamic") return Algorithm::dynamic;
  if (name == "direct") return Algorithm::direct;
  return std::nullopt;
}

void SimConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(Errc::configuration, std::string(what) + " must be positive");
  };
  positive(sim_time, "sim_time");
  positive(tx_range, "tx_range");
  positive(channel_rate, "channel_rate");
  positive(source_rate, "source_rate");
  positive(sample_period, "sample_period");
  positive(mobile_speed, "mobile_speed");
  positive(slot_time, "slot_time");
  positive(cpu_charge, "cpu_charge");
  if (!(cca_time >= 0.0)) throw Error(Errc::configuration, "cca_time must be non-negative");
  if (queue_len == 0) throw Error(Errc::configuration, "queue_len must be positive");
  if (packet_bytes == 0) throw Error(Errc::configuration, "packet_bytes must be positive");
  if (backoff_min_slots == 0 || backoff_max_slots < backoff_min_slots)
    throw Error(Errc::configuration, "backoff window must satisfy 1 <= min <= max");
  if (congestion_threshold == 0 || congestion_threshold > queue_len)
    throw Error(Errc::configuration, "congestion_threshold must lie in [1, queue_len]");
  if (cooldown_periods == 0) throw Error(Errc::configuration, "cooldown_periods must be positive");
}

}  // namespace mobilecc
