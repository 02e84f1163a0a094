#include "mobilecc/congestion.hpp"

#include <algorithm>

#include "mobilecc/error.hpp"

namespace mobilecc {

double additional_resources(std::uint64_t recv, std::uint64_t tran, double t, double t0) {
  if (!(t > t0)) throw Error(Errc::invalid_window, "window end must follow its start");
  if (recv < tran) return 0.0;
  return static_cast<double>(recv - tran) / (t - t0);
}

namespace {

struct Window {
  std::uint64_t recv;
  std::uint64_t tran;
  SimTime start;
};

std::optional<Window> window_of(const NodeState& node, const DetectionParams& params) {
  if (params.lifetime_window) {
    if (!node.t0) return std::nullopt;
    return Window{node.counters.received, node.counters.transmitted, *node.t0};
  }
  return Window{node.window_received, node.window_transmitted, node.window_start};
}

}  // namespace

std::optional<CongestionMessage> detect(const NodeState& node, DetectorState& state, SimTime now,
                                        const DetectionParams& params) {
  if (node.is_sink() || !node.radio_on || !node.level) return std::nullopt;
  if (node.data_queued < params.threshold) return std::nullopt;

  const SimTime cooldown = seconds_to_sim(params.sample_period * params.cooldown_periods);
  if (state.last_cm && now - *state.last_cm < cooldown) return std::nullopt;

  const auto window = window_of(node, params);
  if (!window || now <= window->start) return std::nullopt;
  const double t = sim_to_seconds(now);
  const double t0 = sim_to_seconds(window->start);
  if (additional_resources(window->recv, window->tran, t, t0) <= 0.0) return std::nullopt;

  const double periods = (t - t0) / params.sample_period;
  CongestionMessage cm;
  cm.congested = node.id;
  cm.level = *node.level;
  cm.recv_count = window->recv;
  cm.fwd_count = window->tran;
  cm.recv_per_period = static_cast<double>(window->recv) / periods;
  cm.fwd_per_period = static_cast<double>(window->tran) / periods;
  cm.window_start = t0;
  cm.detected_at = t;
  cm.neighbors = node.neighbors;
  state.last_cm = now;
  return cm;
}

std::vector<ContributorProfile> contributors(const CongestionMessage& cm, const Network& network) {
  const double window = cm.detected_at - cm.window_start;
  if (!(window > 0.0)) throw Error(Errc::invalid_window, "empty detection window");

  std::vector<ContributorProfile> out;
  for (const auto& entry : cm.neighbors) {
    if (entry.packets_received == 0 || !entry.hop || *entry.hop <= cm.level) continue;
    if (!network.contains(entry.neighbor)) continue;
    out.push_back({entry.neighbor, static_cast<double>(entry.packets_received) / window});
  }
  if (out.empty())
    throw Error(Errc::spurious_cm, "node " + to_string(cm.congested) + " has no upstream senders");
  std::sort(out.begin(), out.end(), [](const ContributorProfile& a, const ContributorProfile& b) {
    return a.sending_rate != b.sending_rate ? a.sending_rate > b.sending_rate : a.node < b.node;
  });
  return out;
}

}  // namespace mobilecc
