#include "mobilecc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "mobilecc/congestion.hpp"
#include "mobilecc/error.hpp"

namespace mobilecc {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::generate: return "generate";
    case EventKind::tx_attempt: return "tx_attempt";
    case EventKind::receive: return "receive";
    case EventKind::drop: return "drop";
    case EventKind::sample_tick: return "sample_tick";
    case EventKind::mobile_arrive: return "mobile_arrive";
    case EventKind::congestion_msg_arrive: return "cm_arrive";
  }
  return "?";
}

std::string format_trace(const TraceEvent& e) {
  std::ostringstream out;
  out << format_number(sim_to_seconds(e.time)) << ' ' << to_string(e.kind) << ' ' << raw(e.node)
      << ' ' << e.uid;
  if (!e.detail.empty()) out << ' ' << e.detail;
  return out.str();
}

namespace {

struct Event {
  SimTime time;
  EventKind kind;
  std::uint32_t node;  // raw NodeId, for ordering
  std::uint64_t uid;
  std::uint64_t seq;
  std::uint32_t slot;
  std::uint64_t aux;

  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return kind > o.kind;
    if (node != o.node) return node > o.node;
    if (uid != o.uid) return uid > o.uid;
    return seq > o.seq;
  }
};

struct Transmission {
  std::uint64_t id;
  std::uint32_t sender;
  std::uint32_t receiver;
  SimTime start;
  SimTime end;
  bool failed = false;
};

struct NodeRuntime {
  bool mac_pending = false;
  bool transmitting = false;
  SimTime tx_ns = 0;
  SimTime radio_on_since = 0;
  SimTime radio_on_ns = 0;
  std::uint64_t cpu_events = 0;
  DetectorState detector;
};

// A dispatch round: one Dynamic plan or one whole Direct chain.
struct PlacementGroup {
  std::vector<PlacementPlan> plans;
  std::vector<std::size_t> records;  // indices into RunMetrics::placements
  std::size_t pending = 0;
  bool active = false;
  SimTime activated_at = 0;
};

}  // namespace

struct Simulator::Impl {
  Network net;
  SimConfig cfg;
  TraceSink trace;
  OverrideTable overrides;

  std::mt19937_64 rng;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::uint64_t seq = 0;
  std::uint64_t next_uid = 1;
  std::uint64_t next_tx = 1;
  SimTime now = 0;
  SimTime end = 0;
  SimTime tx_duration = 0;
  SimTime slot = 0;
  SimTime cca = 0;
  SimTime sample = 0;
  SimTime cooldown = 0;

  std::vector<NodeRuntime> rt;
  std::vector<SimTime> phase;  // first generation instant per source slot
  std::vector<Transmission> active;
  std::vector<CongestionMessage> cms;
  std::vector<PlacementGroup> groups;
  std::set<NodeId> direct_handled;
  std::map<NodeId, SimTime> relieved_at;  // congested node -> last Dynamic activation
  std::set<NodeId> planning_inflight;

  RunMetrics metrics;
  double delay_sum = 0.0;
  bool ran = false;

  Impl(Network n, SimConfig c, TraceSink t) : net(std::move(n)), cfg(c), trace(std::move(t)) {}

  void emit(EventKind kind, std::uint32_t slot_index, std::uint64_t uid, std::string detail = {}) {
    if (!trace) return;
    trace({now, kind, net.at(slot_index).id, uid, std::move(detail)});
  }

  void schedule(SimTime time, EventKind kind, std::uint32_t slot_index, std::uint64_t uid = 0,
                std::uint64_t aux = 0) {
    if (time > end) return;
    events.push({time, kind, raw(net.at(slot_index).id), uid, seq++, slot_index, aux});
  }

  SimTime backoff() {
    std::uniform_int_distribution<std::uint32_t> d(cfg.backoff_min_slots, cfg.backoff_max_slots);
    return static_cast<SimTime>(d(rng)) * slot;
  }

  // ---- setup ---------------------------------------------------------------

  void setup() {
    cfg.validate();
    if (!net.has_sink()) throw Error(Errc::configuration, "network has no sink");

    end = seconds_to_sim(cfg.sim_time);
    tx_duration = seconds_to_sim(cfg.tx_duration());
    slot = seconds_to_sim(cfg.slot_time);
    cca = seconds_to_sim(cfg.cca_time);
    sample = seconds_to_sim(cfg.sample_period);
    cooldown = seconds_to_sim(cfg.sample_period * cfg.cooldown_periods);
    rng.seed(cfg.seed);

    for (auto& node : net.nodes()) {
      node.tx_range = cfg.tx_range;
      node.queue_capacity = cfg.queue_len;
    }
    build_neighbor_tables(net);
    compute_levels(net);

    rt.assign(net.size(), {});
    const double period = 1.0 / cfg.source_rate;
    std::uniform_real_distribution<double> offset(0.0, period);
    phase.assign(net.size(), 0);
    for (std::uint32_t s = 0; s < net.size(); ++s) {
      const auto& node = net.at(s);
      if (!node.is_source || node.is_sink()) continue;
      phase[s] = seconds_to_sim(offset(rng));
      schedule(phase[s], EventKind::generate, s, 0, 0);
    }
    for (SimTime t = sample; t <= end; t += sample)
      schedule(t, EventKind::sample_tick, net.slot_of(net.sink()));
  }

  // ---- queues --------------------------------------------------------------

  void refresh_flag(NodeState& node) {
    if (node.is_sink()) return;
    if (node.available && node.data_queued >= cfg.congestion_threshold) node.available = false;
    else if (!node.available && node.data_queued * 2 < cfg.congestion_threshold) node.available = true;
  }

  void drop(std::uint32_t s, const Packet& p, const char* reason) {
    auto& node = net.at(s);
    if (p.control) {
      ++metrics.cms_lost;
    } else {
      ++metrics.dropped;
      ++node.counters.dropped;
    }
    emit(EventKind::drop, s, p.uid, reason);
  }

  void deliver(const Packet& p) {
    if (p.control) {
      ++metrics.cms_delivered;
      schedule(now, EventKind::congestion_msg_arrive, net.slot_of(net.sink()), p.uid, p.cm_index);
      return;
    }
    ++metrics.delivered;
    delay_sum += sim_to_seconds(now - p.created_at);
  }

  void enqueue(std::uint32_t s, Packet p) {
    auto& node = net.at(s);
    if (node.is_sink()) {
      deliver(p);
      return;
    }
    if (p.control) {
      // Reserved slot ahead of every data packet not already on the air.
      auto pos = node.queue.begin();
      if (rt[s].transmitting && pos != node.queue.end()) ++pos;
      while (pos != node.queue.end() && pos->control) ++pos;
      node.queue.insert(pos, p);
    } else {
      if (node.data_queued >= node.queue_capacity) {
        drop(s, p, "queue_full");
        return;
      }
      node.queue.push_back(p);
      ++node.data_queued;
      refresh_flag(node);
    }
    kick(s);
  }

  void kick(std::uint32_t s) {
    auto& node = net.at(s);
    if (rt[s].mac_pending || node.queue.empty() || !node.radio_on || node.is_sink()) return;
    rt[s].mac_pending = true;
    schedule(now + backoff(), EventKind::tx_attempt, s, node.queue.front().uid);
  }

  void kick_all() {
    for (std::uint32_t s = 0; s < net.size(); ++s) kick(s);
  }

  // ---- MAC -----------------------------------------------------------------

  bool channel_busy(std::uint32_t s) const {
    for (const auto& tx : active) {
      if (tx.sender == s || tx.receiver == s) return true;
      if (net.adjacent(tx.sender, s) && now - tx.start >= cca) return true;
    }
    return false;
  }

  bool corrupts(const Transmission& interferer, const Transmission& victim) const {
    if (interferer.sender == victim.receiver) return true;
    if (cfg.interference == Interference::same_receiver)
      return interferer.receiver == victim.receiver;
    return net.adjacent(interferer.sender, victim.receiver);
  }

  void on_tx_attempt(std::uint32_t s) {
    auto& node = net.at(s);
    ++rt[s].cpu_events;
    if (node.queue.empty() || !node.radio_on) {
      rt[s].mac_pending = false;
      return;
    }
    const Packet& head = node.queue.front();
    const auto route = next_hop(node.id, net, overrides, head.control);
    if (route.stalled()) {
      rt[s].mac_pending = false;  // woken by the next tick or topology change
      return;
    }
    if (channel_busy(s)) {
      schedule(now + backoff(), EventKind::tx_attempt, s, head.uid);
      return;
    }
    emit(EventKind::tx_attempt, s, head.uid, "to=" + to_string(*route.next_hop));

    Transmission tx{next_tx++, s, net.slot_of(*route.next_hop), now, now + tx_duration};
    for (auto& other : active) {
      if (corrupts(other, tx)) tx.failed = true;
      if (corrupts(tx, other)) other.failed = true;
    }
    active.push_back(tx);
    rt[s].transmitting = true;
    if (!node.t0) node.t0 = now;
    schedule(tx.end, EventKind::receive, tx.receiver, head.uid, tx.id);
  }

  void on_receive(std::uint64_t tx_id) {
    auto it = std::find_if(active.begin(), active.end(),
                           [&](const Transmission& t) { return t.id == tx_id; });
    const Transmission tx = *it;
    active.erase(it);

    auto& sender = net.at(tx.sender);
    auto& receiver = net.at(tx.receiver);
    rt[tx.sender].transmitting = false;
    rt[tx.sender].tx_ns += tx.end - tx.start;
    rt[tx.sender].mac_pending = false;

    Packet p = sender.queue.front();
    if (tx.failed) {
      if (++sender.queue.front().retries > cfg.max_retries) {
        sender.queue.pop_front();
        if (!p.control) {
          --sender.data_queued;
          refresh_flag(sender);
        }
        drop(tx.sender, p, "retries");
      }
      kick(tx.sender);
      return;
    }

    sender.queue.pop_front();
    ++rt[tx.receiver].cpu_events;
    p.retries = 0;
    ++p.hops;
    if (!p.control) {
      --sender.data_queued;
      refresh_flag(sender);
      ++sender.counters.transmitted;
      ++sender.window_transmitted;
      if (!receiver.is_sink()) {
        ++receiver.counters.received;
        ++receiver.window_received;
        if (auto* entry = receiver.find_neighbor(sender.id)) ++entry->packets_received;
      }
    }
    emit(EventKind::receive, tx.receiver, p.uid, "from=" + to_string(sender.id));
    enqueue(tx.receiver, p);
    kick(tx.sender);
  }

  // ---- traffic -------------------------------------------------------------

  void on_generate(std::uint32_t s, std::uint64_t k) {
    auto& node = net.at(s);
    ++rt[s].cpu_events;
    Packet p;
    p.uid = next_uid++;
    p.source = node.id;
    p.created_at = now;
    p.size_bytes = cfg.packet_bytes;
    ++metrics.generated;
    emit(EventKind::generate, s, p.uid);

    const double period = 1.0 / cfg.source_rate;
    schedule(phase[s] + seconds_to_sim(static_cast<double>(k + 1) * period), EventKind::generate, s,
             0, k + 1);

    if (!node.level || !node.radio_on) {
      drop(s, p, "unreachable");
      return;
    }
    enqueue(s, p);
  }

  // ---- sampling and congestion --------------------------------------------

  void on_sample_tick() {
    const auto params = cfg.detection();
    for (std::uint32_t s = 0; s < net.size(); ++s) {
      auto& node = net.at(s);
      if (node.is_sink() || !node.radio_on) continue;

      if (cfg.algorithm != Algorithm::baseline) {
        if (auto cm = detect(node, rt[s].detector, now, params)) {
          const auto index = static_cast<std::uint32_t>(cms.size());
          std::ostringstream d;
          d << "cm=" << index << " recv=" << cm->recv_count << " fwd=" << cm->fwd_count
            << " t0=" << format_number(cm->window_start) << " level=" << cm->level
            << " neighbors=" << cm->neighbors.size();
          cms.push_back(std::move(*cm));
          ++metrics.cms_sent;
          Packet p;
          p.uid = next_uid++;
          p.source = node.id;
          p.created_at = now;
          p.control = true;
          p.cm_index = index;
          emit(EventKind::sample_tick, s, p.uid, d.str());
          enqueue(s, p);
        }
      }

      if (!cfg.lifetime_window && now - node.window_start >= cooldown) {
        node.window_received = 0;
        node.window_transmitted = 0;
        node.window_start = now;
        for (auto& entry : node.neighbors) entry.packets_received = 0;
      }
    }
    propagate_availability(net);
    kick_all();
  }

  bool should_plan(const CongestionMessage& cm) const {
    if (cfg.algorithm == Algorithm::direct) return !direct_handled.contains(cm.congested);
    if (planning_inflight.contains(cm.congested)) return false;
    // Only evidence gathered after the last relief of this node counts.
    auto it = relieved_at.find(cm.congested);
    return it == relieved_at.end() || seconds_to_sim(cm.window_start) >= it->second;
  }

  void on_cm_arrive(std::uint64_t index) {
    const auto& cm = cms[index];
    const auto sink_slot = net.slot_of(net.sink());
    ++rt[sink_slot].cpu_events;
    emit(EventKind::congestion_msg_arrive, sink_slot, index, "congested=" + to_string(cm.congested));
    if (cfg.algorithm == Algorithm::baseline || !should_plan(cm)) return;

    std::vector<PlacementPlan> plans;
    try {
      plans = cfg.algorithm == Algorithm::dynamic ? plan_dynamic(cm, net) : plan_direct(cm, net);
    } catch (const Error& e) {
      if (e.code() != Errc::pool_exhausted && e.code() != Errc::spurious_cm) throw;
      emit(EventKind::congestion_msg_arrive, sink_slot, index, e.what());
      return;
    }
    if (plans.empty()) {
      emit(EventKind::congestion_msg_arrive, sink_slot, index, "no_feasible_plan");
      return;
    }
    dispatch(std::move(plans));
  }

  void dispatch(std::vector<PlacementPlan> plans) {
    const auto group_index = groups.size();
    PlacementGroup group;
    group.pending = plans.size();
    const NodeId congested = plans.front().congested;
    if (cfg.algorithm == Algorithm::direct) {
      direct_handled.insert(congested);
      for (const auto& plan : plans) {
        direct_handled.insert(plan.mobile);
        for (auto id : plan.served) direct_handled.insert(id);
      }
    } else {
      planning_inflight.insert(congested);
    }

    for (const auto& plan : plans) {
      const NodeId mobile = net.reserve_mobile();
      if (mobile != plan.mobile) throw Error(Errc::pool_exhausted, "pool order changed during planning");
      const auto s = net.slot_of(mobile);
      const double travel = distance(net.at(s).position, plan.target) / cfg.mobile_speed;
      ++metrics.mobiles_used;
      group.records.push_back(metrics.placements.size());
      metrics.placements.push_back({mobile, plan.congested, plan.target, plan.served,
                                    plan.next_hop_hint, sim_to_seconds(now), -1.0});
      std::ostringstream d;
      d << "dispatch target=" << format_number(plan.target.x) << ',' << format_number(plan.target.y)
        << " congested=" << raw(plan.congested) << " next=" << raw(plan.next_hop_hint);
      emit(EventKind::mobile_arrive, s, 0, d.str());
      schedule(now + seconds_to_sim(travel), EventKind::mobile_arrive, s, 0, group_index);
    }
    group.plans = std::move(plans);
    groups.push_back(std::move(group));
  }

  void on_mobile_arrive(std::uint32_t s, std::uint64_t group_index) {
    auto& group = groups[group_index];
    ++rt[s].cpu_events;
    emit(EventKind::mobile_arrive, s, 0, "arrived");
    if (--group.pending > 0) return;  // a chain goes live only when complete

    for (const auto& plan : group.plans) {
      admit_mobile(net, plan.mobile, plan.target);
      const auto m = net.slot_of(plan.mobile);
      rt[m].radio_on_since = now;
    }
    for (const auto& plan : group.plans) {
      for (auto served : plan.served) overrides.activate({served, plan.mobile, plan.congested});
      overrides.activate({plan.mobile, plan.next_hop_hint, plan.congested});
    }
    for (auto r : group.records) metrics.placements[r].activated_at = sim_to_seconds(now);
    group.active = true;
    group.activated_at = now;
    const NodeId congested = group.plans.front().congested;
    planning_inflight.erase(congested);
    relieved_at[congested] = now;
    emit(EventKind::mobile_arrive, s, 0, "activated");
    kick_all();
  }

  // ---- main loop -----------------------------------------------------------

  RunMetrics run() {
    if (ran) throw Error(Errc::configuration, "simulator already ran");
    ran = true;
    setup();
    while (!events.empty()) {
      const Event e = events.top();
      if (e.time > end) break;
      events.pop();
      now = e.time;
      ++metrics.events;
      switch (e.kind) {
        case EventKind::generate: on_generate(e.slot, e.aux); break;
        case EventKind::tx_attempt: on_tx_attempt(e.slot); break;
        case EventKind::receive: on_receive(e.aux); break;
        case EventKind::drop: break;
        case EventKind::sample_tick: on_sample_tick(); break;
        case EventKind::mobile_arrive: on_mobile_arrive(e.slot, e.aux); break;
        case EventKind::congestion_msg_arrive: on_cm_arrive(e.aux); break;
      }
    }
    now = end;
    finalize();
    return metrics;
  }

  void finalize() {
    for (const auto& tx : active) rt[tx.sender].tx_ns += end - tx.start;

    const auto elapsed = ns_to_ticks(end);
    for (std::uint32_t s = 0; s < net.size(); ++s) {
      auto& node = net.at(s);
      auto& r = rt[s];
      if (node.radio_on) r.radio_on_ns += end - r.radio_on_since;
      EnergyLedger ledger;
      ledger.transmit_ticks = ns_to_ticks(r.tx_ns);
      const auto on_ticks = ns_to_ticks(r.radio_on_ns);
      ledger.listen_ticks = on_ticks > ledger.transmit_ticks ? on_ticks - ledger.transmit_ticks : 0;
      ledger.cpu_ticks = std::min<std::uint64_t>(
          elapsed, ns_to_ticks(static_cast<SimTime>(r.cpu_events) * seconds_to_sim(cfg.cpu_charge)));
      ledger.lpm_ticks = elapsed - ledger.cpu_ticks;
      node.energy = ledger;

      for (const auto& p : node.queue)
        if (!p.control) ++metrics.residual;

      metrics.nodes.push_back({node.id, node.kind, node.counters.received, node.counters.transmitted,
                               node.counters.dropped, ledger, node_energy(ledger, cfg.energy_scale)});
    }
    std::sort(metrics.nodes.begin(), metrics.nodes.end(),
              [](const NodeReport& a, const NodeReport& b) { return a.id < b.id; });
    metrics.total_energy = total_energy(net, cfg.energy_scale);
    metrics.delivery_ratio = metrics.generated == 0
                                 ? 1.0
                                 : static_cast<double>(metrics.delivered) /
                                       static_cast<double>(metrics.generated);
    metrics.mean_delay = metrics.delivered == 0 ? 0.0 : delay_sum / static_cast<double>(metrics.delivered);
  }
};

Simulator::Simulator(Network network, SimConfig config, TraceSink trace)
    : impl_(std::make_unique<Impl>(std::move(network), config, std::move(trace))) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

RunMetrics Simulator::run() { return impl_->run(); }
const Network& Simulator::network() const { return impl_->net; }
const OverrideTable& Simulator::overrides() const { return impl_->overrides; }

RunMetrics run(const Network& network, const SimConfig& config, TraceSink trace) {
  return Simulator(network, config, std::move(trace)).run();
}

}  // namespace mobilecc
