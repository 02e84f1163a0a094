#include "mobilecc/placement.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "mobilecc/error.hpp"

namespace mobilecc {

namespace {

struct Candidate {
  Point target;
  std::vector<NodeId> served;
};

using Feasible = std::function<bool(Point)>;

bool closer(Point p, Point q, Point sink) {
  const double dp = distance(p, sink);
  const double dq = distance(q, sink);
  if (std::abs(dp - dq) > kGeomEpsilon) return dp < dq;
  return p.x < q.x || (p.x == q.x && p.y < q.y);
}

// Visits all k-combinations of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(std::as_const(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<Candidate> search(const CongestionMessage& cm, const Network& network,
                                const Feasible& feasible) {
  auto profiles = contributors(cm, network);
  const double deficit = additional_resources(cm);
  const Point sink = network.sink_node().position;
  const double range = network.node(cm.congested).tx_range;

  for (const auto& c : profiles) {
    if (c.sending_rate < deficit) continue;
    const Point target = point_toward_sink(network.node(c.node).position, range, sink);
    if (feasible(target)) return Candidate{target, {c.node}};
  }

  if (profiles.size() > kMaxContributors) profiles.resize(kMaxContributors);
  const std::size_t max_k = std::min(kMaxSubsetSize, profiles.size());
  for (std::size_t k = 2; k <= max_k; ++k) {
    std::optional<Candidate> best;
    std::vector<Point> centers(k);
    for_each_combination(profiles.size(), k, [&](const std::vector<std::size_t>& idx) {
      double total = 0.0;
      for (auto i : idx) total += profiles[i].sending_rate;
      if (total < deficit) return;
      for (std::size_t j = 0; j < k; ++j) centers[j] = network.node(profiles[idx[j]].node).position;
      const auto point = common_point_closest_to_sink(centers, range, sink);
      if (!point || !feasible(*point)) return;
      if (!best || closer(*point, best->target, sink)) {
        Candidate cand{*point, {}};
        for (auto i : idx) cand.served.push_back(profiles[i].node);
        std::sort(cand.served.begin(), cand.served.end());
        best = std::move(cand);
      }
    });
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NodeId> find_forwarder(Point target, int congested_level, const Network& network) {
  const auto& sink = network.sink_node();
  const double range = sink.tx_range;
  if (in_range(target, sink.position, range)) return sink.id;

  std::optional<NodeId> best;
  int best_level = 0;
  for (const auto& node : network.nodes()) {
    if (!node.radio_on || !node.level || !node.available || node.is_sink()) continue;
    if (*node.level >= congested_level) continue;
    if (!in_range(target, node.position, range)) continue;
    if (!best || *node.level < best_level || (*node.level == best_level && node.id < *best)) {
      best = node.id;
      best_level = *node.level;
    }
  }
  return best;
}

std::vector<PlacementPlan> plan_dynamic(const CongestionMessage& cm, const Network& network) {
  if (network.mobile_pool().empty()) throw Error(Errc::pool_exhausted, "no idle mobile left");

  const auto feasible = [&](Point p) { return find_forwarder(p, cm.level, network).has_value(); };
  const auto cand = search(cm, network, feasible);
  if (!cand) return {};

  PlacementPlan plan;
  plan.target = cand->target;
  plan.served = cand->served;
  plan.next_hop_hint = *find_forwarder(cand->target, cm.level, network);
  plan.mobile = network.peek_pool(1).front();
  plan.congested = cm.congested;
  return {plan};
}

std::vector<PlacementPlan> plan_direct(const CongestionMessage& cm, const Network& network) {
  if (network.mobile_pool().empty()) throw Error(Errc::pool_exhausted, "no idle mobile left");

  const auto& sink = network.sink_node();
  const double range = network.node(cm.congested).tx_range;
  // A first mobile out of the sink's reach is served by the chain itself.
  const auto feasible = [&](Point p) {
    return !in_range(p, sink.position, range) || find_forwarder(p, cm.level, network).has_value();
  };
  const auto cand = search(cm, network, feasible);
  if (!cand) return {};

  std::vector<Point> targets{cand->target};
  while (!in_range(targets.back(), sink.position, range))
    targets.push_back(point_toward_sink(targets.back(), range, sink.position));

  if (targets.size() > network.mobile_pool().size())
    throw Error(Errc::pool_exhausted, "chain of " + std::to_string(targets.size()) +
                                          " mobiles exceeds the idle pool");
  const auto mobiles = network.peek_pool(targets.size());

  std::vector<PlacementPlan> chain;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    PlacementPlan plan;
    plan.target = targets[i];
    plan.served = i == 0 ? cand->served : std::vector<NodeId>{mobiles[i - 1]};
    plan.next_hop_hint = i + 1 < targets.size() ? mobiles[i + 1] : sink.id;
    plan.mobile = mobiles[i];
    plan.congested = cm.congested;
    chain.push_back(std::move(plan));
  }
  return chain;
}

}  // namespace mobilecc
