#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mobilecc/error.hpp"
#include "mobilecc/placement.hpp"
#include "mobilecc/scenario.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mobilecc;
using testsupport::Spec;

namespace {

struct Feed {
  std::uint32_t id;
  std::uint64_t packets;  // over a one-second window
};

// One-second window; every feeder sits one level above the congested node.
CongestionMessage make_cm(std::uint32_t congested, int level, const std::vector<Feed>& feeds, double deficit) {
  CongestionMessage cm;
  cm.congested = NodeId{congested};
  cm.level = level;
  cm.window_start = 0.0;
  cm.detected_at = 1.0;
  for (const auto& f : feeds) {
    NeighborEntry e;
    e.neighbor = NodeId{f.id};
    e.hop = level + 1;
    e.packets_received = f.packets;
    cm.neighbors.push_back(e);
    cm.recv_count += f.packets;
  }
  cm.fwd_count = cm.recv_count - static_cast<std::uint64_t>(deficit);
  return cm;
}

Network with_mobiles(std::vector<Spec> specs, std::uint32_t count, double range) {
  for (std::uint32_t i = 0; i < count; ++i) specs.push_back({100 + i, NodeKind::mobile, 0, 0});
  return testsupport::make_network(specs, range);
}

// example26 CM for `node`: 10 packets from each upstream neighbor in one second.
CongestionMessage fixture_cm(const Network& net, std::uint32_t node, std::uint64_t deficit) {
  const auto& n = net.node(NodeId{node});
  CongestionMessage cm;
  cm.congested = n.id;
  cm.level = *n.level;
  cm.window_start = 0.0;
  cm.detected_at = 1.0;
  cm.neighbors = n.neighbors;
  for (auto& e : cm.neighbors) e.packets_received = (e.hop && *e.hop > *n.level) ? 10 : 0;
  cm.recv_count = 100;
  cm.fwd_count = 100 - deficit;
  return cm;
}

}  // namespace

TEST_CASE("single contributor steps toward the sink") {
  auto net = with_mobiles({{1, NodeKind::sink, 0, 5}, {2, NodeKind::fixed, 0, 0}, {3, NodeKind::fixed, 2, 2}}, 1, 2.5);
  const auto cm = make_cm(3, 1, {{2, 10}}, 5);
  const auto plan = plan_dynamic(cm, net);
  REQUIRE(plan.size() == 1);
  CHECK(plan[0].target.x == doctest::Approx(0.0));
  CHECK(plan[0].target.y == doctest::Approx(2.5));
  CHECK(plan[0].served == std::vector<NodeId>{NodeId{2}});
  CHECK(plan[0].next_hop_hint == NodeId{1});
  CHECK(plan[0].mobile == NodeId{100});
  CHECK(plan[0].congested == NodeId{3});
}

TEST_CASE("worked pair") {
  auto net = with_mobiles({{1, NodeKind::sink, 2, 46},
                           {2, NodeKind::fixed, 0, 0},
                           {3, NodeKind::fixed, 2, 0},
                           {4, NodeKind::fixed, 1, 4},
                           {5, NodeKind::fixed, 1, -2}},
                          1, 2.5);
  net.node(NodeId{4}).level = 1;  // forwarder
  // Neither feeder covers 9 pkt/s alone; together they do.
  const auto cm = make_cm(5, 3, {{2, 5}, {3, 5}}, 9);

  SUBCASE("upper crossing chosen") {
    const auto plan = plan_dynamic(cm, net);
    REQUIRE(plan.size() == 1);
    CHECK(plan[0].target.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(plan[0].target.y == doctest::Approx(2.2913).epsilon(1e-4));
    CHECK(plan[0].served == std::vector<NodeId>{NodeId{2}, NodeId{3}});
    CHECK(plan[0].next_hop_hint == NodeId{4});
  }
  SUBCASE("no forwarder, no dynamic plan") {
    net.node(NodeId{4}).available = false;
    CHECK(plan_dynamic(cm, net).empty());
  }
  SUBCASE("a forwarder must sit below the congested level") {
    net.node(NodeId{4}).level = 3;
    CHECK(plan_dynamic(cm, net).empty());
  }
  SUBCASE("deficit beyond every subset") {
    auto big = cm;
    big.recv_count += 10;  // counted, but from no contributor
    big.fwd_count = big.recv_count - 11;
    CHECK(plan_dynamic(big, net).empty());
  }
}

TEST_CASE("direct chain") {
  SUBCASE("four mobiles from 10 m out") {
    auto net = with_mobiles({{1, NodeKind::sink, 0, 12.5}, {2, NodeKind::fixed, 0, 0}, {3, NodeKind::fixed, 2, -1}}, 5, 2.5);
    const auto chain = plan_direct(make_cm(3, 2, {{2, 10}}, 5), net);
    REQUIRE(chain.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(chain[i].target.x == doctest::Approx(0.0));
      CHECK(chain[i].target.y == doctest::Approx(2.5 * static_cast<double>(i + 1)));
      CHECK(chain[i].mobile == NodeId{static_cast<std::uint32_t>(100 + i)});
    }
    CHECK(chain[0].served == std::vector<NodeId>{NodeId{2}});
    CHECK(chain[1].served == std::vector<NodeId>{NodeId{100}});
    CHECK(chain[0].next_hop_hint == NodeId{101});
    CHECK(chain[3].next_hop_hint == NodeId{1});
    // Dynamic finds no forwarder out there.
    CHECK(plan_dynamic(make_cm(3, 2, {{2, 10}}, 5), net).empty());
  }
  SUBCASE("one mobile when the first already reaches the sink") {
    auto net = with_mobiles({{1, NodeKind::sink, 0, 5}, {2, NodeKind::fixed, 0, 0}, {3, NodeKind::fixed, 2, 2}}, 3, 2.5);
    const auto chain = plan_direct(make_cm(3, 1, {{2, 10}}, 5), net);
    REQUIRE(chain.size() == 1);
    CHECK(chain[0].next_hop_hint == NodeId{1});
  }
  SUBCASE("pool too small for the chain") {
    auto net = with_mobiles({{1, NodeKind::sink, 0, 12.5}, {2, NodeKind::fixed, 0, 0}, {3, NodeKind::fixed, 2, -1}}, 2, 2.5);
    CHECK_THROWS_AS(plan_direct(make_cm(3, 2, {{2, 10}}, 5), net), Error);
  }
  SUBCASE("empty pool") {
    auto net = with_mobiles({{1, NodeKind::sink, 0, 5}, {2, NodeKind::fixed, 0, 0}, {3, NodeKind::fixed, 2, 2}}, 0, 2.5);
    const auto cm = make_cm(3, 1, {{2, 10}}, 5);
    try {
      plan_dynamic(cm, net);
      FAIL("expected pool_exhausted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::pool_exhausted);
    }
    CHECK_THROWS_AS(plan_direct(cm, net), Error);
  }
}

TEST_CASE("chain geometry on random layouts") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-150, 150);
  int chains = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Point src{u(rng), u(rng)};
    auto net = with_mobiles({{1, NodeKind::sink, 0, 0}, {2, NodeKind::fixed, src.x, src.y},
                             {3, NodeKind::fixed, src.x + 10, src.y}},
                            20, 25.0);
    if (distance(src, {0, 0}) <= 25.0) continue;
    const auto chain = plan_direct(make_cm(3, 5, {{2, 10}}, 5), net);
    REQUIRE_FALSE(chain.empty());
    ++chains;
    const Point sink{0, 0};
    CHECK(distance(chain.front().target, src) == doctest::Approx(25.0));
    CHECK(distance(chain.back().target, sink) <= 25.0 + 1e-9);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      CHECK(distance(chain[i].target, chain[i + 1].target) == doctest::Approx(25.0));
      CHECK(distance(chain[i].target, sink) > 25.0);
      // On the segment from the first target to the sink.
      const Point a = chain.front().target;
      const double cross = a.x * chain[i + 1].target.y - a.y * chain[i + 1].target.x;
      CHECK(std::abs(cross) / distance(a, sink) <= 1e-6);
    }
    const double expect = std::ceil((distance(chain.front().target, sink) - 25.0) / 25.0 - 1e-9) + 1.0;
    CHECK(static_cast<double>(chain.size()) == expect);
  }
  CHECK(chains > 100);
}

TEST_CASE("example26 plans") {
  const auto net = build_network(load_scenario(testsupport::scenario_path("example26")));

  SUBCASE("dynamic places one mobile per congested node") {
    for (std::uint32_t id : {3u, 8u}) {
      const auto plan = plan_dynamic(fixture_cm(net, id, 15), net);
      REQUIRE(plan.size() == 1);
      CHECK(plan[0].served.size() == 2);
    }
    CHECK(plan_dynamic(fixture_cm(net, 3, 15), net)[0].next_hop_hint == NodeId{7});
    CHECK(plan_dynamic(fixture_cm(net, 8, 15), net)[0].next_hop_hint == NodeId{13});
  }
  SUBCASE("direct chains of two and four") {
    CHECK(plan_direct(fixture_cm(net, 3, 15), net).size() == 2);
    CHECK(plan_direct(fixture_cm(net, 8, 15), net).size() == 4);
  }
  SUBCASE("direct never uses fewer mobiles than dynamic") {
    for (std::uint32_t id : {3u, 8u})
      for (std::uint64_t deficit : {5u, 15u, 25u, 35u}) {
        const auto cm = fixture_cm(net, id, deficit);
        const auto d = plan_dynamic(cm, net);
        const auto c = plan_direct(cm, net);
        if (!d.empty() && !c.empty()) CHECK(c.size() >= d.size());
      }
  }
}

TEST_CASE("dynamic subset has minimal cardinality") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-20, 20);
  std::uniform_int_distribution<int> count(1, 10);
  std::uniform_int_distribution<std::uint64_t> pk(1, 12);
  int planned = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Spec> specs{{1, NodeKind::sink, 0, 60}, {2, NodeKind::fixed, 0, 0}};
    specs.push_back({3, NodeKind::fixed, 0, 35});  // forwarder
    const int n = count(rng);
    std::vector<Feed> feeds;
    for (int i = 0; i < n; ++i) {
      const auto id = static_cast<std::uint32_t>(10 + i);
      specs.push_back({id, NodeKind::fixed, u(rng), u(rng)});
      feeds.push_back({id, pk(rng)});
    }
    auto net = with_mobiles(specs, 1, 25.0);
    net.node(NodeId{3}).level = 1;
    std::uint64_t total = 0;
    for (const auto& f : feeds) total += f.packets;
    std::uniform_int_distribution<std::uint64_t> def(1, total);
    const auto cm = make_cm(2, 3, feeds, static_cast<double>(def(rng)));

    const auto feasible = [&](Point p) { return find_forwarder(p, cm.level, net).has_value(); };
    const auto expect = oracle::minimal_cardinality(cm, net, feasible);
    const auto plan = plan_dynamic(cm, net);
    REQUIRE(plan.empty() == !expect.has_value());
    if (plan.empty()) continue;
    ++planned;
    CHECK(plan[0].served.size() == *expect);
    double covered = 0.0;
    for (const auto& c : contributors(cm, net))
      if (std::find(plan[0].served.begin(), plan[0].served.end(), c.node) != plan[0].served.end())
        covered += c.sending_rate;
    CHECK(covered >= additional_resources(cm) - 1e-9);
  }
  CHECK(planned > 50);
}
