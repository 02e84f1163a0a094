#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mobilecc/congestion.hpp"
#include "mobilecc/error.hpp"
#include "mobilecc/scenario.hpp"
#include "support.hpp"

using namespace mobilecc;

namespace {

constexpr SimTime sec(double s) { return seconds_to_sim(s); }

// Node 3 of a short chain, with a hand-set window.
struct Fixture {
  Network net = testsupport::make_network({{1, NodeKind::sink, 0, 0},
                                           {2, NodeKind::fixed, 20, 0},
                                           {3, NodeKind::fixed, 40, 0},
                                           {4, NodeKind::fixed, 60, 5},
                                           {5, NodeKind::fixed, 60, -5}});
  NodeState& node = net.node(NodeId{3});
  DetectionParams params;

  Fixture() {
    node.data_queued = 6;
    node.window_start = sec(10);
    node.window_received = 100;
    node.window_transmitted = 70;
    node.find_neighbor(NodeId{4})->packets_received = 60;
    node.find_neighbor(NodeId{5})->packets_received = 40;
  }
};

}  // namespace

TEST_CASE("additional_resources arithmetic") {
  CHECK(additional_resources(100, 40, 20, 10) == doctest::Approx(6.0));
  CHECK(additional_resources(50, 50, 20, 10) == 0.0);
  CHECK(additional_resources(50, 50, 1000, 0) == 0.0);
  CHECK(additional_resources(8, 0, 1, 0) == doctest::Approx(8.0));
  CHECK(additional_resources(3, 9, 5, 0) == 0.0);
  CHECK_THROWS_AS(additional_resources(10, 1, 5, 5), Error);
  CHECK_THROWS_AS(additional_resources(10, 1, 4, 5), Error);
}

TEST_CASE("additional_resources is homogeneous in the counters") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> cnt(0, 10000);
  std::uniform_int_distribution<std::uint64_t> k(1, 50);
  std::uniform_real_distribution<double> t(0, 500);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t recv = cnt(rng), tran = cnt(rng);
    if (recv < tran) std::swap(recv, tran);
    const double t0 = t(rng), t1 = t0 + 1.0 + t(rng);
    const auto m = k(rng);
    CHECK(additional_resources(recv * m, tran * m, t1, t0) ==
          doctest::Approx(m * additional_resources(recv, tran, t1, t0)).epsilon(1e-12));
  }
}

TEST_CASE("detect") {
  Fixture f;
  DetectorState state;

  SUBCASE("full enough with a deficit") {
    const auto cm = detect(f.node, state, sec(20), f.params);
    REQUIRE(cm);
    CHECK(cm->congested == NodeId{3});
    CHECK(cm->level == 2);
    CHECK(cm->recv_count == 100);
    CHECK(cm->fwd_count == 70);
    CHECK(cm->window_start == doctest::Approx(10.0));
    CHECK(cm->detected_at == doctest::Approx(20.0));
    CHECK(cm->recv_per_period == doctest::Approx(10.0));
    CHECK(cm->fwd_per_period == doctest::Approx(7.0));
    CHECK(additional_resources(*cm) == doctest::Approx(3.0));
    CHECK(cm->neighbors.size() == f.node.neighbors.size());
  }
  SUBCASE("no deficit") {
    f.node.window_transmitted = 100;
    CHECK_FALSE(detect(f.node, state, sec(20), f.params));
  }
  SUBCASE("below the threshold") {
    f.node.data_queued = 5;
    CHECK_FALSE(detect(f.node, state, sec(20), f.params));
  }
  SUBCASE("cooldown") {
    REQUIRE(detect(f.node, state, sec(20), f.params));
    CHECK_FALSE(detect(f.node, state, sec(21), f.params));
    CHECK_FALSE(detect(f.node, state, sec(29.5), f.params));
    CHECK(detect(f.node, state, sec(30), f.params));
  }
  SUBCASE("never the sink or a radio-off node") {
    auto& sink = f.net.node(NodeId{1});
    sink.data_queued = 8;
    sink.window_received = 100;
    CHECK_FALSE(detect(sink, state, sec(20), f.params));
    f.node.radio_on = false;
    CHECK_FALSE(detect(f.node, state, sec(20), f.params));
  }
  SUBCASE("lifetime window") {
    f.params.lifetime_window = true;
    CHECK_FALSE(detect(f.node, state, sec(20), f.params));  // never transmitted
    f.node.t0 = sec(0);
    f.node.counters.received = 500;
    f.node.counters.transmitted = 300;
    const auto cm = detect(f.node, state, sec(20), f.params);
    REQUIRE(cm);
    CHECK(cm->window_start == 0.0);
    CHECK(additional_resources(*cm) == doctest::Approx(10.0));
  }
}

TEST_CASE("contributors") {
  Fixture f;
  DetectorState state;
  const auto cm = detect(f.node, state, sec(20), f.params);
  REQUIRE(cm);

  SUBCASE("rates, order and conservation") {
    const auto c = contributors(*cm, f.net);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == ContributorProfile{NodeId{4}, 6.0});
    CHECK(c[1] == ContributorProfile{NodeId{5}, 4.0});
    CHECK(c[0].sending_rate + c[1].sending_rate >=
          doctest::Approx(cm->recv_per_period / f.params.sample_period));
  }
  SUBCASE("ties break by id") {
    auto tied = *cm;
    for (auto& e : tied.neighbors) e.packets_received = 50;
    const auto c = contributors(tied, f.net);
    REQUIRE(c.size() == 2);
    CHECK(c[0].node == NodeId{4});
    CHECK(c[1].node == NodeId{5});
  }
  SUBCASE("downstream neighbors never count") {
    auto msg = *cm;
    msg.neighbors[0].packets_received = 999;  // node 2, one level down
    const auto c = contributors(msg, f.net);
    for (const auto& p : c) CHECK(p.node != NodeId{2});
  }
  SUBCASE("nobody upstream") {
    auto msg = *cm;
    for (auto& e : msg.neighbors) e.packets_received = 0;
    CHECK_THROWS_AS(contributors(msg, f.net), Error);
  }
}

TEST_CASE("example26 node 3 contributors come from upstream") {
  const auto net = build_network(load_scenario(testsupport::scenario_path("example26")));
  const auto& n3 = net.node(NodeId{3});
  CongestionMessage cm;
  cm.congested = n3.id;
  cm.level = *n3.level;
  cm.window_start = 0;
  cm.detected_at = 10;
  cm.recv_count = 0;
  cm.neighbors = n3.neighbors;
  for (auto& e : cm.neighbors) {
    e.packets_received = 25;
    cm.recv_count += 25;
  }
  cm.fwd_count = 50;
  const auto c = contributors(cm, net);
  std::vector<std::uint32_t> ids;
  for (const auto& p : c) ids.push_back(raw(p.node));
  CHECK(ids == std::vector<std::uint32_t>{19, 20, 21, 22});
}
