#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mobilecc/energy.hpp"
#include "mobilecc/engine.hpp"
#include "support.hpp"

using namespace mobilecc;

TEST_CASE("per-state energy") {
  CHECK(node_energy(EnergyLedger{}) == 0.0);

  EnergyLedger tx;
  tx.transmit_ticks = kTicksPerSecond;
  CHECK(node_energy(tx) == 58.5);

  EnergyLedger lpm;
  lpm.lpm_ticks = kTicksPerSecond;
  CHECK(node_energy(lpm) == doctest::Approx(0.1635).epsilon(1e-12));

  EnergyLedger listen;
  listen.listen_ticks = kTicksPerSecond;
  CHECK(node_energy(listen) == doctest::Approx(65.4).epsilon(1e-12));

  EnergyLedger cpu;
  cpu.cpu_ticks = kTicksPerSecond;
  CHECK(node_energy(cpu) == doctest::Approx(5.4).epsilon(1e-12));
}

TEST_CASE("ledger arithmetic matches the current table") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::uint64_t> t(0, 50'000'000);
  for (int i = 0; i < 100; ++i) {
    EnergyLedger l{t(rng), t(rng), t(rng), t(rng)};
    const double expect = (l.transmit_ticks * 19.5 + l.listen_ticks * 21.8 + l.cpu_ticks * 1.8 +
                           l.lpm_ticks * 0.0545) * 3.0 / 32768.0;
    CHECK(node_energy(l) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(node_energy(l, EnergyScale::literal) == doctest::Approx(64.0 * expect).epsilon(1e-12));
  }
}

TEST_CASE("tick conversion floors") {
  CHECK(ns_to_ticks(0) == 0);
  CHECK(ns_to_ticks(-5) == 0);
  CHECK(ns_to_ticks(kNanosPerSecond) == kTicksPerSecond);
  CHECK(ns_to_ticks(30'517) == 0);  // just under one tick
  CHECK(ns_to_ticks(30'518) == 1);
}

TEST_CASE("total energy is linear under duplication") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint64_t> t(0, 1'000'000);
  Network once, twice;
  for (std::uint32_t id = 1; id <= 20; ++id) {
    auto n = testsupport::make_node({id, id == 1 ? NodeKind::sink : NodeKind::fixed, double(id), 0});
    n.energy = {t(rng), t(rng), t(rng), t(rng)};
    auto copy = n;
    copy.id = NodeId{id + 100};
    copy.kind = NodeKind::fixed;
    once.add_node(n);
    twice.add_node(n);
    twice.add_node(copy);
  }
  CHECK(total_energy(twice) == doctest::Approx(2.0 * total_energy(once)).epsilon(1e-12));
}

TEST_CASE("simulated idle nodes") {
  // Isolated nodes with no traffic burn identical energy each.
  auto build = [](std::uint32_t count) {
    std::vector<testsupport::Spec> specs{{1, NodeKind::sink, 0, 0}};
    for (std::uint32_t i = 0; i < count; ++i) specs.push_back({2 + i, NodeKind::fixed, 100.0 * (i + 1), 0});
    return testsupport::make_network(specs);
  };
  SimConfig cfg;
  cfg.sim_time = 20;
  const auto one = run(build(4), cfg);
  const auto two = run(build(8), cfg);
  const double per_node = one.total_energy / 5.0;
  CHECK(per_node > 0.0);
  CHECK(two.total_energy == doctest::Approx(9.0 * per_node).epsilon(1e-12));

  SUBCASE("idle mobile in the pool still counts") {
    auto net = build(4);
    net.add_node(testsupport::make_node({50, NodeKind::mobile, 1, 0}));
    build_neighbor_tables(net);
    compute_levels(net);
    CHECK(run(net, cfg).total_energy > one.total_energy);
  }
  SUBCASE("literal scale") {
    auto lit = cfg;
    lit.energy_scale = EnergyScale::literal;
    CHECK(run(build(4), lit).total_energy == doctest::Approx(64.0 * one.total_energy).epsilon(1e-12));
  }
}
