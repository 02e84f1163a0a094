#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mobilecc/config.hpp"
#include "mobilecc/geometry.hpp"
#include "mobilecc/node_id.hpp"

namespace mobilecc {

struct PlacementRecord {
  NodeId mobile{};
  NodeId congested{};
  Point target;
  std::vector<NodeId> served;
  NodeId next_hop{};
  double dispatched_at = 0.0;
  double activated_at = -1.0;  // -1 when the mobile never went live

  friend bool operator==(const PlacementRecord&, const PlacementRecord&) = default;
};

struct NodeReport {
  NodeId id{};
  NodeKind kind = NodeKind::fixed;
  std::uint64_t received = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t dropped = 0;
  EnergyLedger ledger;
  double energy_mj = 0.0;

  friend bool operator==(const NodeReport&, const NodeReport&) = default;
};

struct RunMetrics {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t residual = 0;  // queued or in flight at the end
  double delivery_ratio = 1.0;
  double mean_delay = 0.0;  // s, delivered packets only
  double total_energy = 0.0;  // mJ
  std::uint32_t mobiles_used = 0;
  std::uint64_t cms_sent = 0;
  std::uint64_t cms_delivered = 0;
  std::uint64_t cms_lost = 0;
  std::uint64_t events = 0;
  std::vector<PlacementRecord> placements;
  std::vector<NodeReport> nodes;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

struct SweepRecord {
  std::string scenario;
  Algorithm algorithm = Algorithm::baseline;
  double rate_pps = 0.0;
  std::uint64_t seed = 0;
  RunMetrics metrics;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single record
};

struct Aggregate {
  std::string scenario;
  Algorithm algorithm = Algorithm::baseline;
  double rate_pps = 0.0;
  std::size_t runs = 0;
  Summary generated, delivered, dropped, delivery_ratio, mean_delay, total_energy, mobiles_used;
};

/// Mean and sample standard deviation over records of one configuration.
/// Throws invalid_aggregation on empty input.
Aggregate aggregate(std::span<const SweepRecord> records);

/// Group by (scenario, algorithm, rate) in sorted order and aggregate each.
std::vector<Aggregate> aggregate_all(std::span<const SweepRecord> records);

/// Writes `results.csv` and `summary.json` into `dir`. Byte-stable for
/// identical input. Throws Errc::io when the directory is unwritable.
void emit(std::span<const SweepRecord> records, const std::filesystem::path& dir);

/// One CSV row (no trailing newline) and the header it matches.
std::string csv_header();
std::string csv_row(const SweepRecord& record);

/// Shortest round-trip decimal for a double; used for every emitted number.
std::string format_number(double v);

}  // namespace mobilecc
