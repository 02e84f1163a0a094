#include "mobilecc/sweep.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mobilecc/engine.hpp"
#include "mobilecc/error.hpp"

namespace mobilecc {

using nlohmann::ordered_json;

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  try {
    if (text.find(',') == std::string::npos) {
      const auto n = std::stoull(text);
      for (std::uint64_t s = 1; s <= n; ++s) out.push_back(s);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    }
  } catch (const std::logic_error&) {
    throw Error(Errc::configuration, "bad seed list '" + text + "'");
  }
  if (out.empty()) throw Error(Errc::configuration, "no seeds");
  return out;
}

double per_source_rate(const Scenario& scenario, double rate, bool per_source) {
  return per_source ? rate : rate / static_cast<double>(scenario.source_count());
}

std::string run_stem(const std::string& scenario, Algorithm a, double rate, std::uint64_t seed) {
  return scenario + "__" + std::string(to_string(a)) + "__" + format_number(rate) + "__" +
         std::to_string(seed);
}

std::string metrics_to_json(const RunMetrics& m) {
  ordered_json placements = ordered_json::array();
  for (const auto& p : m.placements) {
    ordered_json served = ordered_json::array();
    for (auto id : p.served) served.push_back(raw(id));
    placements.push_back({{"mobile", raw(p.mobile)},
                          {"congested", raw(p.congested)},
                          {"target", {p.target.x, p.target.y}},
                          {"served", served},
                          {"next_hop", raw(p.next_hop)},
                          {"dispatched_at", p.dispatched_at},
                          {"activated_at", p.activated_at}});
  }
  ordered_json nodes = ordered_json::array();
  for (const auto& n : m.nodes) {
    nodes.push_back({{"id", raw(n.id)},
                     {"kind", static_cast<int>(n.kind)},
                     {"received", n.received},
                     {"transmitted", n.transmitted},
                     {"dropped", n.dropped},
                     {"ticks",
                      {n.ledger.transmit_ticks, n.ledger.listen_ticks, n.ledger.cpu_ticks,
                       n.ledger.lpm_ticks}},
                     {"energy_mj", n.energy_mj}});
  }
  ordered_json j{{"generated", m.generated},
                 {"delivered", m.delivered},
                 {"dropped", m.dropped},
                 {"residual", m.residual},
                 {"delivery_ratio", m.delivery_ratio},
                 {"mean_delay_s", m.mean_delay},
                 {"total_energy_mj", m.total_energy},
                 {"mobiles_used", m.mobiles_used},
                 {"cms_sent", m.cms_sent},
                 {"cms_delivered", m.cms_delivered},
                 {"cms_lost", m.cms_lost},
                 {"events", m.events},
                 {"placements", placements},
                 {"nodes", nodes}};
  return j.dump(1);
}

RunMetrics metrics_from_json(const std::string& text) {
  RunMetrics m;
  try {
    const auto j = ordered_json::parse(text);
    m.generated = j.at("generated");
    m.delivered = j.at("delivered");
    m.dropped = j.at("dropped");
    m.residual = j.at("residual");
    m.delivery_ratio = j.at("delivery_ratio");
    m.mean_delay = j.at("mean_delay_s");
    m.total_energy = j.at("total_energy_mj");
    m.mobiles_used = j.at("mobiles_used");
    m.cms_sent = j.at("cms_sent");
    m.cms_delivered = j.at("cms_delivered");
    m.cms_lost = j.at("cms_lost");
    m.events = j.at("events");
    for (const auto& p : j.at("placements")) {
      PlacementRecord r;
      r.mobile = NodeId{p.at("mobile").get<std::uint32_t>()};
      r.congested = NodeId{p.at("congested").get<std::uint32_t>()};
      r.target = {p.at("target").at(0), p.at("target").at(1)};
      for (const auto& s : p.at("served")) r.served.push_back(NodeId{s.get<std::uint32_t>()});
      r.next_hop = NodeId{p.at("next_hop").get<std::uint32_t>()};
      r.dispatched_at = p.at("dispatched_at");
      r.activated_at = p.at("activated_at");
      m.placements.push_back(std::move(r));
    }
    for (const auto& n : j.at("nodes")) {
      NodeReport r;
      r.id = NodeId{n.at("id").get<std::uint32_t>()};
      r.kind = static_cast<NodeKind>(n.at("kind").get<int>());
      r.received = n.at("received");
      r.transmitted = n.at("transmitted");
      r.dropped = n.at("dropped");
      const auto& t = n.at("ticks");
      r.ledger = {t.at(0), t.at(1), t.at(2), t.at(3)};
      r.energy_mj = n.at("energy_mj");
      m.nodes.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("run record: ") + e.what());
  }
  return m;
}

namespace {

struct Job {
  Algorithm algorithm;
  double rate;
  std::uint64_t seed;
};

std::optional<RunMetrics> load_existing(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return metrics_from_json(buf.str());
  } catch (const Error&) {
    return std::nullopt;  // partial or corrupt record: run again
  }
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + tmp);
    out << text;
    if (!out.flush()) throw Error(Errc::io, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace

SweepResult run_sweep(const Scenario& scenario, const SweepOptions& options) {
  const auto& rates = options.rates.empty() ? scenario.rates : options.rates;
  if (rates.empty()) throw Error(Errc::configuration, "no rates to sweep");
  if (options.algorithms.empty()) throw Error(Errc::configuration, "no algorithms to sweep");

  std::vector<Job> jobs;
  for (auto a : options.algorithms)
    for (double r : rates)
      for (auto s : options.seeds) jobs.push_back({a, r, s});

  std::optional<std::filesystem::path> runs_dir, trace_dir;
  if (options.out_dir) {
    runs_dir = *options.out_dir / "runs";
    std::filesystem::create_directories(*runs_dir);
    if (options.trace) {
      trace_dir = *options.out_dir / "traces";
      std::filesystem::create_directories(*trace_dir);
    }
  }

  const Network network = build_network(scenario);
  std::vector<std::optional<RunMetrics>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::vector<char> reused(jobs.size(), 0);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& job = jobs[i];
      const auto stem = run_stem(scenario.name, job.algorithm, job.rate, job.seed);
      try {
        if (runs_dir) {
          if (auto existing = load_existing(*runs_dir / (stem + ".json"))) {
            results[i] = std::move(existing);
            reused[i] = 1;
            continue;
          }
        }
        SimConfig cfg = options.base;
        cfg.algorithm = job.algorithm;
        cfg.seed = job.seed;
        cfg.source_rate = per_source_rate(scenario, job.rate, options.per_source_rates);

        TraceSink sink;
        std::ofstream trace_out;
        if (trace_dir) {
          trace_out.open(*trace_dir / (stem + ".log"), std::ios::binary | std::ios::trunc);
          if (!trace_out) throw Error(Errc::io, "cannot open trace for " + stem);
          trace_out << "# time_s kind node uid detail\n";
          sink = [&trace_out](const TraceEvent& e) { trace_out << format_trace(e) << '\n'; };
        }
        results[i] = run(network, cfg, sink);
        if (runs_dir) write_file(*runs_dir / (stem + ".json"), metrics_to_json(*results[i]));
      } catch (const std::exception& e) {
        errors[i] = stem + ": " + e.what();
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.jobs, jobs.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  SweepResult out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i]) {
      out.failures.push_back(errors[i]);
      continue;
    }
    (reused[i] ? out.reused : out.executed) += 1;
    out.records.push_back({scenario.name, jobs[i].algorithm, jobs[i].rate, jobs[i].seed,
                           std::move(*results[i])});
  }
  return out;
}

}  // namespace mobilecc
