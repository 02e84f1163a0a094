#include "mobilecc/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <json.hpp>

#include "mobilecc/error.hpp"

namespace mobilecc {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

Summary summarize(std::span<const SweepRecord> records, double (*get)(const RunMetrics&)) {
  Summary s;
  const auto n = static_cast<double>(records.size());
  for (const auto& r : records) s.mean += get(r.metrics);
  s.mean /= n;
  if (records.size() > 1) {
    double ss = 0.0;
    for (const auto& r : records) ss += (get(r.metrics) - s.mean) * (get(r.metrics) - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

nlohmann::ordered_json to_json(const Summary& s) {
  return {{"mean", s.mean}, {"std", s.stddev}};
}

}  // namespace

Aggregate aggregate(std::span<const SweepRecord> records) {
  if (records.empty()) throw Error(Errc::invalid_aggregation, "no records to aggregate");
  Aggregate a;
  a.scenario = records.front().scenario;
  a.algorithm = records.front().algorithm;
  a.rate_pps = records.front().rate_pps;
  a.runs = records.size();
  a.generated = summarize(records, [](const RunMetrics& m) { return double(m.generated); });
  a.delivered = summarize(records, [](const RunMetrics& m) { return double(m.delivered); });
  a.dropped = summarize(records, [](const RunMetrics& m) { return double(m.dropped); });
  a.delivery_ratio = summarize(records, [](const RunMetrics& m) { return m.delivery_ratio; });
  a.mean_delay = summarize(records, [](const RunMetrics& m) { return m.mean_delay; });
  a.total_energy = summarize(records, [](const RunMetrics& m) { return m.total_energy; });
  a.mobiles_used = summarize(records, [](const RunMetrics& m) { return double(m.mobiles_used); });
  return a;
}

std::vector<Aggregate> aggregate_all(std::span<const SweepRecord> records) {
  using Key = std::tuple<std::string, int, double>;
  std::map<Key, std::vector<SweepRecord>> groups;
  for (const auto& r : records)
    groups[{r.scenario, static_cast<int>(r.algorithm), r.rate_pps}].push_back(r);
  std::vector<Aggregate> out;
  for (const auto& [key, group] : groups) out.push_back(aggregate(group));
  return out;
}

std::string csv_header() {
  return "scenario,algorithm,rate_pps,seed,generated,delivered,dropped,delivery_ratio,"
         "mean_delay_s,total_energy_mj,mobiles_used";
}

std::string csv_row(const SweepRecord& r) {
  const auto& m = r.metrics;
  std::string row = r.scenario;
  row += ',';
  row += to_string(r.algorithm);
  row += ',' + format_number(r.rate_pps);
  row += ',' + std::to_string(r.seed);
  row += ',' + std::to_string(m.generated);
  row += ',' + std::to_string(m.delivered);
  row += ',' + std::to_string(m.dropped);
  row += ',' + format_number(m.delivery_ratio);
  row += ',' + format_number(m.mean_delay);
  row += ',' + format_number(m.total_energy);
  row += ',' + std::to_string(m.mobiles_used);
  return row;
}

void emit(std::span<const SweepRecord> records, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream csv(dir / "results.csv", std::ios::binary | std::ios::trunc);
  if (!csv) throw Error(Errc::io, "cannot write " + (dir / "results.csv").string());
  csv << csv_header() << '\n';
  for (const auto& r : records) csv << csv_row(r) << '\n';
  if (!csv.flush()) throw Error(Errc::io, "write failed for results.csv");

  auto groups = nlohmann::ordered_json::array();
  if (!records.empty()) {
    for (const auto& a : aggregate_all(records)) {
      groups.push_back({{"scenario", a.scenario},
                        {"algorithm", std::string(to_string(a.algorithm))},
                        {"rate_pps", a.rate_pps},
                        {"runs", a.runs},
                        {"generated", to_json(a.generated)},
                        {"delivered", to_json(a.delivered)},
                        {"dropped", to_json(a.dropped)},
                        {"delivery_ratio", to_json(a.delivery_ratio)},
                        {"mean_delay_s", to_json(a.mean_delay)},
                        {"total_energy_mj", to_json(a.total_energy)},
                        {"mobiles_used", to_json(a.mobiles_used)}});
    }
  }
  nlohmann::ordered_json summary{{"energy_model", "always-listening radios, no duty cycling"},
                                 {"aggregates", groups}};
  std::ofstream js(dir / "summary.json", std::ios::binary | std::ios::trunc);
  if (!js) throw Error(Errc::io, "cannot write " + (dir / "summary.json").string());
  js << summary.dump(2) << '\n';
  if (!js.flush()) throw Error(Errc::io, "write failed for summary.json");
}

}  // namespace mobilecc
