// mobilecc: run congestion-relief sweeps over a scenario file.
//
//   mobilecc --scenario scenarios/example26.scn --algorithm all --seeds 50 --out out/
//
// Writes out/results.csv, out/summary.json and one record per run under
// out/runs/. Exit status is 0 only when every run completed.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mobilecc/error.hpp"
#include "mobilecc/metrics.hpp"
#include "mobilecc/scenario.hpp"
#include "mobilecc/sweep.hpp"

namespace {

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double r = std::stod(item, &used);
    if (used != item.size() || !(r > 0)) throw std::invalid_argument("bad rate '" + item + "'");
    out.push_back(r);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile-node congestion relief simulator for wireless sensor networks"};

  std::string scenario_path;
  std::string algorithm = "all";
  std::string rates_text;
  std::string per_source_text;
  std::string seeds_text = "1";
  std::optional<double> sim_time;
  std::optional<double> mobile_speed;
  std::string out_dir = "out";
  bool trace = false;
  unsigned jobs = 1;
  bool lifetime_window = false;
  bool literal_energy = false;
  bool any_in_range = false;

  app.add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  app.add_option("--algorithm", algorithm, "baseline|dynamic|direct|all")
      ->check(CLI::IsMember({"baseline", "dynamic", "direct", "all"}));
  auto* rates_opt = app.add_option("--rates", rates_text, "Aggregate offered loads, pkts/s (comma list)");
  auto* per_opt =
      app.add_option("--per-source-rates", per_source_text, "Per-source loads, pkts/s (comma list)");
  rates_opt->excludes(per_opt);
  app.add_option("--seeds", seeds_text, "Seed count n (seeds 1..n) or comma list");
  app.add_option("--sim-time", sim_time, "Simulated seconds");
  app.add_option("--mobile-speed", mobile_speed, "Mobile travel speed, m/s");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--trace", trace, "Write one event log per run");
  app.add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  app.add_flag("--lifetime-window", lifetime_window,
               "Additional-resources rate over the node lifetime instead of the detection window");
  app.add_flag("--any-in-range-collisions", any_in_range,
               "Any transmitter within range of a receiver spoils its reception");
  app.add_flag("--literal-energy", literal_energy,
               "Evaluate the energy scale factor as written (x8/4096) instead of /32768");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto scenario = mobilecc::load_scenario(scenario_path);
    mobilecc::SweepOptions opts;
    if (algorithm != "all") opts.algorithms = {*mobilecc::parse_algorithm(algorithm)};
    if (!rates_text.empty()) opts.rates = parse_rates(rates_text);
    if (!per_source_text.empty()) {
      opts.rates = parse_rates(per_source_text);
      opts.per_source_rates = true;
    }
    opts.seeds = mobilecc::parse_seeds(seeds_text);
    opts.base = scenario.defaults;
    if (sim_time) opts.base.sim_time = *sim_time;
    if (mobile_speed) opts.base.mobile_speed = *mobile_speed;
    opts.base.lifetime_window = lifetime_window;
    if (any_in_range) opts.base.interference = mobilecc::Interference::any_in_range;
    if (literal_energy) opts.base.energy_scale = mobilecc::EnergyScale::literal;
    opts.base.validate();
    opts.jobs = jobs;
    opts.out_dir = out_dir;
    opts.trace = trace;

    const auto result = mobilecc::run_sweep(scenario, opts);
    mobilecc::emit(result.records, out_dir);

    std::cerr << "runs: " << result.executed << " executed, " << result.reused << " reused, "
              << result.failures.size() << " failed\n";
    for (const auto& f : result.failures) std::cerr << "  failed " << f << '\n';
    for (const auto& a : mobilecc::aggregate_all(result.records)) {
      std::cout << a.scenario << ' ' << to_string(a.algorithm) << " rate=" << a.rate_pps
                << " delivery=" << a.delivery_ratio.mean << " delay_s=" << a.mean_delay.mean
                << " energy_mj=" << a.total_energy.mean << " mobiles=" << a.mobiles_used.mean
                << " (n=" << a.runs << ")\n";
    }
    return result.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "mobilecc: " << e.what() << '\n';
    return 2;
  }
}
