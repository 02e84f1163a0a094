#include "mobilecc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "mobilecc/error.hpp"

namespace mobilecc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(Errc::parse, "line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) fail(line, "not a number: '" + v + "'");
    return d;
  } catch (const std::logic_error&) {
    fail(line, "not a number: '" + v + "'");
  }
}

std::uint64_t to_uint(const std::string& v, std::size_t line) {
  const double d = to_double(v, line);
  if (d < 0 || d != std::floor(d)) fail(line, "not a non-negative integer: '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

std::vector<double> to_list(const std::string& v, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line));
  if (out.empty()) fail(line, "empty list");
  return out;
}

void apply_setting(Scenario& sc, const std::string& key, const std::string& value, std::size_t line) {
  auto& d = sc.defaults;
  if (key == "name") sc.name = value;
  else if (key == "rates") sc.rates = to_list(value, line);
  else if (key == "sim_time") d.sim_time = to_double(value, line);
  else if (key == "tx_range") d.tx_range = to_double(value, line);
  else if (key == "queue_len") d.queue_len = to_uint(value, line);
  else if (key == "channel_rate") d.channel_rate = to_double(value, line);
  else if (key == "sample_period") d.sample_period = to_double(value, line);
  else if (key == "mobile_speed") d.mobile_speed = to_double(value, line);
  else if (key == "packet_bytes") d.packet_bytes = static_cast<std::uint32_t>(to_uint(value, line));
  else fail(line, "unknown setting '" + key + "'");
}

void apply_generator(GeneratorSpec& g, const std::string& key, const std::string& value,
                     std::size_t line) {
  if (key == "rows") g.rows = static_cast<std::uint32_t>(to_uint(value, line));
  else if (key == "cols") g.cols = static_cast<std::uint32_t>(to_uint(value, line));
  else if (key == "spacing") g.spacing = to_double(value, line);
  else if (key == "nodes") g.nodes = static_cast<std::uint32_t>(to_uint(value, line));
  else if (key == "source_probability") g.source_probability = to_double(value, line);
  else if (key == "source_region") g.source_region = to_double(value, line);
  else if (key == "sink_region") g.sink_region = to_double(value, line);
  else if (key == "pool") g.pool = static_cast<std::uint32_t>(to_uint(value, line));
  else if (key == "seed") g.seed = to_uint(value, line);
  else fail(line, "unknown generator key '" + key + "'");
}

NodeSpec parse_node(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  std::string id, kind, x, y, extra;
  if (!(in >> id >> kind >> x >> y)) fail(line, "node rows are '<id> <kind> <x> <y>'");
  if (in >> extra) fail(line, "trailing field '" + extra + "'");
  NodeSpec spec;
  const auto raw_id = to_uint(id, line);
  if (raw_id == 0 || raw_id > UINT32_MAX) fail(line, "node id must be a positive 32-bit integer");
  spec.id = NodeId{static_cast<std::uint32_t>(raw_id)};
  if (kind == "sink") spec.kind = NodeKind::sink;
  else if (kind == "fixed") spec.kind = NodeKind::fixed;
  else if (kind == "source") {
    spec.kind = NodeKind::fixed;
    spec.source = true;
  } else if (kind == "mobile") spec.kind = NodeKind::mobile;
  else fail(line, "unknown node kind '" + kind + "'");
  spec.position = {to_double(x, line), to_double(y, line)};
  return spec;
}

void validate(const Scenario& sc) {
  if (sc.name.empty()) throw Error(Errc::parse, "scenario has no name");
  std::set<NodeId> ids;
  std::size_t sinks = 0;
  for (const auto& n : sc.nodes) {
    if (!ids.insert(n.id).second) throw Error(Errc::parse, "duplicate node id " + to_string(n.id));
    if (n.kind == NodeKind::sink) ++sinks;
  }
  if (sinks != 1)
    throw Error(Errc::parse, "scenario needs exactly one sink, found " + std::to_string(sinks));
  if (sc.source_count() == 0) throw Error(Errc::parse, "scenario has no source nodes");
  for (double r : sc.rates)
    if (!(r > 0)) throw Error(Errc::parse, "rates must be positive");
  try {
    sc.defaults.validate();
  } catch (const Error& e) {
    throw Error(Errc::parse, e.what());
  }
}

}  // namespace

std::size_t Scenario::source_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(),
                                                [](const NodeSpec& n) { return n.source; }));
}

std::size_t Scenario::pool_size() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const NodeSpec& n) { return n.kind == NodeKind::mobile; }));
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  enum class Section { settings, nodes, generator } section = Section::settings;
  GeneratorSpec gen;
  bool has_generator = false;

  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t line = 0;
  while (std::getline(in, raw_line)) {
    ++line;
    auto hash = raw_line.find('#');
    const std::string body = trim(std::string_view(raw_line).substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body == "[nodes]") section = Section::nodes;
      else if (body == "[generator]") {
        section = Section::generator;
        has_generator = true;
      } else fail(line, "unknown section " + body);
      continue;
    }
    if (section == Section::nodes) {
      sc.nodes.push_back(parse_node(body, line));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) fail(line, "missing value for '" + key + "'");
    if (section == Section::generator) apply_generator(gen, key, value, line);
    else apply_setting(sc, key, value, line);
  }

  if (has_generator) {
    if (!sc.nodes.empty()) throw Error(Errc::parse, "a scenario takes a node table or a generator, not both");
    sc.generator = gen;
    sc.nodes = generate_nodes(gen);
  }
  validate(sc);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open scenario " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::vector<NodeSpec> generate_nodes(const GeneratorSpec& g) {
  const std::uint32_t cells = g.rows * g.cols;
  if (g.rows == 0 || g.cols == 0 || g.nodes < 2 || g.nodes > cells)
    throw Error(Errc::parse, "generator needs 2 <= nodes <= rows*cols");
  if (!(g.spacing > 0)) throw Error(Errc::parse, "generator spacing must be positive");

  std::mt19937_64 rng(g.seed);
  auto col_of = [&](std::uint32_t c) { return c % g.cols; };
  auto row_of = [&](std::uint32_t c) { return c / g.cols; };  // row 0 is the bottom
  auto in_sink_region = [&](std::uint32_t c) {
    return col_of(c) + 1 > g.cols - std::max(1u, static_cast<std::uint32_t>(std::lround(g.cols * g.sink_region))) &&
           row_of(c) + 1 > g.rows - std::max(1u, static_cast<std::uint32_t>(std::lround(g.rows * g.sink_region)));
  };
  auto in_source_region = [&](std::uint32_t c) {
    return col_of(c) < std::max(1u, static_cast<std::uint32_t>(std::lround(g.cols * g.source_region))) &&
           row_of(c) < std::max(1u, static_cast<std::uint32_t>(std::lround(g.rows * g.source_region)));
  };

  std::vector<std::uint32_t> sink_cells;
  for (std::uint32_t c = 0; c < cells; ++c)
    if (in_sink_region(c)) sink_cells.push_back(c);
  const auto sink_cell = sink_cells[std::uniform_int_distribution<std::size_t>(0, sink_cells.size() - 1)(rng)];

  std::vector<std::uint32_t> rest;
  for (std::uint32_t c = 0; c < cells; ++c)
    if (c != sink_cell) rest.push_back(c);
  // Partial Fisher-Yates: the first nodes-1 entries become the fixed nodes.
  for (std::uint32_t i = 0; i + 1 < g.nodes; ++i) {
    const auto j = std::uniform_int_distribution<std::size_t>(i, rest.size() - 1)(rng);
    std::swap(rest[i], rest[j]);
  }
  rest.resize(g.nodes - 1);
  std::sort(rest.begin(), rest.end());

  auto position = [&](std::uint32_t c) {
    return Point{col_of(c) * g.spacing, row_of(c) * g.spacing};
  };

  std::vector<NodeSpec> out;
  const Point sink_pos = position(sink_cell);
  out.push_back({NodeId{1}, NodeKind::sink, sink_pos, false});
  std::uint32_t next_id = 2;
  std::bernoulli_distribution pick(g.source_probability);
  bool any_source = false;
  for (auto c : rest) {
    const bool source = in_source_region(c) && pick(rng);
    any_source |= source;
    out.push_back({NodeId{next_id++}, NodeKind::fixed, position(c), source});
  }
  if (!any_source) {
    for (auto& n : out) {
      if (n.kind == NodeKind::fixed && n.position.x < g.cols * g.source_region * g.spacing &&
          n.position.y < g.rows * g.source_region * g.spacing) {
        n.source = true;
        break;
      }
    }
  }
  // Mobiles wait on a 1 m ring around the sink.
  for (std::uint32_t i = 0; i < g.pool; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / std::max(1u, g.pool);
    out.push_back({NodeId{next_id++}, NodeKind::mobile,
                   {sink_pos.x + std::cos(angle), sink_pos.y + std::sin(angle)}, false});
  }
  return out;
}

Network build_network(const Scenario& scenario) {
  Network net;
  for (const auto& spec : scenario.nodes) {
    NodeState node;
    node.id = spec.id;
    node.kind = spec.kind;
    node.position = spec.position;
    node.is_source = spec.source;
    node.tx_range = scenario.defaults.tx_range;
    node.queue_capacity = scenario.defaults.queue_len;
    net.add_node(std::move(node));
  }
  build_neighbor_tables(net);
  compute_levels(net);
  return net;
}

}  // namespace mobilecc
