#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <sstream>

#include "dwfilter/mc.hpp"
#include "dwfilter/rng.hpp"
#include "text_records.hpp"

namespace dwf {

UnroutableError::UnroutableError(int commodity)
    : std::runtime_error("commodity " + std::to_string(commodity) + " has no delay-feasible path"),
      commodity_(commodity) {}


McInstance parse_mc_instance(std::string_view text) {
  using detail::LineParser;
  McInstance inst;
  bool have_nodes = false;
  int lines = detail::for_each_record(text, [&](int line_no, const std::vector<detail::Token>& tokens) {
    LineParser lp(line_no, tokens);
    std::string_view kw = tokens[0].text;
    if (kw == "nodes") {
      if (have_nodes) throw ParseError(line_no, 1, "duplicate `nodes` record");
      lp.expect_count(2, "nodes N");
      inst.num_nodes = lp.integer(1);
      if (inst.num_nodes < 1) throw ParseError(line_no, lp.column(1), "node count must be positive");
      have_nodes = true;
    } else if (kw == "arc") {
      if (!have_nodes) throw ParseError(line_no, 1, "`arc` before `nodes`");
      lp.expect_count(6, "arc tail head capacity delay cost");
      Arc a;
      a.tail = lp.index(1, inst.num_nodes, "vertex");
      a.head = lp.index(2, inst.num_nodes, "vertex");
      a.capacity = lp.nonnegative(3, "capacity");
      a.delay = lp.nonnegative(4, "delay");
      a.cost = lp.nonnegative(5, "cost");
      if (a.tail == a.head) throw ParseError(line_no, lp.column(2), "self-loop arc");
      inst.arcs.push_back(a);
    } else if (kw == "commodity") {
      if (!have_nodes) throw ParseError(line_no, 1, "`commodity` before `nodes`");
      lp.expect_count(5, "commodity source target bandwidth maxdelay");
      Commodity c;
      c.source = lp.index(1, inst.num_nodes, "vertex");
      c.target = lp.index(2, inst.num_nodes, "vertex");
      c.bandwidth = lp.number(3);
      c.max_delay = lp.nonnegative(4, "maxdelay");
      if (c.source == c.target) throw ParseError(line_no, lp.column(2), "source equals target");
      if (!(c.bandwidth > 0.0)) throw ParseError(line_no, lp.column(3), "bandwidth must be positive");
      inst.commodities.push_back(c);
    } else {
      throw ParseError(line_no, 1, "unknown record `" + std::string(kw) + "`");
    }
  });
  if (!have_nodes) throw ParseError(lines, 1, "missing `nodes` record");
  return inst;
}

std::string write_mc_instance(const McInstance& inst) {
  std::ostringstream os;
  os << "nodes " << inst.num_nodes << '\n';
  for (const Arc& a : inst.arcs)
    os << "arc " << a.tail << ' ' << a.head << ' ' << detail::format_number(a.capacity) << ' '
       << detail::format_number(a.delay) << ' ' << detail::format_number(a.cost) << '\n';
  for (const Commodity& c : inst.commodities)
    os << "commodity " << c.source << ' ' << c.target << ' ' << detail::format_number(c.bandwidth) << ' '
       << detail::format_number(c.max_delay) << '\n';
  return os.str();
}

McInstance generate_mc_instance(const McGeneratorSpec& spec) {
  if (spec.nodes < 2) throw std::invalid_argument("generator needs at least 2 nodes");
  Rng rng(spec.seed);
  McInstance inst;
  inst.num_nodes = spec.nodes;
  const int n = spec.nodes;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));

  std::vector<std::pair<int, int>> pairs;
  auto has = [&](int u, int v) {
    return std::find(pairs.begin(), pairs.end(), std::make_pair(u, v)) != pairs.end();
  };
  auto add = [&](int u, int v) {
    if (static_cast<int>(pairs.size()) < spec.arcs && u != v && !has(u, v)) pairs.emplace_back(u, v);
  };
  for (int v = 0; v + 1 < n; ++v) {
    add(v, v + 1);
    add(v + 1, v);
  }
  for (int v = 0; v + cols < n; ++v) {
    add(v, v + cols);
    add(v + cols, v);
  }
  const long max_arcs = static_cast<long>(n) * (n - 1);
  while (static_cast<long>(pairs.size()) < std::min<long>(spec.arcs, max_arcs)) {
    int u = static_cast<int>(rng.uniform_int(0, n - 1));
    int v = static_cast<int>(rng.uniform_int(0, n - 1));
    add(u, v);
  }
  for (auto [u, v] : pairs) {
    Arc a;
    a.tail = u;
    a.head = v;
    a.delay = static_cast<double>(rng.uniform_int(1, 10));
    a.cost = static_cast<double>(rng.uniform_int(1, 20));
    inst.arcs.push_back(a);
  }

  Digraph g(n, inst.arcs);
  std::vector<double> delay_load(inst.arcs.size(), 0.0), cost_load(inst.arcs.size(), 0.0);
  std::vector<double> costs(inst.arcs.size());
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) costs[a] = inst.arcs[a].cost;
  int attempts = 0;
  while (static_cast<int>(inst.commodities.size()) < spec.commodities && attempts < 100 * spec.commodities + 100) {
    ++attempts;
    int s = static_cast<int>(rng.uniform_int(0, n - 1));
    int t = static_cast<int>(rng.uniform_int(0, n - 1));
    if (s == t) continue;
    auto to_t = g.min_delay_to(t);
    if (!std::isfinite(to_t[s])) continue;
    Commodity c;
    c.source = s;
    c.target = t;
    c.bandwidth = static_cast<double>(rng.uniform_int(1, 10));
    c.max_delay = std::floor(to_t[s] * (1.0 + 0.25 * static_cast<double>(rng.uniform_int(0, 4))));
    // Loads of the min-delay and of the cheapest delay-feasible routing.
    std::vector<double> delays(inst.arcs.size());
    for (std::size_t a = 0; a < inst.arcs.size(); ++a) delays[a] = inst.arcs[a].delay;
    auto fast = rcsp(g, delays, c.max_delay, s, t, to_t);
    auto cheap = rcsp(g, costs, c.max_delay, s, t, to_t);
    for (int a : fast->arcs) delay_load[a] += c.bandwidth;
    for (int a : cheap->arcs) cost_load[a] += c.bandwidth;
    inst.commodities.push_back(c);
  }
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    double tight = std::floor(cost_load[a] * (0.5 + 0.1 * static_cast<double>(rng.uniform_int(0, 10))));
    double cap = std::max(std::ceil(1.2 * delay_load[a]), tight);
    if (cap <= 0.0) cap = static_cast<double>(rng.uniform_int(5, 50));
    inst.arcs[a].capacity = cap;
  }
  return inst;
}

}  // namespace dwf
