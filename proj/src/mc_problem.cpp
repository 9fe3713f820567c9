#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "dwfilter/mc.hpp"

namespace dwf {

Digraph::Digraph(int num_nodes, std::span<const Arc> arcs)
    : num_nodes_(num_nodes), out_(num_nodes), in_(num_nodes) {
  tail_.reserve(arcs.size());
  head_.reserve(arcs.size());
  delay_.reserve(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Arc& arc = arcs[a];
    if (arc.tail < 0 || arc.tail >= num_nodes || arc.head < 0 || arc.head >= num_nodes)
      throw std::invalid_argument("arc " + std::to_string(a) + " references an unknown vertex");
    tail_.push_back(arc.tail);
    head_.push_back(arc.head);
    delay_.push_back(arc.delay);
    out_[arc.tail].push_back(static_cast<int>(a));
    in_[arc.head].push_back(static_cast<int>(a));
  }
}

std::vector<double> Digraph::min_delay_to(int target) const {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(num_nodes_, inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[target] = 0.0;
  pq.emplace(0.0, target);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (int a : in_[v]) {
      int u = tail_[a];
      double nd = d + delay_[a];
      if (nd < dist[u]) {
        dist[u] = nd;
        pq.emplace(nd, u);
      }
    }
  }
  return dist;
}

namespace {

struct Label {
  double cost;
  double delay;
  int vertex;
  bool dead;
  std::vector<int> path;
};

bool visits(const Digraph& g, const Label& l, int source, int v) {
  if (v == source) return true;
  return std::any_of(l.path.begin(), l.path.end(), [&](int a) { return g.head(a) == v; });
}

// a dominates b: no worse in cost, delay and arc-sequence order.
bool dominates(const Label& a, const Label& b) {
  return a.cost <= b.cost && a.delay <= b.delay && a.path <= b.path;
}

}  // namespace

std::optional<RcspPath> rcsp(const Digraph& graph, std::span<const double> weights, double delay_bound,
                             int source, int target) {
  return rcsp(graph, weights, delay_bound, source, target, graph.min_delay_to(target));
}

std::optional<RcspPath> rcsp(const Digraph& graph, std::span<const double> weights, double delay_bound,
                             int source, int target, std::span<const double> min_delay_to_target) {
  if (weights.size() != static_cast<std::size_t>(graph.num_arcs()))
    throw std::invalid_argument("rcsp: one weight per arc required");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("rcsp: arc weights must be nonnegative");
  if (!(min_delay_to_target[source] <= delay_bound)) return std::nullopt;

  std::vector<Label> labels;
  std::vector<std::vector<int>> at(graph.num_nodes());
  auto later = [&](int x, int y) {
    const Label& a = labels[x];
    const Label& b = labels[y];
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.path > b.path;
  };
  std::priority_queue<int, std::vector<int>, decltype(later)> open(later);

  auto push = [&](Label&& cand) {
    for (int idx : at[cand.vertex]) {
      if (!labels[idx].dead && dominates(labels[idx], cand)) return;
    }
    for (int idx : at[cand.vertex]) {
      if (!labels[idx].dead && dominates(cand, labels[idx])) labels[idx].dead = true;
    }
    labels.push_back(std::move(cand));
    int id = static_cast<int>(labels.size()) - 1;
    at[labels[id].vertex].push_back(id);
    open.push(id);
  };

  push(Label{0.0, 0.0, source, false, {}});
  while (!open.empty()) {
    int id = open.top();
    open.pop();
    if (labels[id].dead) continue;
    if (labels[id].vertex == target) return RcspPath{labels[id].cost, labels[id].path};
    const int v = labels[id].vertex;
    for (int a : graph.out_arcs(v)) {
      const Label& cur = labels[id];
      int h = graph.head(a);
      double nd = cur.delay + graph.delay(a);
      if (nd + min_delay_to_target[h] > delay_bound) continue;
      if (visits(graph, cur, source, h)) continue;
      Label next{cur.cost + weights[a], nd, h, false, cur.path};
      next.path.push_back(a);
      push(std::move(next));
    }
  }
  return std::nullopt;
}

McProblem::McProblem(McInstance instance) : instance_(std::move(instance)), graph_(instance_.num_nodes, instance_.arcs) {
  for (std::size_t k = 0; k < instance_.commodities.size(); ++k) {
    const Commodity& c = instance_.commodities[k];
    if (c.source < 0 || c.source >= instance_.num_nodes || c.target < 0 || c.target >= instance_.num_nodes ||
        c.source == c.target || !(c.bandwidth > 0.0))
      throw std::invalid_argument("commodity " + std::to_string(k) + " is malformed");
    min_delay_.push_back(graph_.min_delay_to(c.target));
    if (!(min_delay_.back()[c.source] <= c.max_delay)) throw UnroutableError(static_cast<int>(k));
  }
}

double McProblem::cost_scale() const {
  double total = 0.0;
  for (const Arc& a : instance_.arcs) total += a.cost;
  double b = 0.0;
  for (const Commodity& c : instance_.commodities) b = std::max(b, c.bandwidth);
  return b * total;
}

Column McProblem::path_column(int block, std::span<const int> path) const {
  const Commodity& c = instance_.commodities[block];
  Column col;
  col.block = block;
  col.convexity = 1.0;
  col.native.assign(path.begin(), path.end());
  double r = 0.0;
  for (int a : path) {
    r += instance_.arcs[a].cost;
    col.linking.push_back({a, -c.bandwidth});
  }
  col.cost = c.bandwidth * r;
  std::sort(col.linking.begin(), col.linking.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
  return col;
}

std::vector<Column> McProblem::initial_columns() const {
  std::vector<Column> cols;
  std::vector<double> delays(graph_.num_arcs());
  for (int a = 0; a < graph_.num_arcs(); ++a) delays[a] = graph_.delay(a);
  for (int k = 0; k < num_blocks(); ++k) {
    const Commodity& c = instance_.commodities[k];
    auto p = rcsp(graph_, delays, c.max_delay, c.source, c.target, min_delay_[k]);
    if (!p) throw UnroutableError(k);
    cols.push_back(path_column(k, p->arcs));
  }
  return cols;
}

PricingResult McProblem::solve_pricing(int block, std::span<const double> pi, double mu) const {
  const Commodity& c = instance_.commodities[block];
  std::vector<double> w(graph_.num_arcs());
  for (int a = 0; a < graph_.num_arcs(); ++a) w[a] = c.bandwidth * (instance_.arcs[a].cost + pi[a]);
  auto p = rcsp(graph_, w, c.max_delay, c.source, c.target, min_delay_[block]);
  if (!p) return {std::numeric_limits<double>::infinity(), std::nullopt};
  return {p->cost - mu, path_column(block, p->arcs)};
}

double McProblem::hypercube_bound_term(int block, std::span<const double> pi_l,
                                       std::span<const double> pi_t) const {
  if (pi_l.size() != pi_t.size() || pi_t.size() != static_cast<std::size_t>(graph_.num_arcs()))
    throw std::invalid_argument("dual vectors must have one entry per arc");
  const double b = instance_.commodities[block].bandwidth;
  double s = 0.0;
  for (std::size_t a = 0; a < pi_t.size(); ++a) s += std::min(0.0, -b * (pi_l[a] - pi_t[a]));
  return s;
}

double McProblem::heuristic_bound_term(int block, std::span<const double> pi_l, std::span<const double> pi_t,
                                       const SupportSet& support) const {
  if (pi_l.size() != pi_t.size() || pi_t.size() != static_cast<std::size_t>(graph_.num_arcs()))
    throw std::invalid_argument("dual vectors must have one entry per arc");
  const double b = instance_.commodities[block].bandwidth;
  double s = 0.0;
  for (int a : support.rows()) s += std::min(0.0, -b * (pi_l[a] - pi_t[a]));
  return s;
}

std::vector<int> McProblem::support_rows(const Column& column) const { return column.native; }

}  // namespace dwf
