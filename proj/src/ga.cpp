#include "dwfilter/ga.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dwfilter/rng.hpp"
#include "text_records.hpp"

namespace dwf {

GeneratedGa generate_ga_detailed(int bins, int items, std::uint64_t seed) {
  if (bins < 1 || items < 0) throw std::invalid_argument("generator needs bins >= 1 and items >= 0");
  Rng rng(seed);
  GeneratedGa g;
  GaInstance& inst = g.instance;
  inst.items = items;
  inst.bins = bins;
  const std::size_t pairs = static_cast<std::size_t>(items) * bins;
  inst.cost.resize(pairs);
  inst.weight.resize(pairs);
  for (auto& c : inst.cost) c = static_cast<int>(rng.uniform_int(1, 100));
  for (auto& w : inst.weight) w = static_cast<int>(rng.uniform_int(5, 20));
  g.hidden_assignment.resize(items);
  for (auto& b : g.hidden_assignment) b = static_cast<int>(rng.uniform_int(0, bins - 1));
  std::vector<int> load(bins, 0);
  std::vector<bool> used(bins, false);
  for (int i = 0; i < items; ++i) {
    int b = g.hidden_assignment[i];
    load[b] += inst.weight_of(i, b);
    used[b] = true;
  }
  inst.capacity.resize(bins);
  for (int k = 0; k < bins; ++k)
    inst.capacity[k] = used[k] ? load[k] + 1 : static_cast<int>(rng.uniform_int(5, 100));
  return g;
}

GaInstance generate_ga_instance(int bins, int items, std::uint64_t seed) {
  return generate_ga_detailed(bins, items, seed).instance;
}

GaInstance parse_ga_instance(std::string_view text) {
  using detail::LineParser;
  GaInstance inst;
  bool have_header = false;
  std::vector<bool> bin_seen, pair_seen;
  int lines = detail::for_each_record(text, [&](int line_no, const std::vector<detail::Token>& tokens) {
    LineParser lp(line_no, tokens);
    std::string_view kw = tokens[0].text;
    if (kw == "ga") {
      if (have_header) throw ParseError(line_no, 1, "duplicate `ga` header");
      lp.expect_count(3, "ga m K");
      inst.items = lp.integer(1);
      inst.bins = lp.integer(2);
      if (inst.items < 0) throw ParseError(line_no, lp.column(1), "item count must be nonnegative");
      if (inst.bins < 1) throw ParseError(line_no, lp.column(2), "bin count must be positive");
      const std::size_t pairs = static_cast<std::size_t>(inst.items) * inst.bins;
      inst.cost.assign(pairs, 0);
      inst.weight.assign(pairs, 0);
      inst.capacity.assign(inst.bins, 0);
      bin_seen.assign(inst.bins, false);
      pair_seen.assign(pairs, false);
      have_header = true;
    } else if (!have_header) {
      throw ParseError(line_no, 1, "expected `ga m K` header first");
    } else if (kw == "bin") {
      lp.expect_count(3, "bin k capacity");
      int k = lp.index(1, inst.bins, "bin");
      if (bin_seen[k]) throw ParseError(line_no, lp.column(1), "bin defined twice");
      int cap = lp.integer(2);
      if (cap < 0) throw ParseError(line_no, lp.column(2), "capacity must be nonnegative");
      inst.capacity[k] = cap;
      bin_seen[k] = true;
    } else if (kw == "item") {
      lp.expect_count(5, "item i k cost weight");
      int i = lp.index(1, inst.items, "item");
      int k = lp.index(2, inst.bins, "bin");
      std::size_t at = static_cast<std::size_t>(i) * inst.bins + k;
      if (pair_seen[at]) throw ParseError(line_no, lp.column(1), "item/bin pair defined twice");
      int c = lp.integer(3);
      int w = lp.integer(4);
      if (c < 0) throw ParseError(line_no, lp.column(3), "cost must be nonnegative");
      if (w < 0) throw ParseError(line_no, lp.column(4), "weight must be nonnegative");
      inst.cost[at] = c;
      inst.weight[at] = w;
      pair_seen[at] = true;
    } else {
      throw ParseError(line_no, 1, "unknown record `" + std::string(kw) + "`");
    }
  });
  if (!have_header) throw ParseError(lines, 1, "missing `ga m K` header");
  for (int k = 0; k < inst.bins; ++k)
    if (!bin_seen[k]) throw ParseError(lines, 1, "bin " + std::to_string(k) + " has no capacity record");
  for (std::size_t p = 0; p < pair_seen.size(); ++p)
    if (!pair_seen[p])
      throw ParseError(lines, 1,
                       "missing item record for item " + std::to_string(p / inst.bins) + ", bin " +
                           std::to_string(p % inst.bins));
  return inst;
}

std::string write_ga_instance(const GaInstance& inst) {
  std::ostringstream os;
  os << "ga " << inst.items << ' ' << inst.bins << '\n';
  for (int k = 0; k < inst.bins; ++k) os << "bin " << k << ' ' << inst.capacity[k] << '\n';
  for (int i = 0; i < inst.items; ++i)
    for (int k = 0; k < inst.bins; ++k)
      os << "item " << i << ' ' << k << ' ' << inst.cost_of(i, k) << ' ' << inst.weight_of(i, k) << '\n';
  return os.str();
}

KnapsackResult knapsack_min(std::span<const double> values, std::span<const int> weights, int capacity) {
  if (values.size() != weights.size()) throw std::invalid_argument("knapsack: values/weights size mismatch");
  if (capacity < 0) throw std::invalid_argument("knapsack: negative capacity");
  std::vector<int> cand;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("knapsack: negative weight");
    if (values[i] < 0.0 && weights[i] <= capacity) cand.push_back(static_cast<int>(i));
  }
  const int n = static_cast<int>(cand.size());
  const int width = capacity + 1;
  // Suffix DP over candidates: best over items j..n-1 with capacity c.
  std::vector<double> val(width, 0.0), next_val(width);
  std::vector<int> size(width, 0), next_size(width);
  std::vector<char> take(static_cast<std::size_t>(n) * width, 0);
  for (int j = n - 1; j >= 0; --j) {
    const int i = cand[j];
    const int w = weights[i];
    for (int c = 0; c < width; ++c) {
      next_val[c] = val[c];
      next_size[c] = size[c];
      if (w > c) continue;
      double tv = values[i] + val[c - w];
      int ts = size[c - w] + 1;
      // On equal value and size the set holding item i is lexicographically smaller.
      if (tv < val[c] || (tv == val[c] && ts <= size[c])) {
        next_val[c] = tv;
        next_size[c] = ts;
        take[static_cast<std::size_t>(j) * width + c] = 1;
      }
    }
    std::swap(val, next_val);
    std::swap(size, next_size);
  }
  KnapsackResult r;
  r.value = val[capacity];
  int c = capacity;
  for (int j = 0; j < n; ++j) {
    if (take[static_cast<std::size_t>(j) * width + c]) {
      r.items.push_back(cand[j]);
      c -= weights[cand[j]];
    }
  }
  return r;
}

GaProblem::GaProblem(GaInstance instance) : instance_(std::move(instance)) {
  const std::size_t pairs = static_cast<std::size_t>(instance_.items) * instance_.bins;
  if (instance_.bins < 1 || instance_.items < 0 || instance_.cost.size() != pairs ||
      instance_.weight.size() != pairs || instance_.capacity.size() != static_cast<std::size_t>(instance_.bins))
    throw std::invalid_argument("malformed GA instance");
  for (std::size_t p = 0; p < pairs; ++p)
    if (instance_.cost[p] < 0 || instance_.weight[p] < 0) throw std::invalid_argument("GA data must be nonnegative");
  for (int cap : instance_.capacity)
    if (cap < 0) throw std::invalid_argument("GA capacities must be nonnegative");
}

double GaProblem::cost_scale() const {
  double total = 0.0;
  for (int i = 0; i < instance_.items; ++i) {
    int best = 0;
    for (int k = 0; k < instance_.bins; ++k) best = std::max(best, instance_.cost_of(i, k));
    total += best;
  }
  return total;
}

Column GaProblem::assignment_column(int block, std::span<const int> items) const {
  Column col;
  col.block = block;
  col.convexity = -1.0;
  col.native.assign(items.begin(), items.end());
  std::sort(col.native.begin(), col.native.end());
  double cost = 0.0;
  for (int i : col.native) {
    cost += instance_.cost_of(i, block);
    col.linking.push_back({i, 1.0});
  }
  col.cost = cost;
  return col;
}

std::vector<Column> GaProblem::initial_columns() const {
  std::vector<Column> cols;
  cols.reserve(instance_.bins);
  for (int k = 0; k < instance_.bins; ++k) cols.push_back(assignment_column(k, {}));
  return cols;
}

PricingResult GaProblem::solve_pricing(int block, std::span<const double> pi, double mu) const {
  const int m = instance_.items;
  std::vector<double> values(m);
  std::vector<int> weights(m);
  for (int i = 0; i < m; ++i) {
    values[i] = instance_.cost_of(i, block) - pi[i];
    weights[i] = instance_.weight_of(i, block);
  }
  KnapsackResult kr = knapsack_min(values, weights, instance_.capacity[block]);
  return {kr.value + mu, assignment_column(block, kr.items)};
}

double GaProblem::hypercube_bound_term(int, std::span<const double> pi_l, std::span<const double> pi_t) const {
  if (pi_l.size() != pi_t.size() || pi_t.size() != static_cast<std::size_t>(instance_.items))
    throw std::invalid_argument("dual vectors must have one entry per item");
  double s = 0.0;
  for (std::size_t i = 0; i < pi_t.size(); ++i) s += std::min(0.0, pi_l[i] - pi_t[i]);
  return s;
}

double GaProblem::heuristic_bound_term(int, std::span<const double> pi_l, std::span<const double> pi_t,
                                       const SupportSet& support) const {
  if (pi_l.size() != pi_t.size() || pi_t.size() != static_cast<std::size_t>(instance_.items))
    throw std::invalid_argument("dual vectors must have one entry per item");
  double s = 0.0;
  for (int i : support.rows()) s += std::min(0.0, pi_l[i] - pi_t[i]);
  return s;
}

std::vector<int> GaProblem::support_rows(const Column& column) const { return column.native; }

}  // namespace dwf
