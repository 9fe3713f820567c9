#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dwfilter/block_problem.hpp"
#include "dwfilter/parse_error.hpp"

namespace dwf {

// Multi-commodity flow with per-commodity delay budgets.
struct Arc {
  int tail = 0;
  int head = 0;
  double capacity = 0.0;
  double delay = 0.0;
  double cost = 0.0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Commodity {
  int source = 0;
  int target = 0;
  double bandwidth = 1.0;
  double max_delay = 0.0;
  friend bool operator==(const Commodity&, const Commodity&) = default;
};

struct McInstance {
  int num_nodes = 0;
  std::vector<Arc> arcs;
  std::vector<Commodity> commodities;
  friend bool operator==(const McInstance&, const McInstance&) = default;
};

class UnroutableError : public std::runtime_error {
 public:
  explicit UnroutableError(int commodity);
  int commodity() const { return commodity_; }

 private:
  int commodity_;
};

// Format, one record per line, '#' starts a comment:
//   nodes N
//   arc tail head capacity delay cost
//   commodity source target bandwidth maxdelay
McInstance parse_mc_instance(std::string_view text);
std::string write_mc_instance(const McInstance& instance);

struct McGeneratorSpec {
  int nodes = 8;
  int arcs = 16;
  int commodities = 4;
  std::uint64_t seed = 1;
};

// Seeded grid-like instances: a bidirectional chain over all nodes, then
// vertical grid links, then random arcs. Capacities always admit the
// min-delay routing, so the master is feasible without artificials.
McInstance generate_mc_instance(const McGeneratorSpec& spec);

// Adjacency view of an instance's arcs.
class Digraph {
 public:
  Digraph(int num_nodes, std::span<const Arc> arcs);

  int num_nodes() const { return num_nodes_; }
  int num_arcs() const { return static_cast<int>(tail_.size()); }
  int tail(int a) const { return tail_[a]; }
  int head(int a) const { return head_[a]; }
  double delay(int a) const { return delay_[a]; }
  std::span<const int> out_arcs(int v) const { return out_[v]; }
  std::span<const int> in_arcs(int v) const { return in_[v]; }

  // Minimum delay from every vertex to `target` (+inf when unreachable).
  std::vector<double> min_delay_to(int target) const;

 private:
  int num_nodes_;
  std::vector<int> tail_, head_;
  std::vector<double> delay_;
  std::vector<std::vector<int>> out_, in_;
};

struct RcspPath {
  double cost = 0.0;
  std::vector<int> arcs;
};

// Resource-constrained shortest simple path: minimum total weight subject to
// total delay <= delay_bound. Label setting with (cost, delay) dominance and
// delay pruning. Weights must be nonnegative.
std::optional<RcspPath> rcsp(const Digraph& graph, std::span<const double> weights, double delay_bound,
                             int source, int target);
std::optional<RcspPath> rcsp(const Digraph& graph, std::span<const double> weights, double delay_bound,
                             int source, int target, std::span<const double> min_delay_to_target);

class McProblem final : public BlockProblem {
 public:
  // Throws UnroutableError when a commodity has no delay-feasible path.
  explicit McProblem(McInstance instance);

  const McInstance& instance() const { return instance_; }
  const Digraph& graph() const { return graph_; }

  int num_blocks() const override { return static_cast<int>(instance_.commodities.size()); }
  int num_linking_rows() const override { return graph_.num_arcs(); }
  double linking_rhs(int row) const override { return -instance_.arcs[row].capacity; }
  double convexity_sign(int) const override { return 1.0; }
  double cost_scale() const override;

  std::vector<Column> initial_columns() const override;
  PricingResult solve_pricing(int block, std::span<const double> pi, double mu) const override;
  double hypercube_bound_term(int block, std::span<const double> pi_l,
                              std::span<const double> pi_t) const override;
  double heuristic_bound_term(int block, std::span<const double> pi_l, std::span<const double> pi_t,
                              const SupportSet& support) const override;
  std::vector<int> support_rows(const Column& column) const override;

  // Master column for a commodity routed along `path`.
  Column path_column(int block, std::span<const int> path) const;

 private:
  McInstance instance_;
  Digraph graph_;
  std::vector<std::vector<double>> min_delay_;  // per commodity, to its target
};

}  // namespace dwf
