#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dwfilter/block_problem.hpp"

namespace dwf {

enum class FilterMode { Baseline, Exact, Heuristic };
enum class Strategy { All, Computed, Add };

std::string to_string(FilterMode mode);
std::string to_string(Strategy strategy);

// One exact pricing outcome of a block: (iteration, min reduced cost, mu_k).
struct PricingRecord {
  int iteration = 0;
  double reduced_cost = 0.0;
  double convexity_dual = 0.0;
};

// Past linking-row dual vectors, keyed by iteration. With a retention limit
// only the most recent `alpha` vectors stay retrievable.
class DualStore {
 public:
  explicit DualStore(std::optional<int> retention = std::nullopt);

  // Iterations must be pushed in strictly increasing order.
  void push(int iteration, std::vector<double> pi);
  // nullptr when the vector was evicted or never stored.
  const std::vector<double>* find(int iteration) const;

  std::size_t size() const { return entries_.size(); }
  std::optional<int> retention() const { return retention_; }

 private:
  struct Stored {
    int iteration;
    std::vector<double> pi;
  };
  std::optional<int> retention_;
  std::deque<Stored> entries_;
};

struct FilterDecision {
  int block = 0;
  bool skip = false;
  double best_bound = -std::numeric_limits<double>::infinity();
  int record_iteration = -1;  // record that produced best_bound
  int bounds_evaluated = 0;
  int records_evicted = 0;    // selected records whose dual vector was gone
};

// c_l + sigma (mu_l - mu_t) + term
double exact_bound(const PricingRecord& record, double mu_t, double sigma, double term);

// Records a strategy considers, newest first.
std::vector<PricingRecord> select_records(Strategy strategy, std::span<const PricingRecord> history,
                                          double epsilon);

struct FilterContext {
  const BlockProblem& problem;
  const DualStore& duals;
  FilterMode mode;
  Strategy strategy;
  double epsilon;
};

// Evaluates bounds for the selected records and stops at the first one >= -epsilon.
FilterDecision should_filter(const FilterContext& ctx, int block, std::span<const double> pi_t,
                             double mu_t, std::span<const PricingRecord> history,
                             const SupportSet& support);

}  // namespace dwf
