#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dwfilter/block_problem.hpp"
#include "dwfilter/parse_error.hpp"

namespace dwf {

// Generalized assignment: m items, |K| bins, integer costs and weights per
// (item, bin) pair, integer capacity per bin.
struct GaInstance {
  int items = 0;
  int bins = 0;
  std::vector<int> cost;    // [item * bins + bin]
  std::vector<int> weight;  // [item * bins + bin]
  std::vector<int> capacity;

  int cost_of(int item, int bin) const { return cost[static_cast<std::size_t>(item) * bins + bin]; }
  int weight_of(int item, int bin) const { return weight[static_cast<std::size_t>(item) * bins + bin]; }

  friend bool operator==(const GaInstance&, const GaInstance&) = default;
};

struct GaFamily {
  const char* name;
  int bins;
  int items;
};

// Shapes of the E1..E9 random families (bins outnumber items).
inline constexpr std::array<GaFamily, 9> kEFamilies{{
    {"E1", 100, 10},
    {"E2", 100, 50},
    {"E3", 100, 100},
    {"E4", 1000, 10},
    {"E5", 1000, 50},
    {"E6", 1000, 100},
    {"E7", 5000, 10},
    {"E8", 5000, 50},
    {"E9", 5000, 100},
}};

struct GeneratedGa {
  GaInstance instance;
  std::vector<int> hidden_assignment;  // bin of each item used to size capacities
};

// Costs uniform in [1,100], weights in [5,20]. Each item is assigned to a
// uniformly random bin; a bin's capacity is the weight of its assigned items
// plus one, or uniform in [5,100] when it received none.
// Draw order: all costs (item-major), all weights, the assignment, then the
// empty-bin capacities in bin order.
GeneratedGa generate_ga_detailed(int bins, int items, std::uint64_t seed);
GaInstance generate_ga_instance(int bins, int items, std::uint64_t seed);

// Format: `ga m K`, then `bin k capacity` and `item i k cost weight` records.
GaInstance parse_ga_instance(std::string_view text);
std::string write_ga_instance(const GaInstance& instance);

struct KnapsackResult {
  double value = 0.0;
  std::vector<int> items;  // ascending
};

// min sum v_i x_i s.t. sum w_i x_i <= capacity, x binary, by dynamic
// programming over capacities. Ties prefer fewer items, then the
// lexicographically smallest item set.
KnapsackResult knapsack_min(std::span<const double> values, std::span<const int> weights, int capacity);

class GaProblem final : public BlockProblem {
 public:
  explicit GaProblem(GaInstance instance);

  const GaInstance& instance() const { return instance_; }

  int num_blocks() const override { return instance_.bins; }
  int num_linking_rows() const override { return instance_.items; }
  double linking_rhs(int) const override { return 1.0; }
  double convexity_sign(int) const override { return -1.0; }
  double cost_scale() const override;

  std::vector<Column> initial_columns() const override;
  PricingResult solve_pricing(int block, std::span<const double> pi, double mu) const override;
  double hypercube_bound_term(int block, std::span<const double> pi_l,
                              std::span<const double> pi_t) const override;
  double heuristic_bound_term(int block, std::span<const double> pi_l, std::span<const double> pi_t,
                              const SupportSet& support) const override;
  std::vector<int> support_rows(const Column& column) const override;

  Column assignment_column(int block, std::span<const int> items) const;

 private:
  GaInstance instance_;
};

}  // namespace dwf
