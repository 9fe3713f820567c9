#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dwfilter/lp.hpp"

namespace dwf {

// An extreme point of one block, expressed as a master column. All master
// rows are in >= form: linking rows sum_k A^k x^k >= b, and one convexity
// row per block sigma_k * sum lambda >= sigma_k.
struct Column {
  int block = 0;
  double cost = 0.0;
  std::vector<Entry> linking;  // sorted by row, nonzero values only
  double convexity = 1.0;      // sigma_k
  std::vector<int> native;     // arc sequence (paths) or item set (assignments)
};

struct PricingResult {
  double reduced_cost = 0.0;  // +inf when the block has no extreme point
  std::optional<Column> column;
};

// Linking rows touched by a block's generated columns (I(k,t)).
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<int> rows);

  void insert(std::span<const int> rows);
  bool contains(int row) const;
  std::span<const int> rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<int> rows_;  // sorted, unique
};

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plug-in contract for a block-structured master problem.
//
// Implementations must be safe to call concurrently from several threads for
// distinct blocks; the engine never mutates a problem.
class BlockProblem {
 public:
  virtual ~BlockProblem() = default;

  virtual int num_blocks() const = 0;
  virtual int num_linking_rows() const = 0;
  virtual double linking_rhs(int row) const = 0;
  // sigma_k in {+1, -1}: the convexity row is sigma_k * sum lambda >= sigma_k.
  virtual double convexity_sign(int block) const = 0;
  // Upper bound on the magnitude of any column cost; sizes the artificial penalty.
  virtual double cost_scale() const = 0;

  virtual std::vector<Column> initial_columns() const = 0;

  // Exact minimum reduced cost over the block's extreme points, with one minimizer.
  virtual PricingResult solve_pricing(int block, std::span<const double> pi, double mu) const = 0;

  // min over the binary hypercube of ((pi_l - pi_t) A^k) x. Always <= 0.
  virtual double hypercube_bound_term(int block, std::span<const double> pi_l,
                                      std::span<const double> pi_t) const = 0;
  // Same sum restricted to native variables whose linking row is in `support`.
  virtual double heuristic_bound_term(int block, std::span<const double> pi_l,
                                      std::span<const double> pi_t,
                                      const SupportSet& support) const = 0;

  // Linking rows a column touches; defaults to its nonzero coefficient rows.
  virtual std::vector<int> support_rows(const Column& column) const;
};

// Union of support_rows over a block's columns.
SupportSet support_set(const BlockProblem& problem, int block, std::span<const Column> columns);

// cost - pi . A^k x - sigma_k mu_k
double reduced_cost(const Column& column, std::span<const double> pi, double mu);

// Sum of min(0, d_i).
double sum_negative_parts(std::span<const double> values);

}  // namespace dwf
