#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwfilter/block_problem.hpp"
#include "dwfilter/filtering.hpp"

namespace dwf {

struct DualSolution {
  int iteration = 0;
  std::vector<double> pi;  // linking rows
  std::vector<double> mu;  // convexity rows, one per block
};

struct DwdConfig {
  FilterMode mode = FilterMode::Baseline;
  Strategy strategy = Strategy::All;
  double epsilon = 1e-4;
  std::optional<int> retention;  // keep only the last alpha dual vectors
  int max_iterations = 100000;
  // Evaluate filters and pricing of distinct blocks with OpenMP. The merge is
  // always sequential in block order, so results match the serial path bit for bit.
  bool parallel = false;
  // Exactly price every filtered block (without recording it) and run a final sweep.
  bool audit = false;
  bool trace = false;
};

enum class BlockAction { Priced, Filtered, SkippedEvicted };
std::string to_string(BlockAction action);

struct BlockTrace {
  int block = 0;
  BlockAction action = BlockAction::Priced;
  double bound = 0.0;          // best bound evaluated, -inf if none
  double reduced_cost = 0.0;   // pricing result (audit value for filtered blocks), NaN if unknown
  int bounds_evaluated = 0;
  bool column_added = false;
};

struct IterationTrace {
  int iteration = 0;
  double objective = 0.0;
  std::vector<BlockTrace> blocks;
};

struct RunStats {
  long calls = 0;              // exact pricing solves
  long vars = 0;               // columns added by pricing
  long iterations = 0;
  long filters_attempted = 0;  // blocks with at least one bound evaluated
  long filters_succeeded = 0;
  long bounds_evaluated = 0;
  long lp_iterations = 0;
  double seconds = 0.0;
};

struct AuditStats {
  long filtered_checked = 0;
  long filter_violations = 0;        // filtered block whose exact c < -epsilon
  long final_sweep_violations = 0;   // block with c < -epsilon at termination
  long reduced_cost_mismatches = 0;  // pricing c vs recomputed reduced cost
  double worst_filtered_reduced_cost = std::numeric_limits<double>::infinity();
};

enum class Termination { Optimal, IterationLimit };
std::string to_string(Termination termination);

struct DwdResult {
  double objective = 0.0;
  Termination termination = Termination::Optimal;
  RunStats stats;
  AuditStats audit;
  std::vector<long> columns_per_block;  // added by pricing
  std::vector<Column> columns;          // every real column of the final RMP
  std::vector<double> column_values;
  std::vector<double> artificial_values;  // per master row
  double artificial_cost = 0.0;
  DualSolution final_duals;
  std::vector<std::vector<PricingRecord>> history;
  std::vector<IterationTrace> trace;
};

// Penalty cost of the engine's artificial columns for a problem.
double artificial_cost(const BlockProblem& problem, std::span<const Column> initial_columns);

// Column generation over the block problem's master, with optional pricing filtering.
DwdResult run_dwd(const BlockProblem& problem, const DwdConfig& config);

}  // namespace dwf
