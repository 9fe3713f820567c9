#include "dwfilter/dwd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

namespace dwf {

namespace {

// Float slack on "c >= -epsilon" when auditing; bound arithmetic rounds.
constexpr double kAuditSlack = 1e-9;

struct BlockOutcome {
  FilterDecision decision;
  bool priced = false;
  PricingResult pricing;
  std::optional<double> audit_reduced_cost;
  bool mismatch = false;
};

bool matches_reported(const PricingResult& r, std::span<const double> pi, double mu) {
  if (!r.column) return true;
  double recomputed = reduced_cost(*r.column, pi, mu);
  return std::abs(recomputed - r.reduced_cost) <= 1e-7 * (1.0 + std::abs(r.reduced_cost));
}

BlockOutcome evaluate_block(const BlockProblem& problem, const DwdConfig& config,
                            const FilterContext& ctx, int k, const DualSolution& duals,
                            std::span<const PricingRecord> history, const SupportSet& support) {
  BlockOutcome out;
  out.decision = should_filter(ctx, k, duals.pi, duals.mu[k], history, support);
  if (!out.decision.skip) {
    out.priced = true;
    out.pricing = problem.solve_pricing(k, duals.pi, duals.mu[k]);
    if (config.audit) out.mismatch = !matches_reported(out.pricing, duals.pi, duals.mu[k]);
  } else if (config.audit) {
    out.audit_reduced_cost = problem.solve_pricing(k, duals.pi, duals.mu[k]).reduced_cost;
  }
  return out;
}

}  // namespace

std::string to_string(BlockAction action) {
  switch (action) {
    case BlockAction::Priced: return "priced";
    case BlockAction::Filtered: return "filtered";
    case BlockAction::SkippedEvicted: return "skipped-evicted";
  }
  return "unknown";
}

std::string to_string(Termination termination) {
  return termination == Termination::Optimal ? "optimal" : "iteration-limit";
}

double artificial_cost(const BlockProblem& problem, std::span<const Column> initial_columns) {
  double scale = std::abs(problem.cost_scale());
  for (const Column& c : initial_columns) scale = std::max(scale, std::abs(c.cost));
  return 1e4 * (scale + 1.0);
}

DwdResult run_dwd(const BlockProblem& problem, const DwdConfig& config) {
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("pricing tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();

  const int num_blocks = problem.num_blocks();
  const int num_linking = problem.num_linking_rows();
  const int num_rows = num_linking + num_blocks;

  LpModel master;
  for (int r = 0; r < num_linking; ++r) master.add_row(RowSense::GreaterEqual, problem.linking_rhs(r));
  for (int k = 0; k < num_blocks; ++k)
    master.add_row(RowSense::GreaterEqual, problem.convexity_sign(k));

  DwdResult result;
  result.columns = problem.initial_columns();
  result.artificial_cost = artificial_cost(problem, result.columns);
  for (int r = 0; r < num_rows; ++r) {
    Entry e{r, 1.0};
    master.add_column(result.artificial_cost, std::span<const Entry>(&e, 1));
  }

  std::vector<SupportSet> support(num_blocks);
  std::vector<Entry> coeffs;
  auto column_entries = [&](const Column& c) -> std::span<const Entry> {
    if (c.block < 0 || c.block >= num_blocks) throw StructuralError("column references unknown block");
    coeffs.assign(c.linking.begin(), c.linking.end());
    coeffs.push_back({num_linking + c.block, c.convexity});
    return coeffs;
  };
  for (const Column& c : result.columns) {
    master.add_column(c.cost, column_entries(c));
    support[c.block].insert(problem.support_rows(c));
  }
  SimplexSolver rmp(std::move(master));

  DualStore store(config.retention);
  result.history.assign(num_blocks, {});
  result.columns_per_block.assign(num_blocks, 0);
  const FilterContext ctx{problem, store, config.mode, config.strategy, config.epsilon};
  std::vector<BlockOutcome> outcomes(num_blocks);
  std::vector<std::exception_ptr> errors(num_blocks);

  LpSolution sol;
  auto solve_rmp = [&] {
    sol = rmp.solve();
    result.stats.lp_iterations += sol.iterations;
    if (sol.status != LpStatus::Optimal)
      throw StructuralError("restricted master is " + to_string(sol.status));
  };

  int t = 0;
  while (true) {
    ++t;
    solve_rmp();
    DualSolution duals;
    duals.iteration = t;
    duals.pi.resize(num_linking);
    duals.mu.resize(num_blocks);
    // All master rows are >=; clip round-off so pricing weights stay nonnegative.
    for (int r = 0; r < num_linking; ++r) duals.pi[r] = std::max(0.0, sol.duals[r]);
    for (int k = 0; k < num_blocks; ++k) duals.mu[k] = std::max(0.0, sol.duals[num_linking + k]);
    store.push(t, duals.pi);

#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
    for (int k = 0; k < num_blocks; ++k) {
      try {
        outcomes[k] = evaluate_block(problem, config, ctx, k, duals, result.history[k], support[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);

    IterationTrace iter_trace;
    if (config.trace) {
      iter_trace.iteration = t;
      iter_trace.objective = sol.objective;
    }
    bool optimal = true;
    for (int k = 0; k < num_blocks; ++k) {
      BlockOutcome& o = outcomes[k];
      result.stats.bounds_evaluated += o.decision.bounds_evaluated;
      if (o.decision.bounds_evaluated > 0) ++result.stats.filters_attempted;
      BlockTrace bt;
      bt.block = k;
      bt.bound = o.decision.best_bound;
      bt.bounds_evaluated = o.decision.bounds_evaluated;
      bt.reduced_cost = std::numeric_limits<double>::quiet_NaN();
      if (o.decision.skip) {
        ++result.stats.filters_succeeded;
        bt.action = BlockAction::Filtered;
        if (o.audit_reduced_cost) {
          double c = *o.audit_reduced_cost;
          bt.reduced_cost = c;
          ++result.audit.filtered_checked;
          result.audit.worst_filtered_reduced_cost = std::min(result.audit.worst_filtered_reduced_cost, c);
          if (c < -config.epsilon - kAuditSlack) ++result.audit.filter_violations;
        }
      } else {
        bt.action = o.decision.records_evicted > 0 && o.decision.bounds_evaluated == 0
                        ? BlockAction::SkippedEvicted
                        : BlockAction::Priced;
        ++result.stats.calls;
        if (o.mismatch) ++result.audit.reduced_cost_mismatches;
        const double c = o.pricing.reduced_cost;
        bt.reduced_cost = c;
        if (std::isfinite(c)) result.history[k].push_back({t, c, duals.mu[k]});
        if (c < -config.epsilon && o.pricing.column) {
          optimal = false;
          Column& col = *o.pricing.column;
          rmp.add_column(col.cost, column_entries(col));
          support[k].insert(problem.support_rows(col));
          result.columns.push_back(std::move(col));
          ++result.stats.vars;
          ++result.columns_per_block[k];
          bt.column_added = true;
        }
      }
      if (config.trace) iter_trace.blocks.push_back(bt);
      o = BlockOutcome{};
    }
    if (config.trace) result.trace.push_back(std::move(iter_trace));
    result.final_duals = std::move(duals);

    if (optimal) {
      result.termination = Termination::Optimal;
      break;
    }
    if (t >= config.max_iterations) {
      result.termination = Termination::IterationLimit;
      solve_rmp();
      break;
    }
  }
  result.stats.iterations = t;

  if (config.audit) {
    const DualSolution& d = result.final_duals;
    std::vector<double> finals(num_blocks);
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
    for (int k = 0; k < num_blocks; ++k) finals[k] = problem.solve_pricing(k, d.pi, d.mu[k]).reduced_cost;
    if (result.termination == Termination::Optimal)
      for (double c : finals)
        if (c < -config.epsilon - kAuditSlack) ++result.audit.final_sweep_violations;
  }

  result.objective = sol.objective;
  result.artificial_values.assign(sol.primal.begin(), sol.primal.begin() + num_rows);
  result.column_values.assign(sol.primal.begin() + num_rows, sol.primal.end());
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace dwf
