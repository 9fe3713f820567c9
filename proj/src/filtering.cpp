#include "dwfilter/filtering.hpp"

#include <algorithm>
#include <stdexcept>

namespace dwf {

std::string to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::Baseline: return "baseline";
    case FilterMode::Exact: return "exact";
    case FilterMode::Heuristic: return "heur";
  }
  return "unknown";
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::All: return "all";
    case Strategy::Computed: return "computed";
    case Strategy::Add: return "add";
  }
  return "unknown";
}

DualStore::DualStore(std::optional<int> retention) : retention_(retention) {
  if (retention_ && *retention_ < 1) throw std::invalid_argument("dual retention must be >= 1");
}

void DualStore::push(int iteration, std::vector<double> pi) {
  if (!entries_.empty() && iteration <= entries_.back().iteration)
    throw std::invalid_argument("dual store iterations must increase");
  entries_.push_back({iteration, std::move(pi)});
  if (retention_)
    while (entries_.size() > static_cast<std::size_t>(*retention_)) entries_.pop_front();
}

const std::vector<double>* DualStore::find(int iteration) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), iteration,
                             [](const Stored& s, int t) { return s.iteration < t; });
  if (it == entries_.end() || it->iteration != iteration) return nullptr;
  return &it->pi;
}

double exact_bound(const PricingRecord& record, double mu_t, double sigma, double term) {
  return record.reduced_cost + sigma * (record.convexity_dual - mu_t) + term;
}

std::vector<PricingRecord> select_records(Strategy strategy, std::span<const PricingRecord> history,
                                          double epsilon) {
  std::vector<PricingRecord> out;
  if (history.empty()) return out;
  switch (strategy) {
    case Strategy::All:
      out.assign(history.rbegin(), history.rend());
      break;
    case Strategy::Computed:
      out.push_back(history.back());
      break;
    case Strategy::Add:
      for (auto it = history.rbegin(); it != history.rend(); ++it) {
        if (it->reduced_cost < -epsilon) {
          out.push_back(*it);
          break;
        }
      }
      break;
  }
  return out;
}

FilterDecision should_filter(const FilterContext& ctx, int block, std::span<const double> pi_t,
                             double mu_t, std::span<const PricingRecord> history,
                             const SupportSet& support) {
  FilterDecision d;
  d.block = block;
  if (ctx.mode == FilterMode::Baseline) return d;
  const double sigma = ctx.problem.convexity_sign(block);
  for (const PricingRecord& rec : select_records(ctx.strategy, history, ctx.epsilon)) {
    const std::vector<double>* pi_l = ctx.duals.find(rec.iteration);
    if (pi_l == nullptr) {
      ++d.records_evicted;
      continue;
    }
    double term = ctx.mode == FilterMode::Exact
                      ? ctx.problem.hypercube_bound_term(block, *pi_l, pi_t)
                      : ctx.problem.heuristic_bound_term(block, *pi_l, pi_t, support);
    double lb = exact_bound(rec, mu_t, sigma, term);
    ++d.bounds_evaluated;
    if (lb > d.best_bound) {
      d.best_bound = lb;
      d.record_iteration = rec.iteration;
    }
    if (lb >= -ctx.epsilon) {
      d.skip = true;
      break;
    }
  }
  return d;
}

}  // namespace dwf
