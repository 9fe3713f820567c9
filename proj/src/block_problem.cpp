#include "dwfilter/block_problem.hpp"

#include <algorithm>
#include <stdexcept>

namespace dwf {

SupportSet::SupportSet(std::vector<int> rows) : rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end());
  rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

void SupportSet::insert(std::span<const int> rows) {
  if (rows.empty()) return;
  std::vector<int> add(rows.begin(), rows.end());
  std::sort(add.begin(), add.end());
  std::vector<int> merged;
  merged.reserve(rows_.size() + add.size());
  std::set_union(rows_.begin(), rows_.end(), add.begin(), add.end(), std::back_inserter(merged));
  rows_ = std::move(merged);
}

bool SupportSet::contains(int row) const {
  return std::binary_search(rows_.begin(), rows_.end(), row);
}

std::vector<int> BlockProblem::support_rows(const Column& column) const {
  std::vector<int> rows;
  rows.reserve(column.linking.size());
  for (const Entry& e : column.linking)
    if (e.value != 0.0) rows.push_back(e.row);
  return rows;
}

SupportSet support_set(const BlockProblem& problem, int block, std::span<const Column> columns) {
  SupportSet set;
  for (const Column& c : columns) {
    if (c.block != block) continue;
    set.insert(problem.support_rows(c));
  }
  return set;
}

double reduced_cost(const Column& column, std::span<const double> pi, double mu) {
  double dot = 0.0;
  for (const Entry& e : column.linking) {
    if (e.row < 0 || static_cast<std::size_t>(e.row) >= pi.size())
      throw std::invalid_argument("reduced_cost: column row outside the dual vector");
    dot += pi[e.row] * e.value;
  }
  return column.cost - dot - column.convexity * mu;
}

double sum_negative_parts(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += std::min(0.0, v);
  return s;
}

}  // namespace dwf
