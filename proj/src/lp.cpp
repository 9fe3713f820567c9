#include "dwfilter/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace dwf {

int LpModel::add_row(RowSense sense, double rhs) {
  if (!std::isfinite(rhs)) throw LpStructureError("row right-hand side must be finite");
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

int LpModel::add_column(double cost, std::span<const Entry> coefficients) {
  if (!std::isfinite(cost)) throw LpStructureError("column cost must be finite");
  std::vector<Entry> col(coefficients.begin(), coefficients.end());
  for (const Entry& e : col) {
    if (e.row < 0 || e.row >= num_rows())
      throw LpStructureError("column references unknown row " + std::to_string(e.row));
    if (!std::isfinite(e.value)) throw LpStructureError("column coefficient must be finite");
  }
  std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  std::vector<Entry> merged;
  for (const Entry& e : col) {
    if (!merged.empty() && merged.back().row == e.row)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
  costs_.push_back(cost);
  columns_.push_back(std::move(merged));
  return num_columns() - 1;
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

SimplexSolver::SimplexSolver(LpModel model, SimplexOptions options)
    : model_(std::move(model)), opt_(options), rows_(model_.num_rows()) {
  row_sign_.resize(rows_);
  rhs_.resize(rows_);
  art_sign_.assign(rows_, 1.0);
  for (int i = 0; i < rows_; ++i) {
    row_sign_[i] = model_.sense(i) == RowSense::LessEqual ? -1.0 : 1.0;
    rhs_[i] = row_sign_[i] * model_.rhs(i);
  }
}

int SimplexSolver::add_column(double cost, std::span<const Entry> coefficients) {
  int id = model_.add_column(cost, coefficients);
  if (has_basis_) position_.push_back(-1);
  return id;
}

double SimplexSolver::internal_cost(int j, int phase) const {
  if (phase == 1) return is_artificial(j) ? 1.0 : 0.0;
  if (j < 2 * rows_) return 0.0;
  return model_.cost(structural(j));
}

double SimplexSolver::dot_column(std::span<const double> y, int j) const {
  if (is_surplus(j)) return -y[j];
  if (is_artificial(j)) return art_sign_[j - rows_] * y[j - rows_];
  double s = 0.0;
  for (const Entry& e : model_.column(structural(j))) s += row_sign_[e.row] * e.value * y[e.row];
  return s;
}

void SimplexSolver::ftran(int j, std::vector<double>& w) const {
  const int m = rows_;
  w.assign(m, 0.0);
  auto add_unit = [&](int r, double coef) {
    for (int i = 0; i < m; ++i) w[i] += coef * binv_[static_cast<std::size_t>(i) * m + r];
  };
  if (is_surplus(j)) {
    add_unit(j, -1.0);
  } else if (is_artificial(j)) {
    add_unit(j - m, art_sign_[j - m]);
  } else {
    for (const Entry& e : model_.column(structural(j))) add_unit(e.row, row_sign_[e.row] * e.value);
  }
}

bool SimplexSolver::eligible(int j, int phase) const {
  (void)phase;
  if (position_[j] >= 0) return false;
  if (is_artificial(j)) return false;
  if (is_surplus(j) && model_.sense(j) == RowSense::Equal) return false;
  return true;
}

void SimplexSolver::cold_start() {
  const int m = rows_;
  basis_.assign(m, -1);
  position_.assign(num_internal(), -1);
  binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  xb_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    int var;
    double diag;
    if (model_.sense(i) != RowSense::Equal && rhs_[i] <= 0.0) {
      var = i;
      diag = -1.0;
    } else {
      art_sign_[i] = rhs_[i] >= 0.0 ? 1.0 : -1.0;
      var = m + i;
      diag = art_sign_[i];
    }
    basis_[i] = var;
    position_[var] = i;
    binv_[static_cast<std::size_t>(i) * m + i] = diag;  // inverse of a +-1 diagonal
    xb_[i] = rhs_[i] * diag;
  }
  has_basis_ = true;
  since_refactor_ = 0;
}

void SimplexSolver::refactor() {
  const int m = rows_;
  // Gauss-Jordan on [B | I] with partial pivoting.
  std::vector<double> b(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<double> col;
  for (int p = 0; p < m; ++p) {
    int j = basis_[p];
    if (is_surplus(j)) {
      b[static_cast<std::size_t>(j) * m + p] = -1.0;
    } else if (is_artificial(j)) {
      b[static_cast<std::size_t>(j - m) * m + p] = art_sign_[j - m];
    } else {
      for (const Entry& e : model_.column(structural(j)))
        b[static_cast<std::size_t>(e.row) * m + p] += row_sign_[e.row] * e.value;
    }
  }
  std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;
  for (int c = 0; c < m; ++c) {
    int piv = c;
    double best = std::abs(b[static_cast<std::size_t>(c) * m + c]);
    for (int r = c + 1; r < m; ++r) {
      double v = std::abs(b[static_cast<std::size_t>(r) * m + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-12) throw LpNumericalError("singular basis during refactorization");
    if (piv != c) {
      for (int k = 0; k < m; ++k) {
        std::swap(b[static_cast<std::size_t>(c) * m + k], b[static_cast<std::size_t>(piv) * m + k]);
        std::swap(inv[static_cast<std::size_t>(c) * m + k], inv[static_cast<std::size_t>(piv) * m + k]);
      }
    }
    double d = b[static_cast<std::size_t>(c) * m + c];
    for (int k = 0; k < m; ++k) {
      b[static_cast<std::size_t>(c) * m + k] /= d;
      inv[static_cast<std::size_t>(c) * m + k] /= d;
    }
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      double f = b[static_cast<std::size_t>(r) * m + c];
      if (f == 0.0) continue;
      for (int k = 0; k < m; ++k) {
        b[static_cast<std::size_t>(r) * m + k] -= f * b[static_cast<std::size_t>(c) * m + k];
        inv[static_cast<std::size_t>(r) * m + k] -= f * inv[static_cast<std::size_t>(c) * m + k];
      }
    }
  }
  // inv now maps rows to basis positions: B^{-1}[p][r].
  binv_ = std::move(inv);
  recompute_basic_values();
  since_refactor_ = 0;
}

void SimplexSolver::recompute_basic_values() {
  const int m = rows_;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += binv_[static_cast<std::size_t>(i) * m + r] * rhs_[r];
    xb_[i] = s;
  }
}

bool SimplexSolver::run_phase(int phase) {
  const int m = rows_;
  const long degenerate_limit = 3L * (m + model_.num_columns());
  const long max_iterations = 200L * (m + model_.num_columns()) + 10000;
  long degenerate_run = 0;
  long phase_iterations = 0;
  std::vector<double> y(m), w(m);

  while (true) {
    if (since_refactor_ >= opt_.refactor_interval) refactor();
    const bool bland = degenerate_run > degenerate_limit;
    if (phase_iterations > max_iterations)
      throw LpNumericalError("simplex iteration limit exceeded under Bland's rule");

    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      double cb = internal_cost(basis_[i], phase);
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(i) * m];
      for (int r = 0; r < m; ++r) y[r] += cb * row[r];
    }

    int entering = -1;
    double best = 0.0;
    const int n = num_internal();
    for (int j = 0; j < n; ++j) {
      if (!eligible(j, phase)) continue;
      double cj = internal_cost(j, phase);
      double d = cj - dot_column(y, j);
      if (d >= -opt_.optimality_tol * (1.0 + std::abs(cj))) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (d < best) {
        best = d;
        entering = j;
      }
    }
    if (entering < 0) return true;

    ftran(entering, w);
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double r;
      if (phase == 2 && is_artificial(basis_[i])) {
        if (std::abs(w[i]) <= opt_.pivot_tol) continue;
        r = 0.0;
      } else {
        if (w[i] <= opt_.pivot_tol) continue;
        r = std::max(0.0, xb_[i]) / w[i];
      }
      bool take = false;
      if (leave < 0 || r < ratio - 1e-12) {
        take = true;
      } else if (r <= ratio + 1e-12) {
        take = bland ? basis_[i] < basis_[leave] : std::abs(w[i]) > std::abs(w[leave]);
      }
      if (take) {
        leave = i;
        ratio = std::min(ratio, r);
      }
    }
    if (leave < 0) return false;

    const double theta = ratio;
    for (int i = 0; i < m; ++i) xb_[i] -= theta * w[i];
    xb_[leave] = theta;

    double* prow = &binv_[static_cast<std::size_t>(leave) * m];
    const double wp = w[leave];
    for (int r = 0; r < m; ++r) prow[r] /= wp;
    for (int i = 0; i < m; ++i) {
      if (i == leave || w[i] == 0.0) continue;
      double f = w[i];
      double* row = &binv_[static_cast<std::size_t>(i) * m];
      for (int r = 0; r < m; ++r) row[r] -= f * prow[r];
    }
    position_[basis_[leave]] = -1;
    basis_[leave] = entering;
    position_[entering] = leave;

    ++since_refactor_;
    ++iterations_;
    ++phase_iterations;
    degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
  }
}

LpSolution SimplexSolver::extract(LpStatus status) const {
  const int m = rows_;
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.primal.assign(model_.num_columns(), 0.0);
  sol.duals.assign(m, 0.0);
  if (status != LpStatus::Optimal) return sol;
  for (int i = 0; i < m; ++i) {
    int j = basis_[i];
    if (j >= 2 * m) sol.primal[structural(j)] = std::max(0.0, xb_[i]);
  }
  double obj = 0.0;
  for (int c = 0; c < model_.num_columns(); ++c) obj += model_.cost(c) * sol.primal[c];
  sol.objective = obj;
  std::vector<double> y(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double cb = internal_cost(basis_[i], 2);
    if (cb == 0.0) continue;
    for (int r = 0; r < m; ++r) y[r] += cb * binv_[static_cast<std::size_t>(i) * m + r];
  }
  for (int r = 0; r < m; ++r) sol.duals[r] = row_sign_[r] * y[r];
  return sol;
}

LpSolution SimplexSolver::solve() {
  iterations_ = 0;
  if (!(has_basis_ && warm_feasible_)) {
    cold_start();
    run_phase(1);
    refactor();
    double infeas = 0.0;
    double scale = 1.0;
    for (int i = 0; i < rows_; ++i) {
      scale = std::max(scale, std::abs(rhs_[i]));
      if (is_artificial(basis_[i])) infeas += std::max(0.0, xb_[i]);
    }
    if (infeas > opt_.feasibility_tol * scale) {
      warm_feasible_ = false;
      return extract(LpStatus::Infeasible);
    }
  }
  bool bounded = run_phase(2);
  refactor();
  warm_feasible_ = true;
  if (!bounded) return extract(LpStatus::Unbounded);
  // A refactorization can expose a tiny primal drift; polish with a few more pivots.
  if (!run_phase(2)) return extract(LpStatus::Unbounded);
  return extract(LpStatus::Optimal);
}

LpSolution solve(const LpModel& model, SimplexOptions options) {
  SimplexSolver solver(model, options);
  return solver.solve();
}

}  // namespace dwf
