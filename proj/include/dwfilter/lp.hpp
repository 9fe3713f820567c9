#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwf {

enum class RowSense { GreaterEqual, LessEqual, Equal };

struct Entry {
  int row;
  double value;
};

class LpStructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when the simplex cannot make progress even under Bland's rule, or
// the basis becomes numerically singular.
class LpNumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimization LP over nonnegative variables with general-sense rows.
class LpModel {
 public:
  int add_row(RowSense sense, double rhs);
  // Coefficients must reference existing rows; duplicate row entries are summed.
  int add_column(double cost, std::span<const Entry> coefficients);

  int num_rows() const { return static_cast<int>(senses_.size()); }
  int num_columns() const { return static_cast<int>(costs_.size()); }

  RowSense sense(int row) const { return senses_[row]; }
  double rhs(int row) const { return rhs_[row]; }
  double cost(int col) const { return costs_[col]; }
  std::span<const Entry> column(int col) const { return columns_[col]; }

 private:
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
  std::vector<double> costs_;
  std::vector<std::vector<Entry>> columns_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;  // per column
  std::vector<double> duals;   // per row, in the row's original sense
  long iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  int refactor_interval = 64;
};

// Two-phase revised primal simplex with an explicit dense basis inverse.
//
// Rows are normalized to >= form internally (<= rows negated) and every row
// gets a surplus column; duals are mapped back to the caller's row senses.
// After add_column() the previous optimal basis stays primal feasible, so the
// next solve() starts directly in phase 2.
class SimplexSolver {
 public:
  explicit SimplexSolver(LpModel model, SimplexOptions options = {});

  int add_column(double cost, std::span<const Entry> coefficients);
  LpSolution solve();

  const LpModel& model() const { return model_; }

 private:
  // Internal variable layout: [0, m) surplus, [m, 2m) artificial, [2m, ...) structural.
  int num_internal() const { return 2 * rows_ + model_.num_columns(); }
  bool is_surplus(int j) const { return j < rows_; }
  bool is_artificial(int j) const { return j >= rows_ && j < 2 * rows_; }
  int structural(int j) const { return j - 2 * rows_; }

  double internal_cost(int j, int phase) const;
  // Dot product of a vector over rows with internal column j.
  double dot_column(std::span<const double> y, int j) const;
  // w = B^{-1} a_j
  void ftran(int j, std::vector<double>& w) const;
  bool eligible(int j, int phase) const;

  void cold_start();
  void refactor();
  void recompute_basic_values();
  // Returns false when the phase ended unbounded.
  bool run_phase(int phase);
  LpSolution extract(LpStatus status) const;

  LpModel model_;
  SimplexOptions opt_;
  int rows_ = 0;
  std::vector<double> row_sign_;  // +1 for >= / = rows, -1 for <= rows
  std::vector<double> rhs_;       // normalized right-hand side
  std::vector<double> art_sign_;  // artificial column coefficient
  std::vector<int> basis_;        // basic internal variable per row position
  std::vector<int> position_;     // row position of a basic var, -1 otherwise
  std::vector<double> binv_;      // dense row-major B^{-1}
  std::vector<double> xb_;
  bool has_basis_ = false;
  bool warm_feasible_ = false;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

// Cold-start convenience wrapper.
LpSolution solve(const LpModel& model, SimplexOptions options = {});

}  // namespace dwf
