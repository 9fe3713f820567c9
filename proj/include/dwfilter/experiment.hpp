#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dwfilter/dwd.hpp"

namespace dwf {

enum class ProblemKind { Mc, Ga };
enum class ReportFormat { Csv, Markdown };

struct StrategySpec {
  FilterMode mode = FilterMode::Baseline;
  Strategy strategy = Strategy::All;

  std::string name() const;  // "baseline", "exact-all", "heur-computed", ...
  friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

// Accepts baseline, exact-{add,all,computed}, heur-{add,all,computed}.
StrategySpec parse_strategy(const std::string& name);
std::vector<StrategySpec> parse_strategy_list(const std::string& comma_separated);

// `key=value,key=value` generator description. GA keys: bins, items, count,
// seed. MC keys: nodes, arcs, commodities, count, seed.
using GeneratorSpec = std::map<std::string, long long>;
GeneratorSpec parse_generator_spec(const std::string& text);

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::Ga;
  std::vector<std::string> instance_paths;
  std::optional<GeneratorSpec> generate;
  std::vector<StrategySpec> strategies;  // baseline is implicit
  double epsilon = 1e-4;
  std::optional<int> retention;
  ReportFormat format = ReportFormat::Csv;
  bool audit = false;
  bool parallel_pricing = false;
  // Run instances concurrently; wall times are then not comparable and
  // %rTime is reported as n/a.
  bool parallel_instances = false;
  int max_iterations = 100000;
};

struct NamedInstance {
  std::string name;
  std::string shape;  // "(|V|, |A|, |K|)" or "(|K|, m)"
  std::shared_ptr<const BlockProblem> problem;
};

// Loads files or runs the generator. Generated instance j uses seed + j.
std::vector<NamedInstance> load_instances(const ExperimentConfig& config);
NamedInstance load_instance_file(ProblemKind kind, const std::string& path);

struct StrategyOutcome {
  std::string strategy;
  long calls = 0;
  long vars = 0;
  long iterations = 0;
  double seconds = 0.0;
  double objective = 0.0;
  double rcalls = 0.0;  // percent
  double rtime = 0.0;   // percent
  double gap = 0.0;     // percent
  long filter_violations = 0;
  long sweep_violations = 0;
  long mismatches = 0;
  bool audit_failed = false;
};

struct ReportRow {
  std::string instance;
  std::string shape;
  StrategyOutcome baseline;
  std::vector<StrategyOutcome> strategies;
  std::string error;  // non-empty when the instance failed
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  long audit_failures = 0;
  long solver_failures = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, std::span<const NamedInstance> instances);

// 100 (base - value) / base
double percent_reduction(double base, double value);
// 100 (v - v*) / v*
double gap_percent(double value, double optimum);
// Two decimals with a trailing '%', e.g. "-24.14%".
std::string format_percent(double percent);

std::string emit_report(std::span<const ReportRow> rows, std::span<const StrategySpec> strategies,
                        ReportFormat format, bool with_timing = true);

}  // namespace dwf
