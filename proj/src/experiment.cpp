#include "dwfilter/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dwfilter/ga.hpp"
#include "dwfilter/mc.hpp"

namespace dwf {

std::string StrategySpec::name() const {
  if (mode == FilterMode::Baseline) return "baseline";
  return to_string(mode) + "-" + to_string(strategy);
}

StrategySpec parse_strategy(const std::string& name) {
  if (name == "baseline") return {};
  auto dash = name.find('-');
  if (dash == std::string::npos) throw std::invalid_argument("unknown strategy `" + name + "`");
  std::string mode = name.substr(0, dash);
  std::string rule = name.substr(dash + 1);
  StrategySpec s;
  if (mode == "exact")
    s.mode = FilterMode::Exact;
  else if (mode == "heur")
    s.mode = FilterMode::Heuristic;
  else
    throw std::invalid_argument("unknown strategy `" + name + "`");
  if (rule == "all")
    s.strategy = Strategy::All;
  else if (rule == "computed")
    s.strategy = Strategy::Computed;
  else if (rule == "add")
    s.strategy = Strategy::Add;
  else
    throw std::invalid_argument("unknown strategy `" + name + "`");
  return s;
}

std::vector<StrategySpec> parse_strategy_list(const std::string& text) {
  std::vector<StrategySpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    StrategySpec s = parse_strategy(item);
    if (s.mode == FilterMode::Baseline) continue;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

GeneratorSpec parse_generator_spec(const std::string& text) {
  GeneratorSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("generator entry `" + item + "` is not key=value");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw std::invalid_argument("generator value for `" + key + "` is not an integer");
    spec[key] = v;
  }
  return spec;
}

namespace {

long long spec_value(const GeneratorSpec& spec, const std::string& key, long long fallback) {
  auto it = spec.find(key);
  return it == spec.end() ? fallback : it->second;
}

std::string mc_shape(const McInstance& inst) {
  return "(" + std::to_string(inst.num_nodes) + ", " + std::to_string(inst.arcs.size()) + ", " +
         std::to_string(inst.commodities.size()) + ")";
}

std::string ga_shape(const GaInstance& inst) {
  return "(" + std::to_string(inst.bins) + ", " + std::to_string(inst.items) + ")";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StrategyOutcome outcome_from(const StrategySpec& spec, const DwdResult& r) {
  StrategyOutcome o;
  o.strategy = spec.name();
  o.calls = r.stats.calls;
  o.vars = r.stats.vars;
  o.iterations = r.stats.iterations;
  o.seconds = r.stats.seconds;
  o.objective = r.objective;
  o.filter_violations = r.audit.filter_violations;
  o.sweep_violations = r.audit.final_sweep_violations;
  o.mismatches = r.audit.reduced_cost_mismatches;
  const bool exact = spec.mode != FilterMode::Heuristic;
  o.audit_failed = o.mismatches > 0 || (exact && (o.filter_violations > 0 || o.sweep_violations > 0));
  return o;
}

ReportRow run_instance(const ExperimentConfig& config, const NamedInstance& inst) {
  ReportRow row;
  row.instance = inst.name;
  row.shape = inst.shape;
  DwdConfig dc;
  dc.epsilon = config.epsilon;
  dc.retention = config.retention;
  dc.audit = config.audit;
  dc.parallel = config.parallel_pricing;
  dc.max_iterations = config.max_iterations;
  try {
    StrategySpec base;
    dc.mode = FilterMode::Baseline;
    row.baseline = outcome_from(base, run_dwd(*inst.problem, dc));
    for (const StrategySpec& s : config.strategies) {
      dc.mode = s.mode;
      dc.strategy = s.strategy;
      StrategyOutcome o = outcome_from(s, run_dwd(*inst.problem, dc));
      o.rcalls = percent_reduction(static_cast<double>(row.baseline.calls), static_cast<double>(o.calls));
      o.rtime = percent_reduction(row.baseline.seconds, o.seconds);
      o.gap = gap_percent(o.objective, row.baseline.objective);
      row.strategies.push_back(o);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

NamedInstance load_instance_file(ProblemKind kind, const std::string& path) {
  std::string text = read_file(path);
  NamedInstance ni;
  ni.name = std::filesystem::path(path).stem().string();
  try {
    if (kind == ProblemKind::Mc) {
      McInstance inst = parse_mc_instance(text);
      ni.shape = mc_shape(inst);
      ni.problem = std::make_shared<McProblem>(std::move(inst));
    } else {
      GaInstance inst = parse_ga_instance(text);
      ni.shape = ga_shape(inst);
      ni.problem = std::make_shared<GaProblem>(std::move(inst));
    }
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return ni;
}

std::vector<NamedInstance> load_instances(const ExperimentConfig& config) {
  std::vector<NamedInstance> out;
  for (const std::string& path : config.instance_paths) out.push_back(load_instance_file(config.problem, path));
  if (config.generate) {
    const GeneratorSpec& g = *config.generate;
    const long long count = spec_value(g, "count", 1);
    const long long seed = spec_value(g, "seed", 1);
    for (long long j = 0; j < count; ++j) {
      const auto s = static_cast<std::uint64_t>(seed + j);
      NamedInstance ni;
      if (config.problem == ProblemKind::Ga) {
        int bins = static_cast<int>(spec_value(g, "bins", 100));
        int items = static_cast<int>(spec_value(g, "items", 10));
        GaInstance inst = generate_ga_instance(bins, items, s);
        ni.name = "ga-b" + std::to_string(bins) + "-i" + std::to_string(items) + "-s" + std::to_string(s);
        ni.shape = ga_shape(inst);
        ni.problem = std::make_shared<GaProblem>(std::move(inst));
      } else {
        McGeneratorSpec ms;
        ms.nodes = static_cast<int>(spec_value(g, "nodes", 8));
        ms.arcs = static_cast<int>(spec_value(g, "arcs", 16));
        ms.commodities = static_cast<int>(spec_value(g, "commodities", 4));
        ms.seed = s;
        McInstance inst = generate_mc_instance(ms);
        ni.name = "mc-n" + std::to_string(ms.nodes) + "-a" + std::to_string(ms.arcs) + "-k" +
                  std::to_string(ms.commodities) + "-s" + std::to_string(s);
        ni.shape = mc_shape(inst);
        ni.problem = std::make_shared<McProblem>(std::move(inst));
      }
      out.push_back(std::move(ni));
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  std::vector<NamedInstance> instances = load_instances(config);
  return run_experiment(config, instances);
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::span<const NamedInstance> instances) {
  ExperimentResult res;
  res.rows.resize(instances.size());
  const long n = static_cast<long>(instances.size());
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel_instances)
  for (long j = 0; j < n; ++j) res.rows[j] = run_instance(config, instances[j]);
  for (const ReportRow& row : res.rows) {
    if (!row.error.empty()) {
      ++res.solver_failures;
      continue;
    }
    if (row.baseline.audit_failed) ++res.audit_failures;
    for (const StrategyOutcome& o : row.strategies)
      if (o.audit_failed) ++res.audit_failures;
  }
  return res;
}

double percent_reduction(double base, double value) {
  if (base == 0.0) return 0.0;
  return 100.0 * (base - value) / base;
}

double gap_percent(double value, double optimum) {
  if (value == optimum) return 0.0;
  if (optimum == 0.0) return value > 0.0 ? INFINITY : -INFINITY;
  return 100.0 * (value - optimum) / optimum;
}

std::string format_percent(double percent) {
  if (std::isinf(percent)) return percent > 0 ? "inf%" : "-inf%";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", percent);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s + "%";
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::string emit_report(std::span<const ReportRow> rows, std::span<const StrategySpec> strategies,
                        ReportFormat format, bool with_timing) {
  std::ostringstream os;
  auto time_cell = [&](double seconds) { return with_timing ? fmt("%.3f", seconds) : std::string("n/a"); };
  auto rtime_cell = [&](double pct) { return with_timing ? format_percent(pct) : std::string("n/a"); };

  if (format == ReportFormat::Csv) {
    os << "instance,shape,baseline_calls,baseline_vars,baseline_time,baseline_cost";
    for (const StrategySpec& s : strategies) {
      const std::string n = s.name();
      os << ',' << n << "_calls," << n << "_vars," << n << "_time," << n << "_rcalls," << n << "_rtime," << n
         << "_gap," << n << "_cost";
    }
    os << ",error\n";
    for (const ReportRow& r : rows) {
      os << r.instance << ",\"" << r.shape << "\"";
      if (!r.error.empty()) {
        os << std::string(5 + 7 * strategies.size(), ',') << '"' << r.error << "\"\n";
        continue;
      }
      os << ',' << r.baseline.calls << ',' << r.baseline.vars << ',' << time_cell(r.baseline.seconds) << ','
         << fmt("%.6E", r.baseline.objective);
      for (const StrategyOutcome& o : r.strategies) {
        os << ',' << o.calls << ',' << o.vars << ',' << time_cell(o.seconds) << ',' << format_percent(o.rcalls)
           << ',' << rtime_cell(o.rtime) << ',' << format_percent(o.gap) << ',' << fmt("%.6E", o.objective);
      }
      os << ",\n";
    }
    return os.str();
  }

  os << "| Instance | #Calls | #Vars | time (s) | cost |";
  for (const StrategySpec& s : strategies) {
    const std::string n = s.name();
    os << ' ' << n << " %rCalls | " << n << " %rTime | " << n << " GAP |";
  }
  os << "\n|---|---:|---:|---:|---:|";
  for (std::size_t i = 0; i < strategies.size(); ++i) os << "---:|---:|---:|";
  os << '\n';
  for (const ReportRow& r : rows) {
    os << "| " << r.instance << ' ' << r.shape << " |";
    if (!r.error.empty()) {
      os << " error: " << r.error << " |\n";
      continue;
    }
    os << ' ' << r.baseline.calls << " | " << r.baseline.vars << " | " << time_cell(r.baseline.seconds) << " | "
       << fmt("%.2E", r.baseline.objective) << " |";
    for (const StrategyOutcome& o : r.strategies)
      os << ' ' << format_percent(o.rcalls) << " | " << rtime_cell(o.rtime) << " | " << format_percent(o.gap) << " |";
    os << '\n';
  }
  return os.str();
}

}  // namespace dwf
