// Batch runner for pricing-filtered column generation experiments.
//
//   dwfilter run --problem ga --generate bins=200,items=10,count=10,seed=1 \
//                --strategies exact-all,heur-computed --format md
//   dwfilter generate --problem ga --bins 100 --items 10 --count 10 --seed 1 --out-dir data/
#include <glob.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dwfilter/experiment.hpp"
#include "dwfilter/ga.hpp"
#include "dwfilter/mc.hpp"

namespace {

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  return out;
}

dwf::ProblemKind problem_kind(const std::string& name) {
  return name == "mc" ? dwf::ProblemKind::Mc : dwf::ProblemKind::Ga;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dantzig-Wolfe column generation with pricing filtering"};
  app.require_subcommand(1);

  std::string problem = "ga";
  std::vector<std::string> instance_globs;
  std::string generate;
  std::string strategies = "exact-add,exact-all,exact-computed,heur-add,heur-all,heur-computed";
  double epsilon = 1e-4;
  std::string alpha = "inf";
  bool audit = false;
  std::string format = "csv";
  std::string out_path;
  bool parallel_pricing = false;
  bool parallel_instances = false;
  int max_iterations = 100000;

  auto* run = app.add_subcommand("run", "solve instances with baseline and filtering strategies");
  run->add_option("--problem", problem, "problem family")->check(CLI::IsMember({"mc", "ga"}));
  auto* inst_opt = run->add_option("--instances", instance_globs, "instance files (glob patterns)");
  auto* gen_opt = run->add_option("--generate", generate, "generator spec, e.g. bins=200,items=10,count=10,seed=1");
  inst_opt->excludes(gen_opt);
  run->add_option("--strategies", strategies, "comma-separated strategies; baseline always runs");
  run->add_option("--epsilon", epsilon, "pricing tolerance")->check(CLI::PositiveNumber);
  run->add_option("--alpha", alpha, "dual vectors kept for filtering (integer or inf)");
  run->add_flag("--audit", audit, "exactly re-price filtered blocks and fail on unsound filters");
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "md"}));
  run->add_option("--out", out_path, "write the report here instead of stdout");
  run->add_flag("--parallel-pricing", parallel_pricing, "filter and price blocks with OpenMP threads");
  run->add_flag("--parallel-instances", parallel_instances, "run instances concurrently (disables %rTime)");
  run->add_option("--max-iterations", max_iterations, "column generation iteration cap")->check(CLI::PositiveNumber);

  int bins = 100, items = 10, nodes = 8, arcs = 16, commodities = 4, count = 1;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  auto* gen = app.add_subcommand("generate", "write seeded random instances");
  gen->add_option("--problem", problem, "problem family")->check(CLI::IsMember({"mc", "ga"}));
  gen->add_option("--bins", bins, "GA bins")->check(CLI::PositiveNumber);
  gen->add_option("--items", items, "GA items")->check(CLI::NonNegativeNumber);
  gen->add_option("--nodes", nodes, "MC nodes")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--arcs", arcs, "MC arcs")->check(CLI::PositiveNumber);
  gen->add_option("--commodities", commodities, "MC commodities")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "first seed; instance j uses seed + j");
  gen->add_option("--count", count, "number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::filesystem::create_directories(out_dir);
      for (int j = 0; j < count; ++j) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(j);
        std::string name, text;
        if (problem == "ga") {
          name = "ga-b" + std::to_string(bins) + "-i" + std::to_string(items) + "-s" + std::to_string(s) + ".ga";
          text = dwf::write_ga_instance(dwf::generate_ga_instance(bins, items, s));
        } else {
          dwf::McGeneratorSpec spec{nodes, arcs, commodities, s};
          name = "mc-n" + std::to_string(nodes) + "-a" + std::to_string(arcs) + "-k" + std::to_string(commodities) +
                 "-s" + std::to_string(s) + ".mc";
          text = "# generated grid-like instance, seed " + std::to_string(s) + "\n" +
                 dwf::write_mc_instance(dwf::generate_mc_instance(spec));
        }
        auto path = std::filesystem::path(out_dir) / name;
        std::ofstream(path) << text;
        std::cout << path.string() << '\n';
      }
      return 0;
    }

    dwf::ExperimentConfig cfg;
    cfg.problem = problem_kind(problem);
    for (const auto& pattern : instance_globs) {
      auto matches = expand_glob(pattern);
      if (matches.empty()) {
        std::cerr << "error: no files match `" << pattern << "`\n";
        return 2;
      }
      cfg.instance_paths.insert(cfg.instance_paths.end(), matches.begin(), matches.end());
    }
    if (!generate.empty()) cfg.generate = dwf::parse_generator_spec(generate);
    if (cfg.instance_paths.empty() && !cfg.generate) {
      std::cerr << "error: pass --instances or --generate\n";
      return 2;
    }
    cfg.strategies = dwf::parse_strategy_list(strategies);
    cfg.epsilon = epsilon;
    if (alpha != "inf") {
      int a = std::stoi(alpha);
      if (a < 1) {
        std::cerr << "error: --alpha must be >= 1 or inf\n";
        return 2;
      }
      cfg.retention = a;
    }
    cfg.audit = audit;
    cfg.format = format == "md" ? dwf::ReportFormat::Markdown : dwf::ReportFormat::Csv;
    cfg.parallel_pricing = parallel_pricing;
    cfg.parallel_instances = parallel_instances;
    cfg.max_iterations = max_iterations;

    dwf::ExperimentResult res = dwf::run_experiment(cfg);
    std::string report = dwf::emit_report(res.rows, cfg.strategies, cfg.format, !parallel_instances);
    if (out_path.empty()) {
      std::cout << report;
    } else {
      std::ofstream(out_path) << report;
    }
    for (const auto& row : res.rows)
      if (!row.error.empty()) std::cerr << "instance " << row.instance << " failed: " << row.error << '\n';
    if (res.audit_failures > 0) std::cerr << res.audit_failures << " audit violation(s)\n";
    std::cerr << res.rows.size() << " instance(s), " << res.solver_failures << " failure(s)\n";
    return res.audit_failures > 0 || res.solver_failures > 0 ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
