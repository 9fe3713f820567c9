// Serial vs OpenMP pricing phase on generated instances.
//
// Each configuration runs run_dwd twice, once with the sequential block loop
// and once with the parallel one, and checks that the two trajectories agree
// bit for bit before reporting the timings.
#include <omp.h>

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "dwfilter/dwd.hpp"
#include "dwfilter/ga.hpp"
#include "dwfilter/mc.hpp"

namespace {

struct Case {
  std::string name;
  std::shared_ptr<const dwf::BlockProblem> problem;
};

struct Timing {
  double seconds;
  dwf::DwdResult result;
};

Timing timed(const dwf::BlockProblem& p, dwf::DwdConfig cfg, int repeats) {
  Timing best{1e300, {}};
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    auto res = dwf::run_dwd(p, cfg);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best.seconds) best = {s, std::move(res)};
  }
  return best;
}

bool same(const dwf::DwdResult& a, const dwf::DwdResult& b) {
  return std::memcmp(&a.objective, &b.objective, sizeof(double)) == 0 && a.stats.calls == b.stats.calls &&
         a.stats.vars == b.stats.vars && a.stats.iterations == b.stats.iterations &&
         a.column_values == b.column_values;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int repeats = quick ? 1 : 3;

  std::vector<Case> cases;
  if (quick) {
    cases.push_back({"mc n10 a20 k30", std::make_shared<dwf::McProblem>(dwf::generate_mc_instance({10, 20, 30, 7}))});
    cases.push_back({"ga E-like (100, 10)", std::make_shared<dwf::GaProblem>(dwf::generate_ga_instance(100, 10, 7))});
  } else {
    cases.push_back({"mc n30 a90 k200", std::make_shared<dwf::McProblem>(dwf::generate_mc_instance({30, 90, 200, 7}))});
    cases.push_back({"mc n60 a200 k400", std::make_shared<dwf::McProblem>(dwf::generate_mc_instance({60, 200, 400, 7}))});
    cases.push_back({"ga E1 (100, 10)", std::make_shared<dwf::GaProblem>(dwf::generate_ga_instance(100, 10, 7))});
    cases.push_back({"ga E4 (1000, 10)", std::make_shared<dwf::GaProblem>(dwf::generate_ga_instance(1000, 10, 7))});
    cases.push_back({"ga E2 (100, 50)", std::make_shared<dwf::GaProblem>(dwf::generate_ga_instance(100, 50, 7))});
  }

  std::cout << "threads: " << omp_get_max_threads() << "\n";
  std::cout << std::left << std::setw(22) << "instance" << std::setw(16) << "strategy" << std::right
            << std::setw(8) << "#Calls" << std::setw(12) << "serial(s)" << std::setw(12) << "omp(s)"
            << std::setw(10) << "speedup" << "  identical\n";
  bool all_same = true;
  for (const Case& c : cases) {
    for (auto [mode, name] : {std::pair{dwf::FilterMode::Baseline, "baseline"},
                              std::pair{dwf::FilterMode::Exact, "exact-all"},
                              std::pair{dwf::FilterMode::Heuristic, "heur-all"}}) {
      dwf::DwdConfig cfg;
      cfg.mode = mode;
      cfg.strategy = dwf::Strategy::All;
      cfg.parallel = false;
      Timing serial = timed(*c.problem, cfg, repeats);
      cfg.parallel = true;
      Timing par = timed(*c.problem, cfg, repeats);
      bool ok = same(serial.result, par.result);
      all_same = all_same && ok;
      std::cout << std::left << std::setw(22) << c.name << std::setw(16) << name << std::right << std::setw(8)
                << serial.result.stats.calls << std::setw(12) << std::fixed << std::setprecision(4)
                << serial.seconds << std::setw(12) << par.seconds << std::setw(10) << std::setprecision(2)
                << serial.seconds / par.seconds << "  " << (ok ? "yes" : "NO") << "\n";
    }
  }
  return all_same ? 0 : 1;
}
