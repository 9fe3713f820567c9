#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "dwfilter/filtering.hpp"
#include "dwfilter/ga.hpp"
#include "dwfilter/mc.hpp"
#include "oracles.hpp"

using namespace dwf;

namespace {

// Unit-coefficient block: every linking row is one binary native variable.
class UnitProblem final : public BlockProblem {
 public:
  UnitProblem(int rows, double sigma) : rows_(rows), sigma_(sigma) {}
  int num_blocks() const override { return 1; }
  int num_linking_rows() const override { return rows_; }
  double linking_rhs(int) const override { return 1.0; }
  double convexity_sign(int) const override { return sigma_; }
  double cost_scale() const override { return 1.0; }
  std::vector<Column> initial_columns() const override { return {}; }
  PricingResult solve_pricing(int, std::span<const double>, double) const override { return {}; }
  double hypercube_bound_term(int, std::span<const double> l, std::span<const double> t) const override {
    double s = 0;
    for (std::size_t i = 0; i < l.size(); ++i) s += std::min(0.0, l[i] - t[i]);
    return s;
  }
  double heuristic_bound_term(int, std::span<const double> l, std::span<const double> t,
                              const SupportSet& support) const override {
    double s = 0;
    for (int i : support.rows()) s += std::min(0.0, l[i] - t[i]);
    return s;
  }

 private:
  int rows_;
  double sigma_;
};

double dyadic(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo * 64, hi * 64)(rng) / 64.0;
}

std::vector<double> dyadic_vector(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::vector<double> v(n);
  for (double& x : v) x = dyadic(rng, lo, hi);
  return v;
}

McInstance random_mc(std::mt19937_64& rng, int nodes, int arcs, double bandwidth) {
  McInstance inst;
  inst.num_nodes = nodes;
  std::uniform_int_distribution<int> node(0, nodes - 1), val(1, 9);
  inst.arcs.push_back({0, nodes - 1, 100.0, 1.0, 1.0});
  while (static_cast<int>(inst.arcs.size()) < arcs) {
    int u = node(rng), v = node(rng);
    if (u == v) continue;
    inst.arcs.push_back({u, v, 100.0, static_cast<double>(val(rng)), static_cast<double>(val(rng))});
  }
  inst.commodities.push_back({0, nodes - 1, bandwidth, 1e9});
  return inst;
}

}  // namespace

TEST_CASE("exact_bound arithmetic") {
  CHECK(exact_bound({1, 5.0, 2.0}, 2.0, 1.0, -2.0) == 3.0);
  CHECK(exact_bound({1, 5.0, 2.0}, 2.0, -1.0, -2.0) == 3.0);
  // sigma = +1: c + mu_l - mu_t; sigma = -1: c - mu_l + mu_t.
  CHECK(exact_bound({1, 1.0, 4.0}, 1.0, 1.0, 0.0) == 4.0);
  CHECK(exact_bound({1, 1.0, 4.0}, 1.0, -1.0, 0.0) == -2.0);
}

TEST_CASE("exact_bound at l = t is the recorded reduced cost, bit for bit") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  GaProblem ga(generate_ga_instance(4, 6, 3));
  for (int trial = 0; trial < 1000; ++trial) {
    PricingRecord rec{3, u(rng), u(rng)};
    std::vector<double> pi(6);
    for (double& x : pi) x = u(rng);
    for (double sigma : {1.0, -1.0}) {
      double term = ga.hypercube_bound_term(0, pi, pi);
      CHECK(term == 0.0);
      CHECK(exact_bound(rec, rec.convexity_dual, sigma, term) == rec.reduced_cost);
    }
  }
}

TEST_CASE("hypercube term: sum of negative parts") {
  std::vector<double> d{3.0, -1.0, -4.0};
  CHECK(sum_negative_parts(d) == -5.0);
  GaInstance inst = generate_ga_instance(2, 3, 9);
  GaProblem ga(inst);
  std::vector<double> pl{3.0, -1.0, -4.0}, pt{0.0, 0.0, 0.0};
  CHECK(ga.hypercube_bound_term(1, pl, pt) == -5.0);
  CHECK(ga.hypercube_bound_term(1, pt, pt) == 0.0);
  CHECK_THROWS(ga.hypercube_bound_term(1, std::vector<double>{1.0}, pt));
}

TEST_CASE("MC hypercube term matches brute force over the binary cube") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int arcs = std::uniform_int_distribution<int>(1, 12)(rng);
    McProblem mc(random_mc(rng, 5, arcs, trial % 3 == 0 ? 2.0 : 1.0 + trial % 5));
    const double b = mc.instance().commodities[0].bandwidth;
    auto pl = dyadic_vector(rng, arcs, 0, 5), pt = dyadic_vector(rng, arcs, 0, 5);
    std::vector<double> d(arcs);
    for (int a = 0; a < arcs; ++a) d[a] = (pl[a] - pt[a]) * -b;
    const double term = mc.hypercube_bound_term(0, pl, pt);
    CHECK(term == oracle::hypercube_min(d));
    CHECK(term <= 0.0);
    CHECK(mc.hypercube_bound_term(0, pt, pt) == 0.0);
  }
}

TEST_CASE("heuristic term: restriction and dominance") {
  UnitProblem p(2, 1.0);
  std::vector<double> pl{-1.0, -4.0}, pt{0.0, 0.0};
  CHECK(p.hypercube_bound_term(0, pl, pt) == -5.0);
  CHECK(p.heuristic_bound_term(0, pl, pt, SupportSet({0})) == -1.0);
  CHECK(p.heuristic_bound_term(0, pl, pt, SupportSet()) == 0.0);

  std::mt19937_64 rng(3);
  GaProblem ga(generate_ga_instance(3, 10, 5));
  for (int trial = 0; trial < 200; ++trial) {
    auto l = dyadic_vector(rng, 10, 0, 50), t = dyadic_vector(rng, 10, 0, 50);
    std::vector<int> rows;
    for (int i = 0; i < 10; ++i)
      if (rng() % 2) rows.push_back(i);
    SupportSet s(rows);
    double exact = ga.hypercube_bound_term(1, l, t);
    double heur = ga.heuristic_bound_term(1, l, t, s);
    CHECK(heur >= exact);
    CHECK(heur <= 0.0);
    std::vector<int> every(10);
    for (int i = 0; i < 10; ++i) every[i] = i;
    CHECK(ga.heuristic_bound_term(1, l, t, SupportSet(every)) == exact);
    CHECK(ga.heuristic_bound_term(1, l, t, SupportSet()) == 0.0);
  }
}

TEST_CASE("GA generic bound equals the hand-coded sign pattern bit for bit") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  GaProblem ga(generate_ga_instance(5, 8, 2));
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> l(8), t(8);
    for (double& x : l) x = u(rng);
    for (double& x : t) x = u(rng);
    const double cbar = u(rng) - 50.0, mu_l = u(rng), mu_t = u(rng);
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) sum += std::min(0.0, l[i] - t[i]);
    const double hand = cbar + (mu_t - mu_l) + sum;
    const double generic = exact_bound({1, cbar, mu_l}, mu_t, ga.convexity_sign(0), ga.hypercube_bound_term(0, l, t));
    CHECK(std::memcmp(&hand, &generic, sizeof hand) == 0);
  }
}

TEST_CASE("lower bound never exceeds the true reduced cost on a small MC block") {
  std::mt19937_64 rng(4);
  McInstance inst;
  inst.num_nodes = 4;
  inst.arcs = {{0, 1, 10, 1, 3}, {1, 3, 10, 1, 2}, {0, 2, 10, 1, 1}, {2, 3, 10, 1, 5}};
  inst.commodities = {{0, 3, 2.0, 10.0}};
  McProblem mc(inst);
  auto true_cbar = [&](const std::vector<double>& pi, double mu) {
    std::vector<double> w(4);
    for (int a = 0; a < 4; ++a) w[a] = 2.0 * (inst.arcs[a].cost + pi[a]);
    return oracle::best_path(inst, w, 10.0, 0, 3)->weight - mu;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    auto pl = dyadic_vector(rng, 4, 0, 10), pt = dyadic_vector(rng, 4, 0, 10);
    double mul = dyadic(rng, 0, 40), mut = dyadic(rng, 0, 40);
    PricingRecord rec{1, true_cbar(pl, mul), mul};
    double lb = exact_bound(rec, mut, 1.0, mc.hypercube_bound_term(0, pl, pt));
    CHECK(lb <= true_cbar(pt, mut));
  }
}

TEST_CASE("lower bound on GA blocks against subset enumeration") {
  std::mt19937_64 rng(8);
  GaInstance inst = generate_ga_instance(3, 8, 17);
  GaProblem ga(inst);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = trial % 3;
    auto pl = dyadic_vector(rng, 8, 0, 120), pt = dyadic_vector(rng, 8, 0, 120);
    double mul = dyadic(rng, 0, 50), mut = dyadic(rng, 0, 50);
    auto cbar = [&](const std::vector<double>& pi, double mu) {
      std::vector<double> v(8);
      std::vector<int> w(8);
      for (int i = 0; i < 8; ++i) {
        v[i] = inst.cost_of(i, k) - pi[i];
        w[i] = inst.weight_of(i, k);
      }
      return oracle::best_subset(v, w, inst.capacity[k]).value + mu;
    };
    PricingRecord rec{1, cbar(pl, mul), mul};
    double lb = exact_bound(rec, mut, -1.0, ga.hypercube_bound_term(k, pl, pt));
    CHECK(lb <= cbar(pt, mut));
  }
}

TEST_CASE("select_records") {
  std::vector<PricingRecord> h{{1, -3.0, 0.0}, {4, 2.0, 0.0}};
  auto add = select_records(Strategy::Add, h, 1e-4);
  REQUIRE(add.size() == 1);
  CHECK(add[0].iteration == 1);
  auto computed = select_records(Strategy::Computed, h, 1e-4);
  REQUIRE(computed.size() == 1);
  CHECK(computed[0].iteration == 4);
  auto all = select_records(Strategy::All, h, 1e-4);
  REQUIRE(all.size() == 2);
  CHECK(all[0].iteration == 4);
  CHECK(all[1].iteration == 1);
  for (Strategy s : {Strategy::All, Strategy::Computed, Strategy::Add}) CHECK(select_records(s, {}, 1e-4).empty());
  // ADD ignores records in (-eps, 0).
  std::vector<PricingRecord> tiny{{2, -5e-5, 0.0}};
  CHECK(select_records(Strategy::Add, tiny, 1e-4).empty());
}

TEST_CASE("DualStore retention") {
  DualStore one(1);
  one.push(1, {1.0});
  one.push(2, {2.0});
  one.push(3, {3.0});
  CHECK(one.find(1) == nullptr);
  CHECK(one.find(2) == nullptr);
  REQUIRE(one.find(3) != nullptr);
  CHECK((*one.find(3))[0] == 3.0);

  DualStore all;
  for (int t = 1; t <= 3; ++t) all.push(t, {double(t)});
  for (int t = 1; t <= 3; ++t) CHECK(all.find(t) != nullptr);
  CHECK(all.find(4) == nullptr);
  CHECK_THROWS(all.push(3, {0.0}));
  CHECK_THROWS(DualStore(0));
}

TEST_CASE("should_filter short-circuits and skips evicted records") {
  UnitProblem p(2, 1.0);
  DualStore store;
  store.push(1, {0.0, 0.0});
  store.push(2, {0.0, 0.0});
  std::vector<double> pi_t{0.0, 0.0};
  FilterContext ctx{p, store, FilterMode::Exact, Strategy::All, 1e-4};

  std::vector<PricingRecord> h{{1, 0.5, 0.0}, {2, 0.5, 0.0}};
  FilterDecision d = should_filter(ctx, 0, pi_t, 0.0, h, SupportSet());
  CHECK(d.skip);
  CHECK(d.bounds_evaluated == 1);
  CHECK(d.record_iteration == 2);
  CHECK(d.best_bound == 0.5);

  std::vector<PricingRecord> neg{{1, -1.0, 0.0}, {2, -2.0, 0.0}};
  d = should_filter(ctx, 0, pi_t, 0.0, neg, SupportSet());
  CHECK_FALSE(d.skip);
  CHECK(d.bounds_evaluated == 2);
  CHECK(d.best_bound == -1.0);

  CHECK_FALSE(should_filter(ctx, 0, pi_t, 0.0, {}, SupportSet()).skip);

  FilterContext base{p, store, FilterMode::Baseline, Strategy::All, 1e-4};
  d = should_filter(base, 0, pi_t, 0.0, h, SupportSet());
  CHECK_FALSE(d.skip);
  CHECK(d.bounds_evaluated == 0);

  DualStore last(1);
  last.push(1, {0.0, 0.0});
  last.push(2, {5.0, 5.0});
  FilterContext evict{p, last, FilterMode::Exact, Strategy::All, 1e-4};
  std::vector<PricingRecord> old{{1, 3.0, 0.0}};
  d = should_filter(evict, 0, pi_t, 0.0, old, SupportSet());
  CHECK_FALSE(d.skip);
  CHECK(d.records_evicted == 1);
  CHECK(d.bounds_evaluated == 0);
}

TEST_CASE("exact and heuristic modes use their own terms") {
  UnitProblem p(2, 1.0);
  DualStore store;
  store.push(1, {0.0, 1.0});
  std::vector<double> pi_t{0.0, 3.0};  // drift -2 on row 1
  std::vector<PricingRecord> h{{1, 1.0, 0.0}};
  FilterContext exact{p, store, FilterMode::Exact, Strategy::All, 1e-4};
  FilterContext heur{p, store, FilterMode::Heuristic, Strategy::All, 1e-4};
  CHECK_FALSE(should_filter(exact, 0, pi_t, 0.0, h, SupportSet({0, 1})).skip);
  CHECK(should_filter(heur, 0, pi_t, 0.0, h, SupportSet({0})).skip);
  CHECK_FALSE(should_filter(heur, 0, pi_t, 0.0, h, SupportSet({1})).skip);
}

TEST_CASE("strategy nesting at a fixed state") {
  std::mt19937_64 rng(12);
  for (double sigma : {1.0, -1.0}) {
    UnitProblem p(4, sigma);
    for (int trial = 0; trial < 500; ++trial) {
      DualStore store;
      std::vector<PricingRecord> h;
      const int T = std::uniform_int_distribution<int>(1, 6)(rng);
      for (int t = 1; t <= T; ++t) {
        store.push(t, dyadic_vector(rng, 4, 0, 3));
        h.push_back({t, dyadic(rng, -3, 3), dyadic(rng, 0, 3)});
      }
      auto pi_t = dyadic_vector(rng, 4, 0, 3);
      double mu_t = dyadic(rng, 0, 3);
      for (FilterMode mode : {FilterMode::Exact, FilterMode::Heuristic}) {
        auto skip = [&](Strategy s) {
          FilterContext ctx{p, store, mode, s, 1e-4};
          return should_filter(ctx, 0, pi_t, mu_t, h, SupportSet({1, 2})).skip;
        };
        bool all = skip(Strategy::All);
        if (skip(Strategy::Add)) CHECK(all);
        if (skip(Strategy::Computed)) CHECK(all);
      }
    }
  }
}
