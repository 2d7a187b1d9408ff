#include "doctest.h"

#include <random>

#include "pjrp/errors.hpp"
#include "pjrp/harness.hpp"

using namespace pjrp;
using namespace pjrp::harness;
using reduction::parse_dimacs;

namespace {

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

cost::Commodity generic(std::string id, Rational K, Rational h = 1) {
  return cost::Commodity{std::move(id), K, h, 2, cost::Kind::generic, {}};
}

primes::VpSet micro_vp(std::vector<primes::Prime> pp, std::vector<primes::PrimePair> pairs) {
  primes::VpSet vp;
  vp.params = primes::make_params(pairs.size(), 2, 2);
  vp.pp = std::move(pp);
  vp.pairs = std::move(pairs);
  return vp;
}

// Plain odometer over the window with the counting oracle as the cost; keeps the
// first strict improvement, which is the lexicographically smallest minimum.
std::pair<Rational, std::vector<Natural>> naive_minimum(const cost::Instance& inst, const SearchWindow& win) {
  std::vector<std::vector<Natural>> cand;
  for (const auto& c : inst.commodities()) cand.push_back(win.at(c.id));
  std::vector<std::size_t> idx(cand.size(), 0);
  std::optional<Rational> best;
  std::vector<Natural> best_cycles;
  while (true) {
    std::vector<Natural> cycles;
    Rational total;
    for (std::size_t d = 0; d < cand.size(); ++d) {
      cycles.push_back(cand[d][idx[d]]);
      const auto& c = inst.commodities()[d];
      total += c.K / Rational(cycles.back()) + c.lambda * c.h * Rational(cycles.back()) / 2;
    }
    total += inst.K0() * cost::density_oracle(cycles);
    if (!best || total < *best) {
      best = total;
      best_cycles = cycles;
    }
    std::size_t d = cand.size();
    while (d > 0) {
      --d;
      if (++idx[d] < cand[d].size()) break;
      idx[d] = 0;
      if (d == 0) return {*best, best_cycles};
    }
  }
}

}  // namespace

TEST_CASE("truth table oracle") {
  CHECK(brute_force_sat(parse_dimacs("p cnf 3 1\n1 2 3 0")).size() == 7);
  std::string all8 = "p cnf 3 8\n";
  for (int s = 0; s < 8; ++s) {
    for (int v = 1; v <= 3; ++v) all8 += std::to_string((s >> (v - 1)) & 1 ? -v : v) + " ";
    all8 += "0\n";
  }
  CHECK(brute_force_sat(parse_dimacs(all8)).empty());
  CHECK(brute_force_sat(reduction::CnfFormula{4, {}}).size() == 16);
  CHECK_THROWS_AS(brute_force_sat(reduction::CnfFormula{25, {}}), CapExceeded);
}

TEST_CASE("single commodity solve matches the integer optimum") {
  cost::Instance inst({generic("a", q(71, 2))}, 0);
  SearchWindow w;
  w.set_range("a", 1, 10);
  auto res = solve_exact(inst, w);
  CHECK(res.policy.cycle("a") == 6);
  CHECK(res.policy.cycle("a") == eoq::integer_optimum(inst.at("a").eoq()));
  CHECK(res.cost == cost::total_average_cost(inst, res.policy));
}

TEST_CASE("joint cost pulls an optimum onto a multiple") {
  cost::Instance inst({generic("a", q(9, 2)), generic("b", q(49, 2))}, 10);
  SearchWindow w;
  w.set_range("a", 2, 4);
  w.set_range("b", 4, 6);
  auto res = solve_exact(inst, w);
  auto [cost, cycles] = naive_minimum(inst, w);
  CHECK(res.cost == cost);
  CHECK(res.policy.cycle("a") == cycles[0]);
  CHECK(res.policy.cycle("b") == cycles[1]);
  CHECK(res.policy.cycle("b") % res.policy.cycle("a") == 0);
  CHECK(res.policy.cycle("b") != 5);
}

TEST_CASE("solver agrees with naive enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> kdist(1, 80), count(1, 4), width(1, 5), start(1, 12), k0(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<cost::Commodity> cs;
    long m = count(rng);
    for (long j = 0; j < m; ++j) cs.push_back(generic("c" + std::to_string(j), q(kdist(rng), 2), q(kdist(rng) % 5 + 1, 2)));
    cost::Instance inst(cs, k0(rng));
    SearchWindow w;
    for (const auto& c : inst.commodities()) {
      long s = start(rng);
      w.set_range(c.id, s, s + width(rng) - 1);
    }
    auto [cost, cycles] = naive_minimum(inst, w);
    for (unsigned threads : {1U, 3U}) {
      for (bool prune : {true, false}) {
        SolveOptions opt;
        opt.threads = threads;
        opt.prune = prune;
        auto res = solve_exact(inst, w, opt);
        CHECK(res.cost == cost);
        CHECK(cost::cycles_in_order(inst, res.policy) == cycles);
        if (!prune) CHECK(res.explored == w.combinations());
      }
    }
  }
}

TEST_CASE("solver preconditions") {
  cost::Instance inst({generic("a", 2), generic("b", 3)}, 1);
  SearchWindow w;
  w.set_range("a", 1, 100);
  CHECK_THROWS_AS(solve_exact(inst, w), ValidationError);
  w.set_range("b", 1, 100);
  SolveOptions opt;
  opt.search_cap = 9999;
  CHECK_THROWS_AS(solve_exact(inst, w, opt), CapExceeded);
  CHECK_THROWS_AS(w.set("c", {}), ValidationError);
  CHECK_THROWS_AS(w.set("c", {Natural(0)}), ValidationError);
}

TEST_CASE("constants and clauses optima sit at t*") {
  auto vp = primes::select_vp(primes::make_params(3, 2, 2), 11, 100);
  auto gamma = reduction::build_gamma(parse_dimacs("p cnf 3 1\n1 -2 3 0"), vp);
  auto rep = verify_constants(gamma);
  CHECK(rep.all_pass());
  CHECK(rep.entries.size() == 2 * (gamma.constants.size() + 1));
  CHECK(rep.find("const_1_1.optimum_K")->lhs == 22);
  CHECK(rep.find("const_1_1.optimum_K_plus_K0")->lhs == 22);
  CHECK(rep.find("clause_1.optimum_K")->lhs == 6851);
  CHECK(rep.find("clause_1.optimum_K_plus_K0")->lhs == 6851);
}

TEST_CASE("variable claims on a micro instance") {
  auto gamma = reduction::build_gamma(reduction::CnfFormula{2, {}}, micro_vp({2, 3}, {{5, 7}, {11, 13}}));
  auto rep = verify_variable_claims(gamma);
  CHECK(rep.find("var_1.lower_vs_interior_y1") != nullptr);
  CHECK(rep.find("var_1.lower_vs_interior_y2") == nullptr);
  for (const auto& e : rep.entries) {
    CHECK(e.margin == e.lhs - e.rhs);
    if (e.name.find("exact_at_") != std::string::npos) CHECK_MESSAGE(e.pass, e.name);
    if (e.name.find("lower_vs_upper_others") != std::string::npos) CHECK_MESSAGE(e.pass, e.name);
  }
  CHECK(rep.find("var_1.lower_vs_upper_others_upper")->margin == 0);
  CHECK(rep.find("var_2.exact_at_upper.ctx=L") != nullptr);
}

TEST_CASE("bounds curve") {
  auto gamma = reduction::build_gamma(reduction::CnfFormula{2, {}}, micro_vp({2, 3, 5, 7}, {{11, 13}, {23, 29}}));
  for (std::uint32_t i : {1U, 2U}) {
    auto rows = bounds_curve(gamma, i);
    const auto& pr = gamma.variable(i).pair;
    CHECK(rows.size() == pr.gap() + 5);
    CHECK(rows.front().t == pr.lower - 2);
    CHECK(rows.back().t == pr.upper + 2);
    const auto& c = gamma.instance.at(gamma.variable(i).id);
    Rational t1(Natural(static_cast<unsigned long>(pr.upper + 1)));
    CHECK(rows[rows.size() - 2].lb == c.K / t1 + c.h * t1);
    for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
      CHECK(rows[k - 1].standalone + rows[k + 1].standalone - 2 * rows[k].standalone >= 0);
    }
    for (const auto& r : rows) CHECK(r.lb <= r.ub);
  }
  CHECK_THROWS_AS(bounds_curve(gamma, 3), ValidationError);
}

TEST_CASE("pinned solve on micro instances matches exhaustive enumeration") {
  // With PP = {2, 3} the even interior cycles are cheaper than both pair primes;
  // with PP = {2, 3, 5, 7} the pair primes win.
  struct Case {
    std::vector<primes::Prime> pp;
    std::vector<primes::PrimePair> pairs;
    bool on_pair_primes;
  };
  for (const auto& cs : {Case{{2, 3}, {{5, 7}, {11, 13}}, false}, Case{{2, 3, 5, 7}, {{11, 13}, {17, 19}}, true}}) {
    auto gamma = reduction::build_gamma(reduction::CnfFormula{2, {}}, micro_vp(cs.pp, cs.pairs));
    auto w = pinned_window(gamma);
    CHECK(w.combinations() == 9);
    auto res = solve_exact(gamma.instance, w);
    SolveOptions plain;
    plain.prune = false;
    auto all = solve_exact(gamma.instance, w, plain);
    CHECK(res.cost == all.cost);
    CHECK(res.policy == all.policy);
    CHECK(res.cost == cost::total_average_cost(gamma.instance, res.policy, {64}));
    for (const auto& v : gamma.variables) {
      const auto& t = res.policy.cycle(v.id);
      CHECK((t == v.pair.lower || t == v.pair.upper) == cs.on_pair_primes);
    }
  }
}

TEST_CASE("end to end on micro instances") {
  auto vp = micro_vp({2}, {{5, 7}, {11, 13}, {17, 19}});
  auto sat = end_to_end(parse_dimacs("p cnf 3 1\n1 2 3 0"), vp, Mode::pinned);
  CHECK(sat.satisfying_assignments == 7);
  CHECK(sat.constants_and_clauses_at_t_star);
  REQUIRE(sat.best_satisfying_cost);
  REQUIRE(sat.best_unsatisfying_cost);
  CHECK(*sat.enumeration_gap == *sat.best_unsatisfying_cost - *sat.best_satisfying_cost);
  CHECK(sat.bound_gap.gap <= *sat.enumeration_gap);
  if (sat.variables_on_pair_primes) {
    CHECK(sat.optimum.cost == std::min(*sat.best_satisfying_cost, *sat.best_unsatisfying_cost));
    CHECK(sat.agreement == (*sat.extracted_satisfies));
  }

  auto none = end_to_end(reduction::CnfFormula{3, {}}, vp, Mode::pinned);
  CHECK(none.satisfying_assignments == 8);
  CHECK_FALSE(none.best_unsatisfying_cost);
  CHECK_FALSE(none.enumeration_gap);
  CHECK(none.bound_gap.gap == none.bound_gap.variables_difference);
}

TEST_CASE("mode names") {
  CHECK(parse_mode("pinned") == Mode::pinned);
  CHECK(parse_mode(to_string(Mode::full)) == Mode::full);
  CHECK_THROWS_AS(parse_mode("other"), ValidationError);
}
