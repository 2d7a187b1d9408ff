#include "doctest.h"

#include "pjrp/bounds.hpp"
#include "pjrp/errors.hpp"

using namespace pjrp;
using namespace pjrp::reduction;
using primes::make_params;
using primes::select_vp;

namespace {

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

Rational cost_at(const Rational& K, const Rational& h, long t) { return K / q(t) + h * q(t); }

CnfFormula three_clauses() { return parse_dimacs("p cnf 3 3\n1 -2 3 0\n-1 2 -3 0\n1 2 3 0\n"); }

}  // namespace

TEST_CASE("variables bounds on the desk set") {
  auto g = build_gamma(CnfFormula{2, {}}, select_vp(make_params(2, 2, 2), 11, 100));
  auto b = variables_bounds(g);
  CHECK(b.ub_joint == q(8, 35) * (Rational(1) - q(216, 247)));
  CHECK(b.ub_joint - b.lb_joint == q(8, 35) * (g.alphas.alpha_v_lower - g.alphas.alpha_v_upper));
  const auto& v1 = g.instance.at("var_1");
  const auto& v2 = g.instance.at("var_2");
  CHECK(b.ub_standalone == cost_at(v1.K, v1.h, 13) + cost_at(v2.K, v2.h, 19));
  CHECK(b.lb_standalone == cost_at(v1.K, v1.h, 11) + cost_at(v2.K, v2.h, 17));
}

TEST_CASE("variables share of every encoding lies between the bounds") {
  for (auto pp : {std::vector<Prime>{2}, std::vector<Prime>{2, 3}}) {
    primes::VpSet vp;
    vp.params = make_params(3, 2, 2);
    vp.pp = pp;
    vp.pairs = {{5, 7}, {11, 13}, {17, 19}};
    auto gamma = build_gamma(three_clauses(), vp);
    auto b = variables_bounds(gamma);
    for (std::uint64_t bits = 0; bits < 8; ++bits) {
      auto tc = tc_decompose(gamma, encode_assignment(gamma, assignment_from_bits(3, bits)));
      CHECK(b.lb <= tc.tc_variables);
      CHECK(tc.tc_variables <= b.ub);
      if (bits == 0) CHECK(tc.tc_variables == b.lb);
      if (bits == 7) CHECK(tc.tc_variables == b.ub);
    }
  }
}

TEST_CASE("clauses lower bound") {
  auto gamma = build_gamma(three_clauses(), select_vp(make_params(3, 2, 2), 11, 100));
  Rational base = clauses_lower_bound(gamma, {});
  Rational standalone;
  for (const auto& c : gamma.clauses) standalone += cost_at(gamma.instance.at(c.id).K, 1, c.t_star.get_si());
  CHECK(base == standalone);
  const Rational coeff = gamma.alphas.alpha_c * gamma.alphas.alpha_v_lower;
  std::string one[] = {"clause_2"};
  CHECK(clauses_lower_bound(gamma, one) - base == coeff / Rational(gamma.clauses[1].t_star));
  std::string two[] = {"clause_2", "clause_3"};
  CHECK(clauses_lower_bound(gamma, two) >= clauses_lower_bound(gamma, one));
  std::string all[] = {"clause_1", "clause_2", "clause_3"};
  CHECK(clauses_lower_bound(gamma, all) >= clauses_lower_bound(gamma, two));
  std::string bad[] = {"clause_9"};
  CHECK_THROWS_AS(clauses_lower_bound(gamma, bad), ValidationError);
}

TEST_CASE("exact root comparisons") {
  // p = 16, k = 4: p^(1/k) = 2, so the bound is 2c/16^4
  Natural p(16);
  Rational c = q(3);
  Rational edge = c * q(2) / q(65536);
  CHECK_FALSE(exceeds_root_bound(edge, c, p, 4));
  CHECK(exceeds_root_bound(edge + q(1, 1000000000), c, p, 4));
  CHECK_FALSE(exceeds_negated_root_bound(-edge, c, p, 4));
  CHECK(exceeds_negated_root_bound(-edge + q(1, 1000000000), c, p, 4));
  CHECK(exceeds_negated_root_bound(q(0), c, p, 4));
  CHECK_FALSE(exceeds_root_bound(q(-1), c, p, 4));
  CHECK(root_bracket(p, 4) == 2);
  Rational br = root_bracket(Natural(2), 2);
  CHECK(br * br <= 2);
  CHECK(2 - br * br < q(1, 1000000000));
}

TEST_CASE("gap report on the desk set") {
  auto gamma = build_gamma(parse_dimacs("p cnf 3 1\n1 -2 3 0"), select_vp(make_params(3, 2, 2), 11, 100));
  auto rep = satisfiability_gap(gamma);
  CHECK(rep.worst_clause == std::optional<std::string>("clause_1"));
  auto vb = variables_bounds(gamma);
  std::string one[] = {"clause_1"};
  CHECK(rep.gap == (vb.lb - vb.ub) + clauses_lower_bound(gamma, one) - clauses_lower_bound(gamma, {}));
  CHECK(rep.clauses_difference == gamma.alphas.alpha_c * gamma.alphas.alpha_v_lower / Rational(6851));
  const auto* gap = rep.report.find("gap");
  REQUIRE(gap);
  CHECK(gap->lhs == rep.gap);
  CHECK(gap->pass == (rep.gap.sign() > 0));
  CHECK(rep.report.find("delta_identity")->pass);
  CHECK(rep.report.find("delta_1")->pass);
  CHECK_FALSE(rep.report.find("constants_joint_density")->pass);
  CHECK_FALSE(rep.report.find("regime_lower1_magnitude")->pass);
  for (const auto& e : rep.report.entries) CHECK(e.margin == e.lhs - e.rhs);
}

TEST_CASE("zero clauses leave the variables comparison only") {
  auto gamma = build_gamma(CnfFormula{2, {}}, select_vp(make_params(2, 2, 2), 11, 100));
  auto rep = satisfiability_gap(gamma);
  CHECK_FALSE(rep.worst_clause);
  CHECK(rep.clauses_difference == 0);
  CHECK(rep.gap == rep.variables_difference);
  CHECK(rep.report.find("claim_clauses_side") == nullptr);
}

TEST_CASE("claims hold once lower_1 exceeds n^(6 b_tilde)") {
  // n = 2: 2^12 = 4096
  auto vp2 = select_vp(make_params(2, 2, 2, std::nullopt, Prime{100}), 4097, 100000);
  auto g2 = build_gamma(CnfFormula{2, {}}, vp2);
  auto r2 = satisfiability_gap(g2);
  CHECK(r2.report.find("regime_lower1_magnitude")->pass);
  CHECK(r2.report.find("claim_variables_side")->pass);

  // n = 3: 3^12 = 531441
  auto vp3 = select_vp(make_params(3, 2, 2, std::nullopt, Prime{100}), 531442, 2000000);
  auto g3 = build_gamma(parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 3 0\n"), vp3);
  auto r3 = satisfiability_gap(g3);
  CHECK(r3.report.find("regime_lower1_magnitude")->pass);
  CHECK(r3.report.find("claim_variables_side")->pass);
  CHECK(r3.report.find("claim_clauses_side")->pass);
  CHECK(r3.gap.sign() > 0);
  CHECK(r3.report.find("gap")->pass);
}

TEST_CASE("printed per-variable bounds") {
  auto gamma = build_gamma(CnfFormula{2, {}}, select_vp(make_params(2, 2, 2), 11, 100));
  const auto& c = gamma.instance.at("var_1");
  CHECK(delta_upper_bound(gamma, 1, 13) == cost_at(c.K, c.h, 13) + q(8, 35) / q(13));
  CHECK(delta_lower_bound(gamma, 1, 14) == cost_at(c.K, c.h, 14));
  CHECK(delta_tight_lower_bound(gamma, 1, 12) ==
        (c.K + gamma.alphas.alpha_v * gamma.alphas.a_n) / q(12) + c.h * q(12));
  std::vector<Natural> others = {Natural(19)};
  CHECK(variables_system_delta(gamma, 1, 11, others) == cost_at(c.K, c.h, 11) + q(8, 35) * q(18, 19) / q(11));
  CHECK_THROWS_AS(delta_upper_bound(gamma, 3, 13), ValidationError);
}
