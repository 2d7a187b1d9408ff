#include "pjrp/bounds.hpp"

#include <algorithm>

#include "pjrp/errors.hpp"

namespace pjrp::reduction {

namespace {

Rational r(Prime p) { return Rational(Natural(static_cast<unsigned long>(p))); }

const cost::Commodity& commodity(const Gamma& gamma, std::uint32_t i) {
  return gamma.instance.at(gamma.variable(i).id);
}

Rational miss(const Rational& t) { return (t - 1) / t; }

}  // namespace

VariablesBounds variables_bounds(const Gamma& gamma) {
  VariablesBounds b;
  const auto& al = gamma.alphas;
  const Rational& K0 = gamma.instance.K0();
  for (const auto& v : gamma.variables) {
    b.ub_standalone += variable_standalone(gamma, v.i, v.pair.upper);
    b.lb_standalone += variable_standalone(gamma, v.i, v.pair.lower);
  }
  b.ub_joint = K0 * al.alpha_c * (Rational(1) - al.alpha_v_upper);
  b.lb_joint = K0 * al.alpha_c * (Rational(1) - al.alpha_v_lower);
  b.ub = b.ub_standalone + b.ub_joint;
  b.lb = b.lb_standalone + b.lb_joint;
  return b;
}

Rational clauses_lower_bound(const Gamma& gamma, std::span<const std::string> unsatisfied) {
  Rational standalone;
  for (const auto& c : gamma.clauses) {
    standalone += eoq::average_periodic_cost(gamma.instance.at(c.id).eoq(), Rational(c.t_star));
  }
  Rational product(1);
  std::vector<std::string> seen;
  for (const auto& id : unsatisfied) {
    auto it = std::find_if(gamma.clauses.begin(), gamma.clauses.end(), [&](const ClauseRole& c) { return c.id == id; });
    if (it == gamma.clauses.end()) throw ValidationError("unknown clause id '" + id + "'");
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
    seen.push_back(id);
    product *= miss(Rational(it->t_star));
  }
  return standalone +
         gamma.instance.K0() * gamma.alphas.alpha_c * gamma.alphas.alpha_v_lower * (Rational(1) - product);
}

Rational variable_standalone(const Gamma& gamma, std::uint32_t i, const Natural& t) {
  return eoq::average_periodic_cost(commodity(gamma, i).eoq(), Rational(t));
}

Rational delta_upper_bound(const Gamma& gamma, std::uint32_t i, const Natural& t) {
  return variable_standalone(gamma, i, t) + gamma.instance.K0() * gamma.alphas.alpha_c / Rational(t);
}

Rational delta_lower_bound(const Gamma& gamma, std::uint32_t i, const Natural& t) {
  return variable_standalone(gamma, i, t);
}

Rational delta_tight_lower_bound(const Gamma& gamma, std::uint32_t i, const Natural& t) {
  const auto& c = commodity(gamma, i);
  Rational tt(t);
  return (c.K + gamma.instance.K0() * gamma.alphas.alpha_v * gamma.alphas.a_n) / tt + c.lambda * c.h * tt / Rational(2);
}

Rational variables_system_delta(const Gamma& gamma, std::uint32_t i, const Natural& t,
                                std::span<const Natural> other_variable_cycles) {
  Rational product(1);
  for (const auto& o : other_variable_cycles) product *= miss(Rational(o));
  return variable_standalone(gamma, i, t) + gamma.instance.K0() * gamma.alphas.alpha_c * product / Rational(t);
}

bool exceeds_root_bound(const Rational& x, const Rational& c, const Natural& p, unsigned long k) {
  // x > c p^(1/k) / p^4  <=>  z = x p^4 / c > p^(1/k)  <=>  z > 0 and z^k > p
  Rational z = x * Rational(p * p * p * p) / c;
  if (z.sign() <= 0) return false;
  return pow(z, k) > Rational(p);
}

bool exceeds_negated_root_bound(const Rational& x, const Rational& c, const Natural& p, unsigned long k) {
  if (x.sign() >= 0) return true;
  Rational z = -x * Rational(p * p * p * p) / c;
  return pow(z, k) < Rational(p);
}

Rational root_bracket(const Natural& p, unsigned long k) {
  BigInt scale = pow(BigInt(2), 64);
  Natural root = iroot_floor(p * pow(scale, k), k);
  return Rational(root, scale);
}

GapReport satisfiability_gap(const Gamma& gamma) {
  GapReport out;
  auto& rep = out.report;
  const auto& al = gamma.alphas;
  const auto& params = gamma.vp.params;

  auto vb = variables_bounds(gamma);
  out.variables_difference = vb.lb - vb.ub;

  const ClauseRole* worst = nullptr;
  for (const auto& c : gamma.clauses) {
    if (!worst || c.t_star > worst->t_star) worst = &c;
  }
  if (worst) {
    out.worst_clause = worst->id;
    std::string one[] = {worst->id};
    out.clauses_difference = clauses_lower_bound(gamma, one) - clauses_lower_bound(gamma, {});
  }
  out.gap = out.variables_difference + out.clauses_difference;

  rep.add("gap", out.gap, Relation::gt, 0,
          worst ? "variables lb-ub plus clauses bound with " + worst->id + " unsatisfied"
                : "no clauses; variables lb-ub only");
  rep.add("variables_lb_minus_ub", out.variables_difference, Relation::le, 0, "lb at lower primes, ub at upper primes");
  rep.add("variables_joint_difference", vb.ub_joint - vb.lb_joint, Relation::eq,
          gamma.instance.K0() * al.alpha_c * (al.alpha_v_lower - al.alpha_v_upper), "");

  const Natural p1(static_cast<unsigned long>(gamma.vp.pairs.front().lower));
  const unsigned long k = 3 * params.b_tilde;
  const Rational b_sq(BigInt(static_cast<unsigned long>(params.b * params.b)));
  const Rational c = b_sq * al.alpha_c * al.alpha_v_upper;
  const Rational shown = c * root_bracket(p1, k) / Rational(p1 * p1 * p1 * p1);
  const std::string bound_note = "rhs is b^2*alpha_c*alpha_v_upper*p1^(1/" + std::to_string(k) +
                                 " - 4) with the root bracketed below; pass decided exactly";
  rep.add_decided("claim_variables_side", out.variables_difference, Relation::gt, -shown,
                  exceeds_negated_root_bound(out.variables_difference, c, p1, k), bound_note);
  if (worst) {
    rep.add_decided("claim_clauses_side", out.clauses_difference, Relation::gt, shown,
                    exceeds_root_bound(out.clauses_difference, c, p1, k), bound_note);
  }

  Rational product(1);
  for (const auto& v : gamma.variables) {
    Rational lo = r(v.pair.lower), up = r(v.pair.upper), b = r(v.pair.gap());
    Rational delta = miss(lo) / miss(up);
    out.deltas.push_back(delta);
    product *= delta;
    rep.add("delta_" + std::to_string(v.i), delta, Relation::eq, Rational(1) - b / (lo * (lo + b - 1)), "");
  }
  rep.add("delta_identity", al.alpha_v_upper * product, Relation::eq, al.alpha_v_lower,
          "alpha_v_upper * prod delta_i against alpha_v_lower");

  rep.add("constants_joint_density", (Rational(1) - al.alpha_c) * (Rational(1) - al.alpha_v), Relation::eq,
          Rational(1) - al.alpha_c, "exact covered density against the closed form 1 - alpha_c; cancels in the gap");

  const BigInt n(static_cast<unsigned long>(gamma.variables.size()));
  rep.add("regime_lower1_magnitude", Rational(p1), Relation::gt, Rational(pow(n, 6 * params.b_tilde)),
          "lower_1 against n^(6*b_tilde)");
  rep.add("regime_n_ge_64", Rational(n), Relation::ge, 64,
          "parameter regime annotation");
  rep.add("regime_n_gt_3536", Rational(n), Relation::gt,
          3536, "parameter regime annotation");
  rep.add("regime_lower1_gt_2362", Rational(p1), Relation::gt, 2362, "parameter regime annotation");
  return out;
}

}  // namespace pjrp::reduction
