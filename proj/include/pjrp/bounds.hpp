#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pjrp/reduction.hpp"
#include "pjrp/report.hpp"

namespace pjrp::reduction {

/// Closed-form bounds on the variables' share of the cost: ub has every variable at
/// its upper prime, lb every variable at its lower prime.
struct VariablesBounds {
  Rational ub;
  Rational lb;
  Rational ub_standalone;
  Rational lb_standalone;
  Rational ub_joint;  // K0 * alpha_c * (1 - alpha_v_upper)
  Rational lb_joint;  // K0 * alpha_c * (1 - alpha_v_lower)
};

VariablesBounds variables_bounds(const Gamma& gamma);

/// Standalone clause costs at t* plus K0 * alpha_c * alpha_v_lower * (1 - prod_F (t*-1)/t*)
/// over the unsatisfied clause ids F. Throws ValidationError for an unknown id.
Rational clauses_lower_bound(const Gamma& gamma, std::span<const std::string> unsatisfied);

// Per-variable bounds on the marginal cost of variable i at cycle t.

/// g_i(t).
Rational variable_standalone(const Gamma& gamma, std::uint32_t i, const Natural& t);
/// g_i(t) + K0 * alpha_c / t; an upper bound when t is one of the pair primes.
Rational delta_upper_bound(const Gamma& gamma, std::uint32_t i, const Natural& t);
/// g_i(t); valid for every t.
Rational delta_lower_bound(const Gamma& gamma, std::uint32_t i, const Natural& t);
/// (K + K0 * alpha_v * a_n)/t + lambda*h*t/2; the interior bound for p_lower < t < p_upper.
Rational delta_tight_lower_bound(const Gamma& gamma, std::uint32_t i, const Natural& t);
/// Marginal cost within the constants-plus-variables system when variable i sits on a
/// pair prime t and every other variable j on a pair prime: g_i(t) + K0 * alpha_c/t * prod_j (t_j-1)/t_j.
Rational variables_system_delta(const Gamma& gamma, std::uint32_t i, const Natural& t,
                                std::span<const Natural> other_variable_cycles);

/// True iff x > c * p^(1/k - 4) for c > 0, p >= 1, k >= 1, decided exactly.
bool exceeds_root_bound(const Rational& x, const Rational& c, const Natural& p, unsigned long k);
/// True iff x > -c * p^(1/k - 4), decided exactly.
bool exceeds_negated_root_bound(const Rational& x, const Rational& c, const Natural& p, unsigned long k);
/// A rational lower bracket of p^(1/k) with 64 fractional bits.
Rational root_bracket(const Natural& p, unsigned long k);

struct GapReport {
  Rational variables_difference;  // lb - ub of the variables part
  Rational clauses_difference;    // clauses bound with the worst single clause unsatisfied minus with none
  Rational gap;                   // sum of both
  std::optional<std::string> worst_clause;
  std::vector<Rational> deltas;   // ((p_lo-1)/p_lo) / ((p_up-1)/p_up) per pair
  VerificationReport report;
};

/// Exact comparison of the cheapest satisfying encoding against the cheapest
/// encoding that leaves one clause unsatisfied, with both claim-side bounds, the
/// per-pair delta factors and parameter-regime rows. Nothing is thrown for a
/// negative margin.
GapReport satisfiability_gap(const Gamma& gamma);

}  // namespace pjrp::reduction
