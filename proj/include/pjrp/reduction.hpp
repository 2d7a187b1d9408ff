#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pjrp/costmodel.hpp"
#include "pjrp/dimacs.hpp"
#include "pjrp/primes.hpp"

namespace pjrp::reduction {

using primes::Prime;
using primes::PrimePair;
using primes::VpSet;

struct AlphaSet {
  Rational alpha_c;        // over PP
  Rational alpha_v;        // over all pair primes
  Rational alpha_v_upper;  // over upper pair primes
  Rational alpha_v_lower;  // over lower pair primes
  Rational a_n;            // over the n-1 smallest primes of PP
  friend bool operator==(const AlphaSet&, const AlphaSet&) = default;
};

/// Products of (p-1)/p; a_n uses the smallest n-1 primes of PP with n = pair count,
/// or all of PP when it is shorter.
AlphaSet compute_alphas(const VpSet& vp);

/// Lower prime of the variable's pair for a negated literal, upper prime otherwise.
/// Throws ValidationError when the variable has no pair.
Prime literal_prime(const Literal& lit, const VpSet& vp);

struct ConstantRole {
  std::string id;
  std::uint32_t l = 0;
  std::uint32_t m = 0;
  Prime p = 0;
  Prime v = 0;
  Natural t_star;
};

struct VariableRole {
  std::string id;
  std::uint32_t i = 0;
  PrimePair pair;
};

struct ClauseRole {
  std::string id;
  std::uint32_t r = 0;
  Clause clause;
  std::array<Prime, 3> primes{};
  Natural t_star;
};

/// The compiled PJRP instance with its role tables. The vp field holds exactly the
/// first n pairs of the input set.
struct Gamma {
  CnfFormula cnf;
  VpSet vp;
  AlphaSet alphas;
  cost::Instance instance;
  std::vector<ConstantRole> constants;
  std::vector<VariableRole> variables;
  std::vector<ClauseRole> clauses;

  const VariableRole& variable(std::uint32_t i) const;
  /// All primes that occur in any cycle of a pinned policy (PP then pair primes).
  std::vector<Natural> known_primes() const;
};

std::string constant_id(std::uint32_t l, std::uint32_t m);
std::string variable_id(std::uint32_t i);
std::string clause_id(std::uint32_t r);

/// Variable holding cost and ordering cost for one pair under the given alphas.
Rational variable_h(const PrimePair& pair, const AlphaSet& alphas);
Rational variable_K(const PrimePair& pair, const AlphaSet& alphas);

/// Throws ValidationError when vp has fewer than n pairs, PP is empty, a clause is
/// malformed or some variable ordering cost comes out non-positive.
Gamma build_gamma(const CnfFormula& cnf, const VpSet& vp);

/// Variable i true iff its cycle equals the upper prime. Throws ValidationError
/// naming the first variable whose cycle is neither pair prime.
TruthAssignment extract_assignment(const Gamma& gamma, const cost::Policy& pol);

/// Constants and clauses at t*, variable i at its upper prime when true and lower otherwise.
cost::Policy encode_assignment(const Gamma& gamma, const TruthAssignment& a);

/// Every assignment of gamma's variables in binary counting order (x1 is the low bit).
TruthAssignment assignment_from_bits(std::uint32_t n, std::uint64_t bits);

enum class DensityMethod { automatic, closed_form, inclusion_exclusion, factored };

std::string_view to_string(DensityMethod m);

struct TcDecomposition {
  Rational tc_constants;
  Rational tc_variables;
  Rational tc_clauses;
  Rational standalone_constants;
  Rational standalone_variables;
  Rational standalone_clauses;
  // densities of the constants set, of variables outside it, and of clauses outside both
  Rational density_constants;
  Rational density_variables;
  Rational density_clauses;
  DensityMethod method = DensityMethod::automatic;

  Rational total() const { return tc_constants + tc_variables + tc_clauses; }
};

/// True when constants and clauses sit at t* and every variable at a pair prime.
bool is_pinned(const Gamma& gamma, const cost::Policy& pol);

/// Three-way attribution of the total cost: joint payments go to the constants set
/// first, then to variables, then to clauses. `automatic` uses the closed forms for
/// pinned policies, otherwise inclusion-exclusion within the limits and the factored
/// engine beyond them. Forcing closed_form on an unpinned policy throws ValidationError.
TcDecomposition tc_decompose(const Gamma& gamma, const cost::Policy& pol, const cost::DensityLimits& limits = {},
                             DensityMethod method = DensityMethod::automatic);

/// Clause ids left unsatisfied by the assignment.
std::vector<std::string> unsatisfied_clauses(const Gamma& gamma, const TruthAssignment& a);

}  // namespace pjrp::reduction
