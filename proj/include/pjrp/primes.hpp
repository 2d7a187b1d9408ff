#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pjrp/numerics.hpp"

namespace pjrp::primes {

using Prime = std::uint64_t;

/// All primes <= limit, ascending. Throws CapExceeded when limit > cap.
std::vector<Prime> sieve(Prime limit, Prime cap = 100'000'000);

/// Deterministic trial division.
bool is_prime(Prime n);

struct PrimePair {
  Prime lower = 0;
  Prime upper = 0;
  Prime gap() const { return upper - lower; }
  friend bool operator==(const PrimePair&, const PrimePair&) = default;
};

/// Adjacent entries of a complete ascending prime list whose gap is <= b and has the
/// parity of b. Every gap except that of (2, 3) is even, so (2, 3) appears only for odd b.
std::vector<PrimePair> consecutive_pairs(std::span<const Prime> primes, Prime b);

/// True iff some multiple of a prime in `vp` lies strictly inside the candidate's gap.
bool violates_condition3(const PrimePair& candidate, std::span<const Prime> vp);

struct ReductionParams {
  std::uint64_t b = 2;
  std::uint64_t b_tilde = 2;
  Rational B;
  std::uint64_t n = 1;
  std::optional<Prime> pp_cap;
};

/// max(1, (6 * b_tilde * ceil(log2 n))^b_tilde). The integer ceiling of log2 makes
/// this at least (6 * b_tilde * log n)^b_tilde for either log base.
Rational default_stretch(std::uint64_t b_tilde, std::uint64_t n);

/// Throws ValidationError unless b >= 2, b_tilde >= 2, n >= 1 and B > 0.
/// A missing B is replaced by default_stretch.
ReductionParams make_params(std::uint64_t n, std::uint64_t b, std::uint64_t b_tilde,
                            std::optional<Rational> B = std::nullopt, std::optional<Prime> pp_cap = std::nullopt);

struct VpSet {
  std::vector<PrimePair> pairs;
  std::vector<Prime> pp;
  ReductionParams params;

  /// Flattened pair primes: lower_1, upper_1, lower_2, ...
  std::vector<Prime> vp() const;
};

/// Primes < min(first_lower, pp_cap).
std::vector<Prime> pp_below(Prime first_lower, std::optional<Prime> pp_cap);

/// Greedy choice of the first params.n pairs with lower >= p_start, upper <= limit,
/// gap <= params.b, disjoint from and above the previous pair, and no multiple of an
/// already selected prime inside the gap. Throws ValidationError when fewer qualify.
VpSet select_vp(const ReductionParams& params, Prime p_start, Prime limit, Prime sieve_cap = 100'000'000);

struct ConditionRow {
  std::string condition;
  bool pass = false;
  Rational margin;
  std::string note;
};

/// Every condition is re-checked from the raw pairs; failures are reported, never thrown.
std::vector<ConditionRow> validate_conditions(const VpSet& vp, const ReductionParams& params);
inline std::vector<ConditionRow> validate_conditions(const VpSet& vp) { return validate_conditions(vp, vp.params); }

}  // namespace pjrp::primes
