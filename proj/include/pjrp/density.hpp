#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pjrp/numerics.hpp"

namespace pjrp::cost {

struct DensityLimits {
  // Distinct cycle values admitted by the closed-form densities, counted after
  // dropping duplicates and values that are multiples of another value.
  std::size_t subset_cap = 20;
  // Live inclusion-exclusion terms (distinct lcm values) an accumulator may hold.
  std::size_t term_cap = std::size_t{1} << 20;
  // Largest hyperperiod the counting oracle will scan.
  std::uint64_t lcm_cap = 10'000'000;
};

/// Inclusion-exclusion over "t divides the period" events with terms merged by lcm.
///
/// The union indicator of {multiples of c : c added} is kept as
/// sum_L coeff(L) * [L | period]. That expansion is unique, so adding a value that
/// is already covered leaves the map unchanged and the term count is bounded by the
/// number of distinct lcms, not by 2^k.
class UnionDensity {
 public:
  explicit UnionDensity(std::size_t term_cap = DensityLimits{}.term_cap) : term_cap_(term_cap) {}

  /// Adds the multiples of `cycle` (>= 1). Throws CapExceeded past the term cap.
  void add(const Natural& cycle);

  /// Asymptotic fraction of periods that are a multiple of some added cycle.
  Rational density() const;

  /// Fraction of periods that are multiples of `cycle` and of no added cycle.
  Rational uncovered_multiples(const Natural& cycle) const;

  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return generators_.empty(); }

 private:
  std::size_t term_cap_;
  std::map<Natural, long> terms_;
  std::vector<Natural> generators_;  // antichain under divisibility
  Natural hyperperiod_ = 1;
};

/// Sorted distinct values with every multiple of another member removed.
/// Throws ValidationError on a value < 1.
std::vector<Natural> reduce_cycles(std::span<const Natural> cycles);

/// Fraction of periods with at least one order. Throws CapExceeded when the
/// reduced set is larger than limits.subset_cap.
Rational joint_order_density(std::span<const Natural> cycles, const DensityLimits& limits = {});

/// jr(t, S): fraction of periods that are multiples of t and of nothing in `others`.
Rational sole_order_density(const Natural& t, std::span<const Natural> others,
                            const DensityLimits& limits = {});

/// Exact densities from prime factorizations. The union of "c divides the period"
/// events is a monotone formula over independent prime-exponent events, evaluated
/// by conditioning on one prime's exponent at a time and splitting into independent
/// components. Cost depends on how primes are shared, not on the number of cycles.
/// Throws CapExceeded after limits.term_cap recursion nodes.
Rational factored_union_density(std::span<const std::vector<PrimePower>> cycles, const DensityLimits& limits = {});

/// jr(t, others) from factorizations.
Rational factored_sole_density(const std::vector<PrimePower>& t, std::span<const std::vector<PrimePower>> others,
                               const DensityLimits& limits = {});

/// Counts ordering periods over one hyperperiod. Independent of the closed forms;
/// throws CapExceeded when lcm(cycles) > limits.lcm_cap.
Rational density_oracle(std::span<const Natural> cycles, const DensityLimits& limits = {});

}  // namespace pjrp::cost
