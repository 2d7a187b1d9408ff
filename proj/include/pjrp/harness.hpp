#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pjrp/bounds.hpp"
#include "pjrp/costmodel.hpp"
#include "pjrp/dimacs.hpp"
#include "pjrp/reduction.hpp"
#include "pjrp/report.hpp"

namespace pjrp::harness {

using reduction::CnfFormula;
using reduction::Gamma;
using reduction::TruthAssignment;

/// Every satisfying assignment, in binary counting order with x1 as the low bit.
/// Throws CapExceeded for more than 24 variables.
std::vector<TruthAssignment> brute_force_sat(const CnfFormula& cnf);

/// Candidate cycle times per commodity id, each list ascending and duplicate-free.
class SearchWindow {
 public:
  /// Throws ValidationError on an empty list or a candidate < 1.
  void set(const std::string& id, std::vector<Natural> candidates);
  /// Inclusive integer range [lo, hi].
  void set_range(const std::string& id, const Natural& lo, const Natural& hi);

  const std::map<std::string, std::vector<Natural>, std::less<>>& candidates() const { return candidates_; }
  /// Throws ValidationError for an unknown id.
  const std::vector<Natural>& at(std::string_view id) const;
  /// Product of the list sizes.
  Natural combinations() const;

 private:
  std::map<std::string, std::vector<Natural>, std::less<>> candidates_;
};

/// Constants and clauses at t*, each variable over [p_lower, p_upper].
SearchWindow pinned_window(const Gamma& gamma);
/// Constants and clauses over t* -1..t* +1, each variable over [p_lower - 1, p_upper + 1].
SearchWindow full_window(const Gamma& gamma);

struct SolveOptions {
  cost::DensityLimits limits;
  std::uint64_t search_cap = 10'000'000;
  unsigned threads = 1;
  bool prune = true;
};

struct SolveResult {
  cost::Policy policy;
  Rational cost;
  Natural explored;  // complete policies evaluated
};

/// Minimum total cost over the window's Cartesian product; ties go to the
/// lexicographically smallest cycle vector in canonical commodity order.
///
/// Depth-first in canonical order with a bound of assigned standalone costs, the
/// cheapest standalone cost of each unassigned commodity and K0 times the joint
/// density of the assigned prefix. With threads > 1 the first commodity's candidates
/// are dealt out round-robin and the partial optima reduced by (cost, cycle vector).
/// Throws ValidationError when the window does not cover the instance exactly and
/// CapExceeded when the product of window sizes exceeds options.search_cap.
SolveResult solve_exact(const cost::Instance& inst, const SearchWindow& win, const SolveOptions& options = {});

/// Both integer optima (ordering cost K and K + K0) of every constants and clauses
/// commodity against its t*.
VerificationReport verify_constants(const Gamma& gamma);

struct ClaimOptions {
  // Compare the printed bounds with exact marginal costs from the density engine.
  bool exact_delta = true;
  // Contexts of the other variables checked per variable; all 2^(n-1) when within the cap,
  // otherwise all-lower and all-upper only.
  std::uint64_t context_cap = 16;
  cost::DensityLimits limits;
};

/// Per variable: the upper-neighbour, lower-neighbour, interior and lower-vs-upper
/// comparisons from the printed bound formulas, plus exact marginal costs against
/// those bounds when enabled.
VerificationReport verify_variable_claims(const Gamma& gamma, const ClaimOptions& options = {});

struct CurveRow {
  Natural t;
  Rational standalone;
  Rational lb;
  Rational ub;
};

/// Rows for t in [p_lower - 2, p_upper + 2]. lb is the interior bound strictly between
/// the pair primes and the standalone cost elsewhere; ub adds K0*alpha_c/t at the
/// pair primes and K0/t elsewhere. Throws ValidationError for an invalid index.
std::vector<CurveRow> bounds_curve(const Gamma& gamma, std::uint32_t var_index);

/// Total cost of one encoded truth assignment.
struct EncodingCost {
  TruthAssignment assignment;
  Rational cost;
  bool satisfying = false;
};

/// All 2^n encodings in binary counting order. Throws CapExceeded for n > 24.
std::vector<EncodingCost> encoding_costs(const Gamma& gamma, const cost::DensityLimits& limits = {});

enum class Mode { pinned, full };

std::string_view to_string(Mode m);
/// Throws ValidationError for anything but "pinned" or "full".
Mode parse_mode(std::string_view name);

struct ExperimentReport {
  Mode mode = Mode::pinned;
  std::uint32_t num_vars = 0;
  std::size_t num_clauses = 0;
  std::size_t satisfying_assignments = 0;
  SolveResult optimum;
  bool variables_on_pair_primes = false;
  bool constants_and_clauses_at_t_star = false;
  // variables whose optimal cycle lies strictly between the pair primes
  std::vector<std::string> interior_variables;
  std::optional<TruthAssignment> extracted;
  std::optional<bool> extracted_satisfies;
  // extraction agrees with the oracle on satisfiability; unset when nothing was extracted
  std::optional<bool> agreement;
  std::optional<Rational> best_satisfying_cost;
  std::optional<Rational> best_unsatisfying_cost;
  // best unsatisfying encoding minus best satisfying encoding
  std::optional<Rational> enumeration_gap;
  reduction::GapReport bound_gap;
};

/// Builds the reduction instance, solves it over the mode's window, extracts the
/// assignment and compares against the truth table and every encoding's cost.
ExperimentReport end_to_end(const CnfFormula& cnf, const primes::VpSet& vp, Mode mode,
                            const SolveOptions& options = {});

}  // namespace pjrp::harness
