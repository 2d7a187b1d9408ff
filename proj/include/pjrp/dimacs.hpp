#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pjrp::reduction {

struct Literal {
  std::uint32_t var = 0;  // 1-based
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::array<Literal, 3> literals;
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// 3-CNF with exactly three literals over distinct variables per clause.
struct CnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Truth values for variables 1..n, stored 0-based.
struct TruthAssignment {
  std::vector<bool> values;

  bool operator[](std::uint32_t var) const { return values.at(var - 1); }
  std::size_t size() const { return values.size(); }
  friend bool operator==(const TruthAssignment&, const TruthAssignment&) = default;
};

/// Parses "p cnf n m" followed by 0-terminated clauses; 'c' lines are comments and a
/// '%' line ends the input. Throws ValidationError on a malformed header, a clause
/// count that disagrees with m, arity other than 3, a repeated variable or an index
/// outside 1..n.
CnfFormula parse_dimacs(std::string_view text);

std::string to_dimacs(const CnfFormula& cnf);

/// Throws ValidationError on a clause that breaks the 3-CNF invariants.
void check_formula(const CnfFormula& cnf);

bool satisfies(const Clause& clause, const TruthAssignment& a);
bool satisfies(const CnfFormula& cnf, const TruthAssignment& a);

}  // namespace pjrp::reduction
