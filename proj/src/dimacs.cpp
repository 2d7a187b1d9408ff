#include "pjrp/dimacs.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "pjrp/errors.hpp"

namespace pjrp::reduction {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

long long parse_int(std::string_view tok, std::size_t line_no) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ValidationError("line " + std::to_string(line_no) + ": expected an integer, got '" + std::string(tok) + "'");
  return v;
}

void check_clause(const std::vector<long long>& lits, std::uint32_t n, std::size_t index) {
  const std::string where = "clause " + std::to_string(index);
  if (lits.size() != 3)
    throw ValidationError(where + " has " + std::to_string(lits.size()) + " literals; exactly 3 are required");
  for (long long l : lits) {
    long long v = l < 0 ? -l : l;
    if (v < 1 || v > static_cast<long long>(n))
      throw ValidationError(where + ": variable " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      if (std::llabs(lits[a]) == std::llabs(lits[b]))
        throw ValidationError(where + ": variable " + std::to_string(std::llabs(lits[a])) + " appears twice");
    }
  }
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula cnf;
  bool have_header = false;
  long long declared = 0;
  std::vector<long long> pending;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == 'c') continue;
    if (toks.front() == "%") break;
    if (toks.front() == "p") {
      if (have_header) throw ValidationError("line " + std::to_string(line_no) + ": second header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ValidationError("line " + std::to_string(line_no) + ": header must read 'p cnf <vars> <clauses>'");
      long long n = parse_int(toks[2], line_no);
      declared = parse_int(toks[3], line_no);
      if (n < 1 || n > 0xFFFFFFFFLL || declared < 0)
        throw ValidationError("line " + std::to_string(line_no) + ": header counts out of range");
      cnf.num_vars = static_cast<std::uint32_t>(n);
      have_header = true;
      continue;
    }
    if (!have_header) throw ValidationError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    for (auto tok : toks) {
      long long v = parse_int(tok, line_no);
      if (v != 0) {
        pending.push_back(v);
        continue;
      }
      check_clause(pending, cnf.num_vars, cnf.clauses.size() + 1);
      Clause c;
      for (std::size_t k = 0; k < 3; ++k) {
        c.literals[k] = Literal{static_cast<std::uint32_t>(std::llabs(pending[k])), pending[k] > 0};
      }
      cnf.clauses.push_back(c);
      pending.clear();
    }
  }
  if (!have_header) throw ValidationError("missing 'p cnf' header");
  if (!pending.empty()) throw ValidationError("last clause is not terminated by 0");
  if (static_cast<long long>(cnf.clauses.size()) != declared)
    throw ValidationError("header declares " + std::to_string(declared) + " clauses, found " +
                          std::to_string(cnf.clauses.size()));
  return cnf;
}

std::string to_dimacs(const CnfFormula& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (const auto& l : c.literals) out << (l.positive ? "" : "-") << l.var << ' ';
    out << "0\n";
  }
  return out.str();
}

void check_formula(const CnfFormula& cnf) {
  if (cnf.num_vars < 1) throw ValidationError("formula needs at least one variable");
  for (std::size_t r = 0; r < cnf.clauses.size(); ++r) {
    std::vector<long long> lits;
    for (const auto& l : cnf.clauses[r].literals) lits.push_back(l.positive ? l.var : -static_cast<long long>(l.var));
    check_clause(lits, cnf.num_vars, r + 1);
  }
}

bool satisfies(const Clause& clause, const TruthAssignment& a) {
  return std::any_of(clause.literals.begin(), clause.literals.end(),
                     [&](const Literal& l) { return a[l.var] == l.positive; });
}

bool satisfies(const CnfFormula& cnf, const TruthAssignment& a) {
  return std::all_of(cnf.clauses.begin(), cnf.clauses.end(), [&](const Clause& c) { return satisfies(c, a); });
}

}  // namespace pjrp::reduction
