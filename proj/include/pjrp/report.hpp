#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pjrp/numerics.hpp"

namespace pjrp {

enum class Relation { lt, le, gt, ge, eq };

std::string_view to_string(Relation rel);
bool holds(const Rational& lhs, Relation rel, const Rational& rhs);

/// One checked quantity. margin is always lhs - rhs.
struct ReportEntry {
  std::string name;
  Relation relation = Relation::eq;
  Rational lhs;
  Rational rhs;
  Rational margin;
  bool pass = false;
  std::string notes;
};

struct VerificationReport {
  std::vector<ReportEntry> entries;

  /// Appends an entry whose pass flag is decided from the exact sides.
  ReportEntry& add(std::string name, Rational lhs, Relation rel, Rational rhs, std::string notes = {});
  /// Appends an entry decided elsewhere, for relations whose true rhs is irrational
  /// and only a rational bracket is shown.
  ReportEntry& add_decided(std::string name, Rational lhs, Relation rel, Rational rhs, bool pass,
                           std::string notes = {});

  bool all_pass() const;
  std::size_t failures() const;
  const ReportEntry* find(std::string_view name) const;
  void append(const VerificationReport& other);
};

}  // namespace pjrp
