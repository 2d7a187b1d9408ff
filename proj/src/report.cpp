#include "pjrp/report.hpp"

#include <algorithm>

namespace pjrp {

std::string_view to_string(Relation rel) {
  switch (rel) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
    case Relation::eq: return "==";
  }
  return "==";
}

bool holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::lt: return lhs < rhs;
    case Relation::le: return lhs <= rhs;
    case Relation::gt: return lhs > rhs;
    case Relation::ge: return lhs >= rhs;
    case Relation::eq: return lhs == rhs;
  }
  return false;
}

ReportEntry& VerificationReport::add(std::string name, Rational lhs, Relation rel, Rational rhs, std::string notes) {
  bool pass = holds(lhs, rel, rhs);
  return add_decided(std::move(name), std::move(lhs), rel, std::move(rhs), pass, std::move(notes));
}

ReportEntry& VerificationReport::add_decided(std::string name, Rational lhs, Relation rel, Rational rhs, bool pass,
                                             std::string notes) {
  Rational margin = lhs - rhs;
  entries.push_back(ReportEntry{std::move(name), rel, std::move(lhs), std::move(rhs), std::move(margin), pass,
                                std::move(notes)});
  return entries.back();
}

bool VerificationReport::all_pass() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
}

const ReportEntry* VerificationReport::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void VerificationReport::append(const VerificationReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

}  // namespace pjrp
