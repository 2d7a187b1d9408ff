#include "pjrp/costmodel.hpp"

#include <algorithm>
#include <tuple>

#include "pjrp/errors.hpp"

namespace pjrp::cost {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::constant: return "constant";
    case Kind::variable: return "variable";
    case Kind::clause: return "clause";
    case Kind::generic: return "generic";
  }
  return "generic";
}

Kind parse_kind(std::string_view name) {
  if (name == "constant") return Kind::constant;
  if (name == "variable") return Kind::variable;
  if (name == "clause") return Kind::clause;
  if (name == "generic") return Kind::generic;
  throw ValidationError("unknown commodity kind '" + std::string(name) + "'");
}

namespace {

void check_role(const Commodity& c) {
  switch (c.kind) {
    case Kind::constant:
      if (!c.meta.l || !c.meta.m) throw ValidationError("constant commodity '" + c.id + "' needs meta l and m");
      break;
    case Kind::variable:
      if (!c.meta.i) throw ValidationError("variable commodity '" + c.id + "' needs meta i");
      break;
    case Kind::clause:
      if (!c.meta.r) throw ValidationError("clause commodity '" + c.id + "' needs meta r");
      break;
    case Kind::generic: break;
  }
}

auto canonical_key(const Commodity& c) {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  switch (c.kind) {
    case Kind::constant: a = *c.meta.l; b = *c.meta.m; break;
    case Kind::variable: a = *c.meta.i; break;
    case Kind::clause: a = *c.meta.r; break;
    case Kind::generic: break;
  }
  return std::make_tuple(static_cast<int>(c.kind), a, b, std::string_view(c.id));
}

}  // namespace

Instance::Instance(std::vector<Commodity> commodities, Rational K0)
    : commodities_(std::move(commodities)), K0_(std::move(K0)) {
  if (commodities_.empty()) throw ValidationError("instance needs at least one commodity");
  if (K0_.sign() < 0) throw ValidationError("joint ordering cost K0 must be >= 0");
  for (const auto& c : commodities_) {
    if (c.id.empty()) throw ValidationError("commodity id must be non-empty");
    eoq::make_params(c.K, c.h, c.lambda);
    check_role(c);
  }
  std::sort(commodities_.begin(), commodities_.end(),
            [](const Commodity& a, const Commodity& b) { return canonical_key(a) < canonical_key(b); });
  for (std::size_t k = 0; k < commodities_.size(); ++k) {
    if (!index_.emplace(commodities_[k].id, k).second)
      throw ValidationError("duplicate commodity id '" + commodities_[k].id + "'");
  }
}

const Commodity& Instance::at(std::string_view id) const {
  auto idx = index_of(id);
  if (!idx) throw ValidationError("unknown commodity '" + std::string(id) + "'");
  return commodities_[*idx];
}

std::optional<std::size_t> Instance::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Policy::Policy(std::map<std::string, Natural> cycles) {
  for (auto& [id, t] : cycles) set(id, std::move(t));
}

void Policy::set(const std::string& id, Natural t) {
  if (t < 1) throw ValidationError("cycle time for '" + id + "' must be >= 1, got " + t.get_str());
  cycles_.insert_or_assign(id, std::move(t));
}

const Natural& Policy::cycle(std::string_view id) const {
  auto it = cycles_.find(id);
  if (it == cycles_.end()) throw ValidationError("policy has no cycle time for '" + std::string(id) + "'");
  return it->second;
}

Rational Policy::order_quantity(const Commodity& c) const { return c.lambda * Rational(cycle(c.id)); }

void check_covers(const Instance& inst, const Policy& pol) {
  for (const auto& c : inst.commodities()) {
    if (!pol.contains(c.id)) throw ValidationError("policy is missing a cycle time for '" + c.id + "'");
  }
  for (const auto& [id, t] : pol.cycles()) {
    if (!inst.index_of(id)) throw ValidationError("policy names unknown commodity '" + id + "'");
  }
}

std::vector<Natural> cycles_in_order(const Instance& inst, const Policy& pol) {
  check_covers(inst, pol);
  std::vector<Natural> out;
  out.reserve(inst.size());
  for (const auto& c : inst.commodities()) out.push_back(pol.cycle(c.id));
  return out;
}

Rational total_average_cost(const Instance& inst, const Policy& pol, const DensityLimits& limits) {
  auto cycles = cycles_in_order(inst, pol);
  Rational total;
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    total += eoq::average_periodic_cost(inst.commodities()[k].eoq(), Rational(cycles[k]));
  }
  if (!inst.K0().is_zero()) total += inst.K0() * joint_order_density(cycles, limits);
  return total;
}

Rational marginal_cost(const Commodity& c, const Natural& t, std::span<const Natural> others, const Rational& K0,
                       const DensityLimits& limits) {
  Rational standalone = eoq::average_periodic_cost(c.eoq(), Rational(t));
  return standalone + K0 * sole_order_density(t, others, limits);
}

}  // namespace pjrp::cost
