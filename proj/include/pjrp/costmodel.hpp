#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pjrp/density.hpp"
#include "pjrp/eoq.hpp"
#include "pjrp/numerics.hpp"

namespace pjrp::cost {

enum class Kind { constant, variable, clause, generic };

std::string_view to_string(Kind kind);
/// Throws ValidationError for an unknown name.
Kind parse_kind(std::string_view name);

/// Role indices carried by reduction commodities: (l, m) for constants,
/// i for variables, r for clauses. All 1-based.
struct RoleMeta {
  std::optional<std::uint32_t> l;
  std::optional<std::uint32_t> m;
  std::optional<std::uint32_t> i;
  std::optional<std::uint32_t> r;

  bool empty() const { return !l && !m && !i && !r; }
  friend bool operator==(const RoleMeta&, const RoleMeta&) = default;
};

struct Commodity {
  std::string id;
  Rational K;
  Rational h;
  Rational lambda;
  Kind kind = Kind::generic;
  RoleMeta meta;

  eoq::EoqParams eoq() const { return eoq::EoqParams{K, h, lambda}; }
};

/// A PJRP instance. Commodities are held in canonical order: constants by (l, m),
/// then variables by i, then clauses by r, then generic commodities by id.
class Instance {
 public:
  /// Throws ValidationError on an empty list, duplicate ids, non-positive costs,
  /// negative K0 or missing role indices.
  Instance(std::vector<Commodity> commodities, Rational K0);

  const std::vector<Commodity>& commodities() const { return commodities_; }
  const Rational& K0() const { return K0_; }
  std::size_t size() const { return commodities_.size(); }

  /// Throws ValidationError for an unknown id.
  const Commodity& at(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

 private:
  std::vector<Commodity> commodities_;
  Rational K0_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Integer cycle time per commodity id.
class Policy {
 public:
  Policy() = default;
  /// Throws ValidationError for a cycle time < 1.
  explicit Policy(std::map<std::string, Natural> cycles);

  void set(const std::string& id, Natural t);
  /// Throws ValidationError for an unknown id.
  const Natural& cycle(std::string_view id) const;
  bool contains(std::string_view id) const { return cycles_.find(id) != cycles_.end(); }
  const std::map<std::string, Natural, std::less<>>& cycles() const { return cycles_; }

  /// q_c = lambda_c * t_c.
  Rational order_quantity(const Commodity& c) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::map<std::string, Natural, std::less<>> cycles_;
};

/// Throws ValidationError unless `pol` assigns exactly the commodities of `inst`.
void check_covers(const Instance& inst, const Policy& pol);

/// Cycle times of `pol` in the instance's canonical commodity order.
std::vector<Natural> cycles_in_order(const Instance& inst, const Policy& pol);

/// sum_c (K_c/t_c + lambda_c h_c t_c / 2) + K0 * joint_order_density.
Rational total_average_cost(const Instance& inst, const Policy& pol, const DensityLimits& limits = {});

/// Delta_c(t, S) = K/t + lambda h t/2 + K0 * jr(t, S).
Rational marginal_cost(const Commodity& c, const Natural& t, std::span<const Natural> others, const Rational& K0,
                       const DensityLimits& limits = {});

}  // namespace pjrp::cost
