#include "pjrp/reduction.hpp"

#include <algorithm>
#include <set>

#include "pjrp/errors.hpp"

namespace pjrp::reduction {

namespace {

Rational miss(Prime p) { return Rational(BigInt(static_cast<unsigned long>(p - 1)), BigInt(static_cast<unsigned long>(p))); }

Natural nat(Prime p) { return Natural(static_cast<unsigned long>(p)); }

std::string idx(std::uint32_t v) { return std::to_string(v); }

Rational standalone(const cost::Commodity& c, const Natural& t) {
  return eoq::average_periodic_cost(c.eoq(), Rational(t));
}

std::vector<PrimePower> prime_factors(std::initializer_list<Prime> ps) {
  std::vector<Natural> sorted;
  for (Prime p : ps) sorted.push_back(nat(p));
  std::sort(sorted.begin(), sorted.end());
  std::vector<PrimePower> out;
  for (auto& p : sorted) out.push_back({p, 1});
  return out;
}

}  // namespace

AlphaSet compute_alphas(const VpSet& vp) {
  AlphaSet a{1, 1, 1, 1, 1};
  for (Prime p : vp.pp) a.alpha_c *= miss(p);
  for (const auto& pr : vp.pairs) {
    a.alpha_v_upper *= miss(pr.upper);
    a.alpha_v_lower *= miss(pr.lower);
  }
  a.alpha_v = a.alpha_v_upper * a.alpha_v_lower;
  auto pp = vp.pp;
  std::sort(pp.begin(), pp.end());
  std::size_t take = vp.pairs.empty() ? 0 : std::min(pp.size(), vp.pairs.size() - 1);
  for (std::size_t j = 0; j < take; ++j) a.a_n *= miss(pp[j]);
  return a;
}

Prime literal_prime(const Literal& lit, const VpSet& vp) {
  if (lit.var < 1 || lit.var > vp.pairs.size())
    throw ValidationError("variable " + idx(lit.var) + " has no prime pair (" + std::to_string(vp.pairs.size()) +
                          " pairs)");
  const auto& pr = vp.pairs[lit.var - 1];
  return lit.positive ? pr.upper : pr.lower;
}

std::string constant_id(std::uint32_t l, std::uint32_t m) { return "const_" + idx(l) + "_" + idx(m); }
std::string variable_id(std::uint32_t i) { return "var_" + idx(i); }
std::string clause_id(std::uint32_t r) { return "clause_" + idx(r); }

const VariableRole& Gamma::variable(std::uint32_t i) const {
  if (i < 1 || i > variables.size()) throw ValidationError("variable index " + idx(i) + " out of range");
  return variables[i - 1];
}

std::vector<Natural> Gamma::known_primes() const {
  std::vector<Natural> out;
  for (Prime p : vp.pp) out.push_back(nat(p));
  for (Prime p : vp.vp()) out.push_back(nat(p));
  return out;
}

Rational variable_h(const PrimePair& pair, const AlphaSet& alphas) {
  Rational p(nat(pair.lower));
  Rational b(nat(pair.gap()));
  Rational half = b / Rational(2);
  return alphas.alpha_c * (p * p - b * b) / (p * (p + half) * half);
}

Rational variable_K(const PrimePair& pair, const AlphaSet& alphas) {
  Rational p(nat(pair.lower));
  Rational b(nat(pair.gap()));
  return variable_h(pair, alphas) * p * (p + b) - (p + b) / (p + b - 1) * alphas.alpha_c * alphas.alpha_v_upper;
}

Gamma build_gamma(const CnfFormula& cnf, const VpSet& vp) {
  check_formula(cnf);
  if (vp.pairs.size() < cnf.num_vars)
    throw ValidationError("prime pair set has " + std::to_string(vp.pairs.size()) + " pairs, formula needs " +
                          idx(cnf.num_vars));
  if (vp.pp.empty()) throw ValidationError("PP is empty");

  VpSet used = vp;
  used.pairs.resize(cnf.num_vars);
  AlphaSet alphas = compute_alphas(used);

  std::vector<ConstantRole> constants;
  std::vector<VariableRole> variables;
  std::vector<ClauseRole> clauses;
  std::vector<cost::Commodity> commodities;
  const Rational half(BigInt(1), BigInt(2));

  auto vps = used.vp();
  for (std::uint32_t l = 1; l <= used.pp.size(); ++l) {
    for (std::uint32_t m = 1; m <= vps.size(); ++m) {
      ConstantRole role{constant_id(l, m), l, m, used.pp[l - 1], vps[m - 1], nat(used.pp[l - 1]) * nat(vps[m - 1])};
      cost::RoleMeta meta;
      meta.l = l;
      meta.m = m;
      commodities.push_back({role.id, Rational(role.t_star * role.t_star) - half, 1, 2, cost::Kind::constant, meta});
      constants.push_back(std::move(role));
    }
  }
  for (std::uint32_t i = 1; i <= cnf.num_vars; ++i) {
    const auto& pair = used.pairs[i - 1];
    Rational K = variable_K(pair, alphas);
    if (K.sign() <= 0)
      throw ValidationError("ordering cost of " + variable_id(i) + " is " + K.str() +
                            "; prime pairs too small for the construction");
    cost::RoleMeta meta;
    meta.i = i;
    commodities.push_back({variable_id(i), K, variable_h(pair, alphas), 2, cost::Kind::variable, meta});
    variables.push_back({variable_id(i), i, pair});
  }
  for (std::uint32_t r = 1; r <= cnf.clauses.size(); ++r) {
    ClauseRole role;
    role.id = clause_id(r);
    role.r = r;
    role.clause = cnf.clauses[r - 1];
    role.t_star = 1;
    for (std::size_t k = 0; k < 3; ++k) {
      role.primes[k] = literal_prime(role.clause.literals[k], used);
      role.t_star *= nat(role.primes[k]);
    }
    cost::RoleMeta meta;
    meta.r = r;
    commodities.push_back({role.id, Rational(role.t_star * role.t_star) - half, 1, 2, cost::Kind::clause, meta});
    clauses.push_back(std::move(role));
  }

  return Gamma{cnf,
               std::move(used),
               alphas,
               cost::Instance(std::move(commodities), 1),
               std::move(constants),
               std::move(variables),
               std::move(clauses)};
}

TruthAssignment extract_assignment(const Gamma& gamma, const cost::Policy& pol) {
  TruthAssignment a;
  for (const auto& v : gamma.variables) {
    const Natural& t = pol.cycle(v.id);
    if (t == nat(v.pair.lower)) {
      a.values.push_back(false);
    } else if (t == nat(v.pair.upper)) {
      a.values.push_back(true);
    } else {
      throw ValidationError(v.id + " has cycle " + pjrp::to_string(t) + ", outside {" + std::to_string(v.pair.lower) + ", " +
                            std::to_string(v.pair.upper) + "}");
    }
  }
  return a;
}

cost::Policy encode_assignment(const Gamma& gamma, const TruthAssignment& a) {
  if (a.size() != gamma.variables.size())
    throw ValidationError("assignment covers " + std::to_string(a.size()) + " variables, expected " +
                          std::to_string(gamma.variables.size()));
  cost::Policy pol;
  for (const auto& c : gamma.constants) pol.set(c.id, c.t_star);
  for (const auto& v : gamma.variables) pol.set(v.id, nat(a[v.i] ? v.pair.upper : v.pair.lower));
  for (const auto& c : gamma.clauses) pol.set(c.id, c.t_star);
  return pol;
}

TruthAssignment assignment_from_bits(std::uint32_t n, std::uint64_t bits) {
  TruthAssignment a;
  for (std::uint32_t k = 0; k < n; ++k) a.values.push_back(((bits >> k) & 1U) != 0);
  return a;
}

std::string_view to_string(DensityMethod m) {
  switch (m) {
    case DensityMethod::automatic:
      return "automatic";
    case DensityMethod::closed_form:
      return "closed_form";
    case DensityMethod::inclusion_exclusion:
      return "inclusion_exclusion";
    case DensityMethod::factored:
      return "factored";
  }
  return "?";
}

bool is_pinned(const Gamma& gamma, const cost::Policy& pol) {
  for (const auto& c : gamma.constants) {
    if (pol.cycle(c.id) != c.t_star) return false;
  }
  for (const auto& c : gamma.clauses) {
    if (pol.cycle(c.id) != c.t_star) return false;
  }
  for (const auto& v : gamma.variables) {
    const Natural& t = pol.cycle(v.id);
    if (t != nat(v.pair.lower) && t != nat(v.pair.upper)) return false;
  }
  return true;
}

namespace {

struct Densities {
  Rational d1, d2, d3;
};

Densities closed_form_densities(const Gamma& gamma, const cost::Policy& pol, const cost::DensityLimits& limits) {
  const auto& al = gamma.alphas;
  Rational none_chosen(1);
  std::set<Prime> chosen;
  for (const auto& v : gamma.variables) {
    Prime p = pol.cycle(v.id) == nat(v.pair.lower) ? v.pair.lower : v.pair.upper;
    chosen.insert(p);
    none_chosen *= miss(p);
  }
  std::vector<std::vector<PrimePower>> free_clauses;
  for (const auto& c : gamma.clauses) {
    bool hit = std::any_of(c.primes.begin(), c.primes.end(), [&](Prime p) { return chosen.count(p) > 0; });
    if (!hit) free_clauses.push_back(prime_factors({c.primes[0], c.primes[1], c.primes[2]}));
  }
  Densities d;
  d.d1 = (Rational(1) - al.alpha_c) * (Rational(1) - al.alpha_v);
  d.d2 = d.d1 + al.alpha_c * (Rational(1) - none_chosen);
  d.d3 = d.d2 + al.alpha_c * none_chosen * cost::factored_union_density(free_clauses, limits);
  return d;
}

std::vector<std::vector<Natural>> family_cycles(const Gamma& gamma, const cost::Policy& pol) {
  std::vector<std::vector<Natural>> out(3);
  for (const auto& c : gamma.constants) out[0].push_back(pol.cycle(c.id));
  for (const auto& v : gamma.variables) out[1].push_back(pol.cycle(v.id));
  for (const auto& c : gamma.clauses) out[2].push_back(pol.cycle(c.id));
  return out;
}

Densities inclusion_exclusion_densities(const std::vector<std::vector<Natural>>& fam, const cost::DensityLimits& limits) {
  std::vector<Natural> all;
  for (const auto& f : fam) all.insert(all.end(), f.begin(), f.end());
  auto reduced = cost::reduce_cycles(all);
  if (reduced.size() > limits.subset_cap)
    throw CapExceeded(std::to_string(reduced.size()) + " distinct cycles exceed subset cap " +
                      std::to_string(limits.subset_cap));
  cost::UnionDensity acc(limits.term_cap);
  Rational d[3];
  for (std::size_t k = 0; k < 3; ++k) {
    for (const auto& t : fam[k]) acc.add(t);
    d[k] = acc.density();
  }
  return {d[0], d[1], d[2]};
}

Densities factored_densities(const Gamma& gamma, const std::vector<std::vector<Natural>>& fam,
                             const cost::DensityLimits& limits) {
  auto known = gamma.known_primes();
  std::vector<std::vector<PrimePower>> acc;
  Rational d[3];
  for (std::size_t k = 0; k < 3; ++k) {
    for (const auto& t : fam[k]) acc.push_back(factorize(t, known));
    d[k] = cost::factored_union_density(acc, limits);
  }
  return {d[0], d[1], d[2]};
}

}  // namespace

TcDecomposition tc_decompose(const Gamma& gamma, const cost::Policy& pol, const cost::DensityLimits& limits,
                             DensityMethod method) {
  cost::check_covers(gamma.instance, pol);
  TcDecomposition out;
  for (const auto& c : gamma.instance.commodities()) {
    Rational g = standalone(c, pol.cycle(c.id));
    switch (c.kind) {
      case cost::Kind::constant:
        out.standalone_constants += g;
        break;
      case cost::Kind::variable:
        out.standalone_variables += g;
        break;
      default:
        out.standalone_clauses += g;
        break;
    }
  }

  bool pinned = is_pinned(gamma, pol);
  if (method == DensityMethod::closed_form && !pinned)
    throw ValidationError("closed-form densities need constants and clauses at t* and variables on pair primes");
  Densities d;
  if (method == DensityMethod::closed_form || (method == DensityMethod::automatic && pinned)) {
    d = closed_form_densities(gamma, pol, limits);
    out.method = DensityMethod::closed_form;
  } else {
    auto fam = family_cycles(gamma, pol);
    if (method == DensityMethod::factored) {
      d = factored_densities(gamma, fam, limits);
      out.method = DensityMethod::factored;
    } else {
      try {
        d = inclusion_exclusion_densities(fam, limits);
        out.method = DensityMethod::inclusion_exclusion;
      } catch (const CapExceeded&) {
        if (method == DensityMethod::inclusion_exclusion) throw;
        d = factored_densities(gamma, fam, limits);
        out.method = DensityMethod::factored;
      }
    }
  }
  out.density_constants = d.d1;
  out.density_variables = d.d2 - d.d1;
  out.density_clauses = d.d3 - d.d2;
  const Rational& K0 = gamma.instance.K0();
  out.tc_constants = out.standalone_constants + K0 * out.density_constants;
  out.tc_variables = out.standalone_variables + K0 * out.density_variables;
  out.tc_clauses = out.standalone_clauses + K0 * out.density_clauses;
  return out;
}

std::vector<std::string> unsatisfied_clauses(const Gamma& gamma, const TruthAssignment& a) {
  std::vector<std::string> out;
  for (const auto& c : gamma.clauses) {
    if (!satisfies(c.clause, a)) out.push_back(c.id);
  }
  return out;
}

}  // namespace pjrp::reduction
