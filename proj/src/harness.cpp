#include "pjrp/harness.hpp"

#include <algorithm>
#include <thread>

#include "pjrp/errors.hpp"

namespace pjrp::harness {

using reduction::VariableRole;

namespace {

constexpr std::uint32_t kMaxTruthTableVars = 24;

Natural nat(primes::Prime p) { return Natural(static_cast<unsigned long>(p)); }

void check_truth_table_size(std::uint32_t n) {
  if (n > kMaxTruthTableVars)
    throw CapExceeded(std::to_string(n) + " variables exceed the truth-table limit of " +
                      std::to_string(kMaxTruthTableVars));
}

}  // namespace

std::vector<TruthAssignment> brute_force_sat(const CnfFormula& cnf) {
  check_truth_table_size(cnf.num_vars);
  std::vector<TruthAssignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    auto a = reduction::assignment_from_bits(cnf.num_vars, bits);
    if (reduction::satisfies(cnf, a)) out.push_back(std::move(a));
  }
  return out;
}

void SearchWindow::set(const std::string& id, std::vector<Natural> candidates) {
  if (candidates.empty()) throw ValidationError("empty candidate list for '" + id + "'");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.front() < 1) throw ValidationError("candidate cycle < 1 for '" + id + "'");
  candidates_[id] = std::move(candidates);
}

void SearchWindow::set_range(const std::string& id, const Natural& lo, const Natural& hi) {
  if (lo > hi) throw ValidationError("empty range for '" + id + "'");
  std::vector<Natural> c;
  for (Natural t = lo; t <= hi; ++t) c.push_back(t);
  set(id, std::move(c));
}

const std::vector<Natural>& SearchWindow::at(std::string_view id) const {
  auto it = candidates_.find(id);
  if (it == candidates_.end()) throw ValidationError("no window for '" + std::string(id) + "'");
  return it->second;
}

Natural SearchWindow::combinations() const {
  Natural out = 1;
  for (const auto& [id, c] : candidates_) out *= static_cast<unsigned long>(c.size());
  return out;
}

SearchWindow pinned_window(const Gamma& gamma) {
  SearchWindow w;
  for (const auto& c : gamma.constants) w.set(c.id, {c.t_star});
  for (const auto& v : gamma.variables) w.set_range(v.id, nat(v.pair.lower), nat(v.pair.upper));
  for (const auto& c : gamma.clauses) w.set(c.id, {c.t_star});
  return w;
}

SearchWindow full_window(const Gamma& gamma) {
  SearchWindow w;
  for (const auto& c : gamma.constants) w.set_range(c.id, c.t_star - 1, c.t_star + 1);
  for (const auto& v : gamma.variables) w.set_range(v.id, nat(v.pair.lower) - 1, nat(v.pair.upper) + 1);
  for (const auto& c : gamma.clauses) w.set_range(c.id, c.t_star - 1, c.t_star + 1);
  return w;
}

namespace {

struct Best {
  std::optional<Rational> cost;
  std::vector<std::size_t> choice;
  std::uint64_t explored = 0;
};

// Candidates are ascending, so index vectors compare like cycle vectors.
bool better(const Best& a, const Best& b) {
  if (!a.cost) return false;
  if (!b.cost) return true;
  if (*a.cost != *b.cost) return *a.cost < *b.cost;
  return a.choice < b.choice;
}

class Searcher {
 public:
  Searcher(const std::vector<std::vector<Natural>>& cand, const std::vector<std::vector<Rational>>& g,
           const Rational& K0, const SolveOptions& opt)
      : cand_(cand), g_(g), K0_(K0), opt_(opt), suffix_min_(cand.size() + 1) {
    for (std::size_t d = cand.size(); d-- > 0;) {
      suffix_min_[d] = suffix_min_[d + 1] + *std::min_element(g[d].begin(), g[d].end());
    }
    dens_.assign(cand.size() + 1, cost::UnionDensity(opt.limits.term_cap));
    partial_.assign(cand.size() + 1, Rational(0));
    choice_.assign(cand.size(), 0);
  }

  Best run(const std::vector<std::size_t>& first_level) {
    for (std::size_t k : first_level) descend(0, k);
    return best_;
  }

 private:
  void descend(std::size_t d, std::size_t k) {
    choice_[d] = k;
    partial_[d + 1] = partial_[d] + g_[d][k];
    dens_[d + 1] = dens_[d];
    dens_[d + 1].add(cand_[d][k]);
    if (d + 1 == cand_.size()) {
      ++best_.explored;
      Rational total = partial_[d + 1] + K0_ * dens_[d + 1].density();
      if (!best_.cost || total < *best_.cost) {
        best_.cost = total;
        best_.choice = choice_;
      }
      return;
    }
    // Anything below this node is lexicographically after the incumbent, so a tie cannot win.
    if (opt_.prune && best_.cost &&
        partial_[d + 1] + suffix_min_[d + 1] + K0_ * dens_[d + 1].density() >= *best_.cost)
      return;
    for (std::size_t j = 0; j < cand_[d + 1].size(); ++j) descend(d + 1, j);
  }

  const std::vector<std::vector<Natural>>& cand_;
  const std::vector<std::vector<Rational>>& g_;
  Rational K0_;
  const SolveOptions& opt_;
  std::vector<Rational> suffix_min_;
  std::vector<cost::UnionDensity> dens_;
  std::vector<Rational> partial_;
  std::vector<std::size_t> choice_;
  Best best_;
};

}  // namespace

SolveResult solve_exact(const cost::Instance& inst, const SearchWindow& win, const SolveOptions& options) {
  if (win.candidates().size() != inst.size())
    throw ValidationError("window covers " + std::to_string(win.candidates().size()) + " commodities, instance has " +
                          std::to_string(inst.size()));
  std::vector<std::vector<Natural>> cand;
  std::vector<std::vector<Rational>> g;
  for (const auto& c : inst.commodities()) {
    cand.push_back(win.at(c.id));
    std::vector<Rational> costs;
    for (const auto& t : cand.back()) costs.push_back(eoq::average_periodic_cost(c.eoq(), Rational(t)));
    g.push_back(std::move(costs));
  }
  Natural combos = win.combinations();
  if (combos > Natural(static_cast<unsigned long>(options.search_cap)))
    throw CapExceeded("search window has " + pjrp::to_string(combos) + " policies, cap is " +
                      std::to_string(options.search_cap));

  unsigned workers = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(cand[0].size())));
  std::vector<std::vector<std::size_t>> shares(workers);
  for (std::size_t k = 0; k < cand[0].size(); ++k) shares[k % workers].push_back(k);

  std::vector<Best> partials(workers);
  if (workers == 1) {
    partials[0] = Searcher(cand, g, inst.K0(), options).run(shares[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          partials[w] = Searcher(cand, g, inst.K0(), options).run(shares[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Best best;
  Natural explored = 0;
  for (const auto& p : partials) {
    explored += static_cast<unsigned long>(p.explored);
    if (better(p, best)) best = p;
  }
  SolveResult out;
  for (std::size_t d = 0; d < cand.size(); ++d) out.policy.set(inst.commodities()[d].id, cand[d][best.choice[d]]);
  out.cost = *best.cost;
  out.explored = explored;
  return out;
}

VerificationReport verify_constants(const Gamma& gamma) {
  VerificationReport rep;
  auto check = [&](const std::string& id, const Natural& t_star) {
    const auto& c = gamma.instance.at(id);
    auto lifted = c.eoq();
    lifted.K += gamma.instance.K0();
    rep.add(id + ".optimum_K", Rational(eoq::integer_optimum(c.eoq())), Relation::eq, Rational(t_star));
    rep.add(id + ".optimum_K_plus_K0", Rational(eoq::integer_optimum(lifted)), Relation::eq, Rational(t_star));
  };
  for (const auto& c : gamma.constants) check(c.id, c.t_star);
  for (const auto& c : gamma.clauses) check(c.id, c.t_star);
  return rep;
}

namespace {

class ExactDelta {
 public:
  ExactDelta(const Gamma& gamma, const cost::DensityLimits& limits) : gamma_(gamma), limits_(limits) {
    known_ = gamma.known_primes();
    for (const auto& c : gamma.constants) fixed_.push_back(factorize(c.t_star, known_));
    for (const auto& c : gamma.clauses) fixed_.push_back(factorize(c.t_star, known_));
  }

  // Marginal cost of variable i at t with every other variable at its chosen pair prime.
  Rational operator()(std::uint32_t i, const Natural& t, const std::vector<bool>& upper) const {
    auto others = fixed_;
    for (const auto& v : gamma_.variables) {
      if (v.i == i) continue;
      others.push_back(factorize(nat(upper[v.i - 1] ? v.pair.upper : v.pair.lower), known_));
    }
    Rational jr = cost::factored_sole_density(factorize(t, known_), others, limits_);
    return reduction::variable_standalone(gamma_, i, t) + gamma_.instance.K0() * jr;
  }

 private:
  const Gamma& gamma_;
  cost::DensityLimits limits_;
  std::vector<Natural> known_;
  std::vector<std::vector<PrimePower>> fixed_;
};

std::string context_name(const std::vector<bool>& upper, std::uint32_t skip) {
  std::string s = "ctx=";
  for (std::uint32_t j = 1; j <= upper.size(); ++j) {
    if (j != skip) s += upper[j - 1] ? 'U' : 'L';
  }
  return s;
}

std::vector<std::vector<bool>> contexts(std::uint32_t n, std::uint32_t i, std::uint64_t cap) {
  std::vector<std::vector<bool>> out;
  std::uint32_t others = n - 1;
  if (others < 63 && (std::uint64_t{1} << others) <= cap) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << others); ++bits) {
      std::vector<bool> upper(n, false);
      std::uint32_t k = 0;
      for (std::uint32_t j = 1; j <= n; ++j) {
        if (j == i) continue;
        upper[j - 1] = ((bits >> k) & 1U) != 0;
        ++k;
      }
      out.push_back(std::move(upper));
    }
  } else {
    out.emplace_back(n, false);
    out.emplace_back(n, true);
  }
  return out;
}

}  // namespace

VerificationReport verify_variable_claims(const Gamma& gamma, const ClaimOptions& options) {
  using namespace reduction;
  VerificationReport rep;
  std::optional<ExactDelta> exact;
  if (options.exact_delta) exact.emplace(gamma, options.limits);
  const std::uint32_t n = static_cast<std::uint32_t>(gamma.variables.size());

  for (const auto& v : gamma.variables) {
    const std::string p = v.id + ".";
    const Natural lo = nat(v.pair.lower), up = nat(v.pair.upper);
    const auto b = v.pair.gap();
    rep.add(p + "upper_vs_upper_plus_one", delta_upper_bound(gamma, v.i, up), Relation::le,
            delta_lower_bound(gamma, v.i, up + 1), "UB at p_upper against LB at p_upper + 1");
    rep.add(p + "beyond_upper_vs_lower_minus_one", delta_lower_bound(gamma, v.i, lo + b + 1), Relation::le,
            delta_lower_bound(gamma, v.i, lo - 1), "LB at p_lower + b + 1 against LB at p_lower - 1");
    for (primes::Prime y = 1; y < b; ++y) {
      rep.add(p + "lower_vs_interior_y" + std::to_string(y), delta_upper_bound(gamma, v.i, lo), Relation::lt,
              delta_tight_lower_bound(gamma, v.i, lo + y), "UB at p_lower against the interior LB");
    }
    std::vector<Natural> all_upper, all_lower;
    for (const auto& o : gamma.variables) {
      if (o.i == v.i) continue;
      all_upper.push_back(nat(o.pair.upper));
      all_lower.push_back(nat(o.pair.lower));
    }
    rep.add(p + "lower_vs_upper_others_upper", variables_system_delta(gamma, v.i, lo, all_upper), Relation::le,
            variables_system_delta(gamma, v.i, up, all_upper), "variables-system marginal cost, others at upper primes");
    rep.add(p + "lower_vs_upper_others_lower", variables_system_delta(gamma, v.i, lo, all_lower), Relation::le,
            variables_system_delta(gamma, v.i, up, all_lower), "variables-system marginal cost, others at lower primes");

    if (!exact) continue;
    for (const auto& ctx : contexts(n, v.i, options.context_cap)) {
      const std::string suffix = "." + context_name(ctx, v.i);
      Rational at_lo = (*exact)(v.i, lo, ctx);
      Rational at_up = (*exact)(v.i, up, ctx);
      rep.add(p + "exact_at_lower" + suffix, at_lo, Relation::le, delta_upper_bound(gamma, v.i, lo),
              "exact marginal cost against the printed UB");
      rep.add(p + "exact_at_upper" + suffix, at_up, Relation::le, delta_upper_bound(gamma, v.i, up),
              "exact marginal cost against the printed UB");
      for (primes::Prime y = 1; y < b; ++y) {
        Rational mid = (*exact)(v.i, lo + y, ctx);
        rep.add(p + "exact_interior_y" + std::to_string(y) + suffix, mid, Relation::ge,
                delta_tight_lower_bound(gamma, v.i, lo + y), "exact marginal cost against the interior LB");
        rep.add(p + "exact_lower_vs_interior_y" + std::to_string(y) + suffix, at_lo, Relation::lt, mid,
                "exact marginal costs");
      }
    }
  }

  auto vb = variables_bounds(gamma);
  rep.add("variables_lb_vs_ub", vb.lb, Relation::le, vb.ub, "");
  return rep;
}

std::vector<CurveRow> bounds_curve(const Gamma& gamma, std::uint32_t var_index) {
  using namespace reduction;
  const VariableRole& v = gamma.variable(var_index);
  const Natural lo = nat(v.pair.lower), up = nat(v.pair.upper);
  std::vector<CurveRow> rows;
  for (Natural t = lo - 2; t <= up + 2; ++t) {
    CurveRow row;
    row.t = t;
    row.standalone = variable_standalone(gamma, v.i, t);
    row.lb = (t > lo && t < up) ? delta_tight_lower_bound(gamma, v.i, t) : delta_lower_bound(gamma, v.i, t);
    row.ub = (t == lo || t == up) ? delta_upper_bound(gamma, v.i, t)
                                  : row.standalone + gamma.instance.K0() / Rational(t);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<EncodingCost> encoding_costs(const Gamma& gamma, const cost::DensityLimits& limits) {
  const auto n = static_cast<std::uint32_t>(gamma.variables.size());
  check_truth_table_size(n);
  std::vector<EncodingCost> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    auto a = reduction::assignment_from_bits(n, bits);
    auto tc = reduction::tc_decompose(gamma, reduction::encode_assignment(gamma, a), limits);
    bool sat = reduction::satisfies(gamma.cnf, a);
    out.push_back({std::move(a), tc.total(), sat});
  }
  return out;
}

std::string_view to_string(Mode m) { return m == Mode::pinned ? "pinned" : "full"; }

Mode parse_mode(std::string_view name) {
  if (name == "pinned") return Mode::pinned;
  if (name == "full") return Mode::full;
  throw ValidationError("unknown mode '" + std::string(name) + "'");
}

ExperimentReport end_to_end(const CnfFormula& cnf, const primes::VpSet& vp, Mode mode, const SolveOptions& options) {
  Gamma gamma = reduction::build_gamma(cnf, vp);
  ExperimentReport rep;
  rep.mode = mode;
  rep.num_vars = cnf.num_vars;
  rep.num_clauses = cnf.clauses.size();
  rep.satisfying_assignments = brute_force_sat(cnf).size();

  auto window = mode == Mode::pinned ? pinned_window(gamma) : full_window(gamma);
  rep.optimum = solve_exact(gamma.instance, window, options);
  const auto& pol = rep.optimum.policy;

  rep.constants_and_clauses_at_t_star = true;
  for (const auto& c : gamma.constants) rep.constants_and_clauses_at_t_star &= pol.cycle(c.id) == c.t_star;
  for (const auto& c : gamma.clauses) rep.constants_and_clauses_at_t_star &= pol.cycle(c.id) == c.t_star;
  rep.variables_on_pair_primes = true;
  for (const auto& v : gamma.variables) {
    const Natural& t = pol.cycle(v.id);
    if (t != nat(v.pair.lower) && t != nat(v.pair.upper)) rep.variables_on_pair_primes = false;
    if (t > nat(v.pair.lower) && t < nat(v.pair.upper)) rep.interior_variables.push_back(v.id);
  }
  if (rep.variables_on_pair_primes) {
    rep.extracted = reduction::extract_assignment(gamma, pol);
    rep.extracted_satisfies = reduction::satisfies(cnf, *rep.extracted);
    rep.agreement = *rep.extracted_satisfies == (rep.satisfying_assignments > 0);
  }

  for (const auto& e : encoding_costs(gamma, options.limits)) {
    auto& slot = e.satisfying ? rep.best_satisfying_cost : rep.best_unsatisfying_cost;
    if (!slot || e.cost < *slot) slot = e.cost;
  }
  if (rep.best_satisfying_cost && rep.best_unsatisfying_cost)
    rep.enumeration_gap = *rep.best_unsatisfying_cost - *rep.best_satisfying_cost;
  rep.bound_gap = reduction::satisfiability_gap(gamma);
  return rep;
}

}  // namespace pjrp::harness
