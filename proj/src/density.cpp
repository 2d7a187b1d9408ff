#include "pjrp/density.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "pjrp/errors.hpp"

namespace pjrp::cost {

namespace {

bool divides(const Natural& d, const Natural& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

void check_subset_cap(std::size_t count, const DensityLimits& limits) {
  if (count > limits.subset_cap)
    throw CapExceeded("density over " + std::to_string(count) + " distinct cycles exceeds subset cap " +
                      std::to_string(limits.subset_cap));
}

}  // namespace

void UnionDensity::add(const Natural& cycle) {
  if (cycle < 1) throw ValidationError("cycle time must be >= 1, got " + cycle.get_str());
  for (const auto& g : generators_) {
    if (divides(g, cycle)) return;
  }

  std::map<Natural, long> fresh;
  Natural l;
  for (const auto& [term, coeff] : terms_) {
    mpz_lcm(l.get_mpz_t(), term.get_mpz_t(), cycle.get_mpz_t());
    fresh[l] -= coeff;
  }
  fresh[cycle] += 1;

  for (auto& [term, coeff] : fresh) {
    if (coeff == 0) continue;
    auto [it, inserted] = terms_.try_emplace(term, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }
  if (terms_.size() > term_cap_)
    throw CapExceeded("inclusion-exclusion needs more than " + std::to_string(term_cap_) + " terms");

  std::erase_if(generators_, [&](const Natural& g) { return divides(cycle, g); });
  generators_.push_back(cycle);
  mpz_lcm(hyperperiod_.get_mpz_t(), hyperperiod_.get_mpz_t(), cycle.get_mpz_t());
}

Rational UnionDensity::density() const {
  BigInt numerator = 0;
  BigInt share;
  for (const auto& [term, coeff] : terms_) {
    mpz_divexact(share.get_mpz_t(), hyperperiod_.get_mpz_t(), term.get_mpz_t());
    if (coeff > 0)
      mpz_addmul_ui(numerator.get_mpz_t(), share.get_mpz_t(), static_cast<unsigned long>(coeff));
    else
      mpz_submul_ui(numerator.get_mpz_t(), share.get_mpz_t(), static_cast<unsigned long>(-coeff));
  }
  return Rational(numerator, hyperperiod_);
}

Rational UnionDensity::uncovered_multiples(const Natural& cycle) const {
  if (cycle < 1) throw ValidationError("cycle time must be >= 1, got " + cycle.get_str());
  Natural hyper;
  mpz_lcm(hyper.get_mpz_t(), hyperperiod_.get_mpz_t(), cycle.get_mpz_t());
  BigInt numerator;
  mpz_divexact(numerator.get_mpz_t(), hyper.get_mpz_t(), cycle.get_mpz_t());
  Natural l;
  BigInt share;
  for (const auto& [term, coeff] : terms_) {
    mpz_lcm(l.get_mpz_t(), term.get_mpz_t(), cycle.get_mpz_t());
    mpz_divexact(share.get_mpz_t(), hyper.get_mpz_t(), l.get_mpz_t());
    if (coeff > 0)
      mpz_submul_ui(numerator.get_mpz_t(), share.get_mpz_t(), static_cast<unsigned long>(coeff));
    else
      mpz_addmul_ui(numerator.get_mpz_t(), share.get_mpz_t(), static_cast<unsigned long>(-coeff));
  }
  return Rational(numerator, hyper);
}

std::vector<Natural> reduce_cycles(std::span<const Natural> cycles) {
  std::vector<Natural> sorted(cycles.begin(), cycles.end());
  for (const auto& c : sorted) {
    if (c < 1) throw ValidationError("cycle time must be >= 1, got " + c.get_str());
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<Natural> kept;
  for (const auto& c : sorted) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](const Natural& k) { return divides(k, c); });
    if (!covered) kept.push_back(c);
  }
  return kept;
}

Rational joint_order_density(std::span<const Natural> cycles, const DensityLimits& limits) {
  auto reduced = reduce_cycles(cycles);
  check_subset_cap(reduced.size(), limits);
  UnionDensity acc(limits.term_cap);
  for (const auto& c : reduced) acc.add(c);
  return acc.density();
}

Rational sole_order_density(const Natural& t, std::span<const Natural> others, const DensityLimits& limits) {
  if (t < 1) throw ValidationError("cycle time must be >= 1, got " + t.get_str());
  auto reduced = reduce_cycles(others);
  check_subset_cap(reduced.size(), limits);
  UnionDensity acc(limits.term_cap);
  for (const auto& c : reduced) acc.add(c);
  return acc.uncovered_multiples(t);
}

namespace {

using Atom = std::pair<std::size_t, unsigned long>;  // (prime index, exponent)
using Term = std::vector<Atom>;

class SupportEvaluator {
 public:
  SupportEvaluator(std::vector<Natural> primes, std::size_t node_budget)
      : primes_(std::move(primes)), budget_(node_budget) {}

  // 1 / p^e
  Rational tail(std::size_t k, unsigned long e) const {
    if (e == 0) return Rational(1);
    return Rational(BigInt(1), pow(primes_[k], e));
  }

  Rational term_probability(const Term& t) const {
    Rational r(1);
    for (const auto& [k, e] : t) r *= tail(k, e);
    return r;
  }

  Rational probability(std::vector<Term> terms) {
    if (++nodes_ > budget_)
      throw CapExceeded("factored density needs more than " + std::to_string(budget_) + " recursion nodes");
    if (terms.empty()) return Rational(0);
    absorb(terms);
    if (terms.front().empty()) return Rational(1);
    if (terms.size() == 1) return term_probability(terms.front());

    auto parts = components(terms);
    if (parts.size() > 1) {
      Rational miss(1);
      for (auto& part : parts) miss *= Rational(1) - probability(std::move(part));
      return Rational(1) - miss;
    }
    return branch(parts.front());
  }

 private:
  static bool implies(const Term& a, const Term& b) {
    // a absorbs b when b asks at least as much of every prime that a mentions.
    auto it = b.begin();
    for (const auto& [k, e] : a) {
      while (it != b.end() && it->first < k) ++it;
      if (it == b.end() || it->first != k || it->second < e) return false;
    }
    return true;
  }

  static void absorb(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
      if (x.size() != y.size()) return x.size() < y.size();
      return x < y;
    });
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    std::vector<Term> kept;
    for (auto& t : terms) {
      bool covered = std::any_of(kept.begin(), kept.end(), [&](const Term& k) { return implies(k, t); });
      if (!covered) kept.push_back(std::move(t));
    }
    terms = std::move(kept);
  }

  std::vector<std::vector<Term>> components(std::vector<Term>& terms) const {
    std::vector<std::size_t> parent(primes_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& t : terms) {
      for (std::size_t j = 1; j < t.size(); ++j) parent[find(t[j].first)] = find(t[0].first);
    }
    std::map<std::size_t, std::vector<Term>> groups;
    for (auto& t : terms) groups[find(t.front().first)].push_back(std::move(t));
    std::vector<std::vector<Term>> out;
    out.reserve(groups.size());
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
  }

  Rational branch(const std::vector<Term>& terms) {
    std::map<std::size_t, std::size_t> freq;
    for (const auto& t : terms) {
      for (const auto& [k, e] : t) ++freq[k];
    }
    std::size_t pivot = freq.begin()->first;
    for (const auto& [k, c] : freq) {
      if (c > freq[pivot]) pivot = k;
    }
    std::vector<unsigned long> levels;
    for (const auto& t : terms) {
      for (const auto& [k, e] : t) {
        if (k == pivot) levels.push_back(e);
      }
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Band j holds periods whose pivot exponent lies in [levels[j-1], levels[j]),
    // with levels[-1] = 0 and levels[size] = infinity.
    Rational total;
    for (std::size_t j = 0; j <= levels.size(); ++j) {
      const unsigned long reached = j == 0 ? 0 : levels[j - 1];
      Rational weight = tail(pivot, reached);
      if (j < levels.size()) weight -= tail(pivot, levels[j]);
      std::vector<Term> next;
      for (const auto& t : terms) {
        auto at = std::find_if(t.begin(), t.end(), [&](const Atom& a) { return a.first == pivot; });
        if (at == t.end()) {
          next.push_back(t);
        } else if (at->second <= reached) {
          Term reduced;
          reduced.reserve(t.size() - 1);
          for (const auto& a : t) {
            if (a.first != pivot) reduced.push_back(a);
          }
          next.push_back(std::move(reduced));
        }
      }
      total += weight * probability(std::move(next));
    }
    return total;
  }

  std::vector<Natural> primes_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

struct Encoded {
  std::vector<Natural> primes;
  std::vector<Term> terms;
};

Encoded encode(std::span<const std::vector<PrimePower>> cycles, const std::vector<PrimePower>* extra) {
  std::map<Natural, std::size_t> index;
  auto note = [&](const std::vector<PrimePower>& f) {
    for (const auto& pp : f) {
      if (pp.prime < 2) throw ValidationError("factorization contains non-prime " + pp.prime.get_str());
      index.emplace(pp.prime, 0);
    }
  };
  for (const auto& f : cycles) note(f);
  if (extra) note(*extra);
  Encoded out;
  for (auto& [p, k] : index) {
    k = out.primes.size();
    out.primes.push_back(p);
  }
  for (const auto& f : cycles) {
    Term t;
    for (const auto& pp : f) {
      if (pp.exponent > 0) t.emplace_back(index.at(pp.prime), pp.exponent);
    }
    std::sort(t.begin(), t.end());
    out.terms.push_back(std::move(t));
  }
  return out;
}

}  // namespace

Rational factored_union_density(std::span<const std::vector<PrimePower>> cycles, const DensityLimits& limits) {
  auto enc = encode(cycles, nullptr);
  SupportEvaluator eval(std::move(enc.primes), limits.term_cap);
  return eval.probability(std::move(enc.terms));
}

Rational factored_sole_density(const std::vector<PrimePower>& t, std::span<const std::vector<PrimePower>> others,
                               const DensityLimits& limits) {
  auto enc = encode(others, &t);
  std::map<std::size_t, unsigned long> given;
  {
    std::map<Natural, std::size_t> index;
    for (std::size_t k = 0; k < enc.primes.size(); ++k) index.emplace(enc.primes[k], k);
    for (const auto& pp : t) {
      if (pp.exponent > 0) given[index.at(pp.prime)] += pp.exponent;
    }
  }
  // Condition on t dividing the period: exponents of t's primes are shifted down.
  std::vector<Term> conditioned;
  conditioned.reserve(enc.terms.size());
  for (const auto& term : enc.terms) {
    Term c;
    for (const auto& [k, e] : term) {
      auto it = given.find(k);
      unsigned long have = it == given.end() ? 0 : it->second;
      if (e > have) c.emplace_back(k, e - have);
    }
    conditioned.push_back(std::move(c));
  }
  SupportEvaluator eval(std::move(enc.primes), limits.term_cap);
  Term own(given.begin(), given.end());
  Rational base = eval.term_probability(own);
  return base * (Rational(1) - eval.probability(std::move(conditioned)));
}

Rational density_oracle(std::span<const Natural> cycles, const DensityLimits& limits) {
  if (cycles.empty()) return Rational(0);
  Natural hyper = 1;
  for (const auto& c : cycles) {
    if (c < 1) throw ValidationError("cycle time must be >= 1, got " + c.get_str());
    hyper = lcm(hyper, c);
    if (hyper > limits.lcm_cap)
      throw CapExceeded("hyperperiod exceeds lcm cap " + std::to_string(limits.lcm_cap));
  }
  const auto period = hyper.get_ui();
  std::vector<char> ordered(period + 1, 0);
  for (const auto& c : cycles) {
    const auto step = c.get_ui();
    for (unsigned long t = step; t <= period; t += step) ordered[t] = 1;
  }
  unsigned long count = 0;
  for (unsigned long t = 1; t <= period; ++t) count += ordered[t];
  return Rational(BigInt(count), hyper);
}

}  // namespace pjrp::cost
