#include "pjrp/primes.hpp"

#include <algorithm>

#include "pjrp/errors.hpp"

namespace pjrp::primes {

std::vector<Prime> sieve(Prime limit, Prime cap) {
  if (limit > cap) throw CapExceeded("sieve limit " + std::to_string(limit) + " exceeds cap " + std::to_string(cap));
  std::vector<Prime> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (Prime p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    if (p > limit / p) continue;
    for (Prime q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return out;
}

bool is_prime(Prime n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Prime d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<PrimePair> consecutive_pairs(std::span<const Prime> primes, Prime b) {
  std::vector<PrimePair> out;
  for (std::size_t k = 1; k < primes.size(); ++k) {
    Prime gap = primes[k] - primes[k - 1];
    // (2, 3) is the only odd gap; it is kept only for odd b.
    if (gap <= b && gap % 2 == b % 2) out.push_back({primes[k - 1], primes[k]});
  }
  return out;
}

bool violates_condition3(const PrimePair& candidate, std::span<const Prime> vp) {
  for (Prime p : vp) {
    if (p == 0) continue;
    Prime next = (candidate.lower / p + 1) * p;
    if (next < candidate.upper) return true;
  }
  return false;
}

Rational default_stretch(std::uint64_t b_tilde, std::uint64_t n) {
  std::uint64_t log2_ceil = 0;
  while ((std::uint64_t{1} << log2_ceil) < n) ++log2_ceil;
  BigInt base = BigInt(6) * BigInt(static_cast<unsigned long>(b_tilde)) * BigInt(static_cast<unsigned long>(log2_ceil));
  BigInt value = pow(base, b_tilde);
  if (value < 1) value = 1;
  return Rational(value);
}

ReductionParams make_params(std::uint64_t n, std::uint64_t b, std::uint64_t b_tilde, std::optional<Rational> B,
                            std::optional<Prime> pp_cap) {
  if (n < 1) throw ValidationError("variable count n must be >= 1");
  if (b < 2) throw ValidationError("gap bound b must be >= 2");
  if (b_tilde < 2) throw ValidationError("density exponent b_tilde must be >= 2");
  ReductionParams params;
  params.n = n;
  params.b = b;
  params.b_tilde = b_tilde;
  params.B = B ? *B : default_stretch(b_tilde, n);
  if (params.B.sign() <= 0) throw ValidationError("interval stretch B must be > 0");
  params.pp_cap = pp_cap;
  return params;
}

std::vector<Prime> VpSet::vp() const {
  std::vector<Prime> out;
  out.reserve(2 * pairs.size());
  for (const auto& pr : pairs) {
    out.push_back(pr.lower);
    out.push_back(pr.upper);
  }
  return out;
}

std::vector<Prime> pp_below(Prime first_lower, std::optional<Prime> pp_cap) {
  Prime bound = first_lower;
  if (pp_cap) bound = std::min(bound, *pp_cap);
  if (bound <= 2) return {};
  return sieve(bound - 1);
}

VpSet select_vp(const ReductionParams& params, Prime p_start, Prime limit, Prime sieve_cap) {
  if (p_start < 2) throw ValidationError("p_start must be >= 2");
  if (limit <= p_start) throw ValidationError("limit must exceed p_start");
  auto all = sieve(limit, sieve_cap);
  auto first = std::lower_bound(all.begin(), all.end(), p_start);
  std::span<const Prime> tail(first, all.end());

  VpSet out;
  out.params = params;
  std::vector<Prime> chosen;
  for (const auto& cand : consecutive_pairs(tail, params.b)) {
    if (out.pairs.size() == params.n) break;
    if (!out.pairs.empty() && cand.lower <= out.pairs.back().upper) continue;
    if (violates_condition3(cand, chosen)) continue;
    const Prime own[] = {cand.lower, cand.upper};
    if (violates_condition3(cand, own)) continue;
    out.pairs.push_back(cand);
    chosen.push_back(cand.lower);
    chosen.push_back(cand.upper);
  }
  if (out.pairs.size() < params.n)
    throw ValidationError("only " + std::to_string(out.pairs.size()) + " qualifying pairs in [" +
                          std::to_string(p_start) + ", " + std::to_string(limit) + "], need " +
                          std::to_string(params.n));
  out.pp = pp_below(out.pairs.front().lower, params.pp_cap);
  return out;
}

namespace {

ConditionRow count_row(std::string name, std::size_t failures, std::string note) {
  return ConditionRow{std::move(name), failures == 0, Rational(-static_cast<long>(failures)), std::move(note)};
}

}  // namespace

std::vector<ConditionRow> validate_conditions(const VpSet& vp, const ReductionParams& params) {
  std::vector<ConditionRow> rows;
  const auto& pairs = vp.pairs;

  rows.push_back({"pair_count", pairs.size() >= params.n,
                  Rational(static_cast<long>(pairs.size())) - Rational(static_cast<long>(params.n)),
                  "pairs available minus n"});
  if (pairs.empty()) {
    rows.push_back({"cond1_gap", false, Rational(0), "no pairs"});
    return rows;
  }

  Prime max_gap = 0;
  for (const auto& pr : pairs) max_gap = std::max(max_gap, pr.upper > pr.lower ? pr.gap() : Prime{0});
  rows.push_back({"cond1_gap", max_gap <= params.b,
                  Rational(static_cast<long>(params.b)) - Rational(BigInt(static_cast<unsigned long>(max_gap))),
                  "b minus largest pair gap"});

  const Rational lower1(BigInt(static_cast<unsigned long>(pairs.front().lower)));
  const Rational upper_n(BigInt(static_cast<unsigned long>(pairs.back().upper)));
  Rational stretch = params.B * lower1 - upper_n;
  rows.push_back({"cond2_stretch", stretch.sign() > 0, stretch,
                  "B*lower_1 - upper_n with B = " + params.B.str()});

  BigInt threshold = pow(BigInt(static_cast<unsigned long>(params.n)), 6 * params.b_tilde);
  Rational magnitude = lower1 - Rational(threshold);
  rows.push_back({"cond2.5_magnitude", magnitude.sign() > 0, magnitude, "lower_1 - n^(6*b_tilde)"});

  auto primes = vp.vp();
  std::size_t overlaps = 0;
  for (const auto& pr : pairs) {
    for (Prime p : primes) {
      if (violates_condition3(pr, std::span<const Prime>(&p, 1))) ++overlaps;
    }
  }
  rows.push_back(count_row("cond3_no_multiple_in_gap", overlaps, "negated count of (prime, pair) overlaps"));

  std::size_t broken = 0;
  for (const auto& pr : pairs) {
    bool ok = pr.lower < pr.upper && is_prime(pr.lower) && is_prime(pr.upper);
    for (Prime x = pr.lower + 1; ok && x < pr.upper; ++x) ok = !is_prime(x);
    if (!ok) ++broken;
  }
  rows.push_back(count_row("consecutive_primes", broken, "negated count of pairs that are not consecutive primes"));

  std::size_t disorder = 0;
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k].lower <= pairs[k - 1].upper) ++disorder;
  }
  rows.push_back(count_row("pairs_increasing", disorder, "negated count of out-of-order neighbours"));

  std::size_t pp_bad = 0;
  auto expected = pp_below(pairs.front().lower, params.pp_cap);
  if (vp.pp != expected) {
    for (Prime p : vp.pp) {
      if (!is_prime(p) || p >= pairs.front().lower) ++pp_bad;
    }
    if (pp_bad == 0) pp_bad = 1;
  }
  rows.push_back(count_row("pp_primes_below_lower_1", pp_bad, "PP must be every prime below min(lower_1, pp_cap)"));
  return rows;
}

}  // namespace pjrp::primes
