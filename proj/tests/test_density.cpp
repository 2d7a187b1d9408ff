#include "doctest.h"

#include <algorithm>
#include <random>

#include "pjrp/density.hpp"
#include "pjrp/errors.hpp"

using namespace pjrp;
using namespace pjrp::cost;

namespace {

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

std::vector<Natural> nat(std::initializer_list<long> xs) {
  std::vector<Natural> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Counts multiples of t over one hyperperiod that no other cycle divides.
Rational sole_by_counting(long t, const std::vector<long>& others) {
  long h = t;
  for (long o : others) h = std::lcm(h, o);
  long count = 0;
  for (long x = t; x <= h; x += t) {
    bool hit = std::any_of(others.begin(), others.end(), [&](long o) { return x % o == 0; });
    if (!hit) ++count;
  }
  return q(count, h);
}

std::vector<std::vector<PrimePower>> factor_all(const std::vector<Natural>& xs) {
  std::vector<std::vector<PrimePower>> out;
  for (const auto& x : xs) out.push_back(factorize(x));
  return out;
}

}  // namespace

TEST_CASE("joint order density examples") {
  CHECK(joint_order_density(nat({2, 3})) == q(2, 3));
  CHECK(joint_order_density(nat({5})) == q(1, 5));
  CHECK(joint_order_density(nat({4, 6})) == q(1, 3));
  // 6,10,12,15,18,20,24,30 order in 1..30
  CHECK(joint_order_density(nat({6, 10, 15})) == q(8, 30));
  CHECK(joint_order_density({}) == 0);
  CHECK(joint_order_density(nat({1, 7})) == 1);
}

TEST_CASE("sole order density examples") {
  CHECK(sole_order_density(15, nat({9})) == q(2, 45));
  CHECK(sole_order_density(5, {}) == q(1, 5));
  CHECK(sole_order_density(5, nat({10})) == q(1, 10));
  CHECK(sole_order_density(2, nat({2})) == 0);
  CHECK(sole_order_density(6, nat({4})) == q(1, 12));
}

TEST_CASE("density oracle examples") {
  CHECK(density_oracle(nat({2, 3})) == q(2, 3));
  CHECK(density_oracle(nat({7})) == q(1, 7));
  CHECK(density_oracle(nat({6, 10, 15})) == q(8, 30));
  DensityLimits tight;
  tight.lcm_cap = 100;
  CHECK_THROWS_AS(density_oracle(nat({101}), tight), CapExceeded);
}

TEST_CASE("subset cap counts distinct reduced values") {
  DensityLimits limits;
  limits.subset_cap = 2;
  CHECK(joint_order_density(nat({2, 2, 4, 8, 3, 9}), limits) == q(2, 3));
  CHECK_THROWS_AS(joint_order_density(nat({2, 3, 5}), limits), CapExceeded);
  CHECK_THROWS_AS(sole_order_density(7, nat({2, 3, 5}), limits), CapExceeded);
}

TEST_CASE("invalid cycles are rejected") {
  CHECK_THROWS_AS(joint_order_density(nat({0, 3})), ValidationError);
  CHECK_THROWS_AS(sole_order_density(0, {}), ValidationError);
  CHECK_THROWS_AS(density_oracle(nat({-2})), ValidationError);
}

TEST_CASE("term cap") {
  UnionDensity acc(4);
  acc.add(2);
  acc.add(3);
  CHECK_THROWS_AS(acc.add(5), CapExceeded);
}

TEST_CASE("redundant cycles leave the expansion unchanged") {
  UnionDensity acc;
  for (long c : {6, 10, 15}) acc.add(c);
  auto terms = acc.term_count();
  auto d = acc.density();
  acc.add(30);
  acc.add(12);
  CHECK(acc.term_count() == terms);
  CHECK(acc.density() == d);
  acc.add(3);
  CHECK(acc.density() == density_oracle(nat({3, 6, 10, 15})));
}

TEST_CASE("randomized oracle equivalence and bounds") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> size(1, 6);
  std::uniform_int_distribution<long> value(1, 40);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Natural> cycles;
    long k = size(rng);
    for (long j = 0; j < k; ++j) cycles.emplace_back(value(rng));
    Rational joint = joint_order_density(cycles);
    Natural hyper = 1;
    for (const auto& c : cycles) hyper = lcm(hyper, c);
    if (hyper <= DensityLimits{}.lcm_cap) CHECK(joint == density_oracle(cycles));
    CHECK(joint == factored_union_density(factor_all(cycles)));

    Rational upper, lower;
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      std::vector<Natural> others;
      std::vector<long> others_l;
      for (std::size_t o = 0; o < cycles.size(); ++o) {
        if (o != j) {
          others.push_back(cycles[o]);
          others_l.push_back(cycles[o].get_si());
        }
      }
      Rational sole = sole_order_density(cycles[j], others);
      CHECK(sole == sole_by_counting(cycles[j].get_si(), others_l));
      CHECK(sole == factored_sole_density(factorize(cycles[j]), factor_all(others)));
      lower += sole;
      upper += q(1, cycles[j].get_si());
    }
    CHECK(lower <= joint);
    CHECK(joint <= upper);
    CHECK(joint >= 0);
    CHECK(joint <= 1);

    auto shuffled = cycles;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(joint_order_density(shuffled) == joint);

    auto grown = cycles;
    grown.emplace_back(value(rng));
    CHECK(joint_order_density(grown) >= joint);
  }
}

TEST_CASE("pairwise coprime cycles factor as a product") {
  std::vector<std::vector<long>> sets = {{2, 3, 5}, {4, 9, 25, 7}, {11, 13, 17, 19, 23}, {8, 27}};
  for (const auto& s : sets) {
    std::vector<Natural> cycles;
    Rational miss(1);
    for (long c : s) {
      cycles.emplace_back(c);
      miss *= Rational(1) - q(1, c);
    }
    CHECK(joint_order_density(cycles) == Rational(1) - miss);
  }
}

TEST_CASE("factored engine handles sets past the inclusion-exclusion caps") {
  // 15 primes below 50 times 6 larger primes, plus three bare primes.
  std::vector<long> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::vector<long> large = {59, 61, 71, 73, 101, 103};
  std::vector<std::vector<PrimePower>> cycles;
  for (long p : small) {
    for (long v : large) cycles.push_back(factorize(Natural(p) * v));
  }
  for (long v : {59, 73, 103}) cycles.push_back(factorize(Natural(v)));
  Rational alpha_c(1), miss_v(1);
  for (long p : small) alpha_c *= q(p - 1, p);
  for (long v : large) miss_v *= q(v - 1, v);
  Rational bare(1);
  for (long v : {59, 73, 103}) bare *= q(v - 1, v);
  // ordered iff (some small prime and some large prime divide) or a bare prime divides
  Rational expected = Rational(1) - bare * (Rational(1) - (Rational(1) - alpha_c) * (Rational(1) - miss_v / bare));
  CHECK(factored_union_density(cycles) == expected);

  auto t = factorize(Natural(59));
  std::vector<std::vector<PrimePower>> others(cycles.begin(), cycles.end());
  others.pop_back();
  others.pop_back();
  others.pop_back();
  others.push_back(factorize(Natural(73)));
  others.push_back(factorize(Natural(103)));
  CHECK(factored_sole_density(t, others) == q(1, 59) * alpha_c * q(72, 73) * q(102, 103));
}
