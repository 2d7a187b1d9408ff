#include "doctest.h"

#include <chrono>
#include <cmath>

#include "pjrp/errors.hpp"
#include "pjrp/primes.hpp"

using namespace pjrp;
using namespace pjrp::primes;

namespace {

std::size_t count_by_trial_division(Prime limit) {
  std::size_t count = 0;
  for (Prime n = 2; n <= limit; ++n) {
    bool prime = true;
    for (Prime d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    count += prime;
  }
  return count;
}

const ConditionRow& row(const std::vector<ConditionRow>& rows, const std::string& name) {
  for (const auto& r : rows) {
    if (r.condition == name) return r;
  }
  FAIL("missing row " << name);
  return rows.front();
}

}  // namespace

TEST_CASE("sieve examples") {
  CHECK(sieve(10) == std::vector<Prime>{2, 3, 5, 7});
  CHECK(sieve(2) == std::vector<Prime>{2});
  CHECK(sieve(1).empty());
  CHECK(sieve(1000).size() == count_by_trial_division(1000));
  CHECK(sieve(10000).size() == count_by_trial_division(10000));
  CHECK_THROWS_AS(sieve(1000, 999), CapExceeded);
}

TEST_CASE("prime counts stay inside the upper envelope") {
  for (Prime x : {Prime{1000}, Prime{10000}, Prime{100000}}) {
    double bound = 1.255 * static_cast<double>(x) / std::log(static_cast<double>(x));
    CHECK(static_cast<double>(sieve(x).size()) <= bound);
  }
}

TEST_CASE("consecutive pairs") {
  auto p20 = sieve(20);
  CHECK(consecutive_pairs(p20, 2) == std::vector<PrimePair>{{3, 5}, {5, 7}, {11, 13}, {17, 19}});
  CHECK(consecutive_pairs(p20, 1) == std::vector<PrimePair>{{2, 3}});
  auto p25 = sieve(25);
  auto wide = consecutive_pairs(p25, 4);
  for (PrimePair expected : {PrimePair{7, 11}, PrimePair{13, 17}, PrimePair{19, 23}}) {
    CHECK(std::find(wide.begin(), wide.end(), expected) != wide.end());
  }
}

TEST_CASE("a selected 3 blocks every later twin pair") {
  CHECK_THROWS_AS(select_vp(make_params(2, 2, 2), 3, 1000), ValidationError);
}

TEST_CASE("condition 3 violations") {
  std::vector<Prime> five = {5};
  std::vector<Prime> five_seven = {5, 7};
  CHECK(violates_condition3({29, 31}, five));
  CHECK_FALSE(violates_condition3({11, 13}, five_seven));
  CHECK_FALSE(violates_condition3({29, 31}, {}));
}

TEST_CASE("select_vp examples") {
  auto two = select_vp(make_params(2, 2, 2), 11, 100);
  CHECK(two.pairs == std::vector<PrimePair>{{11, 13}, {17, 19}});
  CHECK(two.pp == std::vector<Prime>{2, 3, 5, 7});
  auto three = select_vp(make_params(3, 2, 2), 11, 100);
  CHECK(three.pairs == std::vector<PrimePair>{{11, 13}, {17, 19}, {29, 31}});
  auto one = select_vp(make_params(1, 2, 2), 3, 10);
  CHECK(one.pairs == std::vector<PrimePair>{{3, 5}});
  CHECK(one.pp == std::vector<Prime>{2});
  CHECK_THROWS_AS(select_vp(make_params(5, 2, 2), 11, 50), ValidationError);
  auto capped = select_vp(make_params(2, 2, 2, std::nullopt, Prime{5}), 11, 100);
  CHECK(capped.pp == std::vector<Prime>{2, 3});
  CHECK(select_vp(make_params(3, 2, 2), 11, 100).pairs == three.pairs);
}

TEST_CASE("make_params validation") {
  CHECK_THROWS_AS(make_params(0, 2, 2), ValidationError);
  CHECK_THROWS_AS(make_params(1, 1, 2), ValidationError);
  CHECK_THROWS_AS(make_params(1, 2, 1), ValidationError);
  CHECK_THROWS_AS(make_params(1, 2, 2, Rational(0)), ValidationError);
  CHECK(make_params(4, 2, 2).B == Rational(576));
  CHECK(make_params(1, 2, 2).B == Rational(1));
}

TEST_CASE("validate_conditions on a desk set") {
  auto vp = select_vp(make_params(2, 2, 2), 11, 100);
  auto rows = validate_conditions(vp);
  CHECK(row(rows, "cond1_gap").pass);
  CHECK(row(rows, "cond3_no_multiple_in_gap").pass);
  CHECK_FALSE(row(rows, "cond2.5_magnitude").pass);
  CHECK(row(rows, "cond2.5_magnitude").margin == Rational(11 - 4096));
  CHECK(row(rows, "consecutive_primes").pass);
  CHECK(row(rows, "pairs_increasing").pass);
  CHECK(row(rows, "pp_primes_below_lower_1").pass);
}

TEST_CASE("condition 2.5 passes above n^(6 b_tilde)") {
  auto vp = select_vp(make_params(2, 2, 2), 4097, 10000);
  // located by the sieve: first twin pair above 4096
  auto all = sieve(10000);
  auto twins = consecutive_pairs(all, 2);
  auto first = std::find_if(twins.begin(), twins.end(), [](const PrimePair& p) { return p.lower > 4096; });
  CHECK(vp.pairs.front() == *first);
  auto rows = validate_conditions(vp);
  CHECK(row(rows, "cond2.5_magnitude").pass);
}

TEST_CASE("condition 3 overlap is detected") {
  VpSet vp;
  vp.params = make_params(2, 2, 2);
  vp.pairs = {{5, 7}, {29, 31}};
  vp.pp = {2, 3};
  auto rows = validate_conditions(vp);
  CHECK_FALSE(row(rows, "cond3_no_multiple_in_gap").pass);
  CHECK(row(rows, "cond3_no_multiple_in_gap").margin == Rational(-1));
}

TEST_CASE("broken sets are reported, not thrown") {
  VpSet vp;
  vp.params = make_params(2, 2, 2);
  vp.pairs = {{17, 19}, {11, 13}, {21, 23}};
  vp.pp = {2, 3, 5, 7, 11};
  auto rows = validate_conditions(vp);
  CHECK_FALSE(row(rows, "pairs_increasing").pass);
  CHECK_FALSE(row(rows, "consecutive_primes").pass);
  CHECK_FALSE(row(rows, "pp_primes_below_lower_1").pass);
}

TEST_CASE("select_vp is sound for conditions 1 and 3") {
  for (Prime start : {Prime{5}, Prime{100}, Prime{1000}, Prime{5000}}) {
    for (std::uint64_t b : {2, 4, 6}) {
      auto vp = select_vp(make_params(8, b, 2), start, 200000);
      auto rows = validate_conditions(vp);
      CHECK(row(rows, "cond1_gap").pass);
      CHECK(row(rows, "cond3_no_multiple_in_gap").pass);
      CHECK(row(rows, "consecutive_primes").pass);
      CHECK(row(rows, "pairs_increasing").pass);
    }
  }
}

TEST_CASE("large selection is fast") {
  auto start = std::chrono::steady_clock::now();
  auto vp = select_vp(make_params(50, 6, 2), 10000, 1000000);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(vp.pairs.size() == 50);
  CHECK(secs < 10.0);
}
