#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pjrp {

/// Arbitrary-precision signed integer.
using BigInt = mpz_class;

/// Arbitrary-precision integer used for cycle times, primes and counts.
/// Non-negative by convention; constructors of domain types enforce it.
using Natural = mpz_class;

/// Exact fraction, always stored in lowest terms with a positive denominator.
///
/// Serialized as "num/den", with "/den" omitted when the denominator is 1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  /// Throws ValidationError when den == 0.
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "a", "-a" or "a/b". Non-reduced input is normalized.
  static Rational parse(std::string_view text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  std::string str() const;
  double approx() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  /// Throws ValidationError on division by zero.
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class q_;
};

/// gcd(0, 0) = 0.
Natural gcd(const Natural& a, const Natural& b);
/// Throws ValidationError if either argument is zero.
Natural lcm(const Natural& a, const Natural& b);
/// Largest m with m*m <= n. Throws ValidationError on negative n.
Natural isqrt_floor(const Natural& n);
/// Largest m with m^k <= n, for k >= 1 and n >= 0.
Natural iroot_floor(const Natural& n, unsigned long k);

/// floor of an exact fraction.
BigInt floor(const Rational& r);
/// base^exp for exp >= 0.
Rational pow(const Rational& base, unsigned long exp);
BigInt pow(const BigInt& base, unsigned long exp);

struct PrimePower {
  Natural prime;
  unsigned long exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of n >= 1, ascending by prime. `known_primes` (which must be
/// primes) are divided out first; the remainder is trial-divided by d <= trial_limit.
/// Throws CapExceeded when a composite remainder survives the trial limit.
std::vector<PrimePower> factorize(const Natural& n, std::span<const Natural> known_primes = {},
                                  std::uint64_t trial_limit = 10'000'000);

/// Parses a decimal integer; throws ValidationError on anything else.
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& v);

}  // namespace pjrp
