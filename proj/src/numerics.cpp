#include "pjrp/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "pjrp/errors.hpp"

namespace pjrp {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ValidationError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw ValidationError("rational denominator must be unsigned: '" + std::string(text) + "'");
  BigInt den = parse_bigint(den_text);
  if (den == 0) throw ValidationError("rational with zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Natural gcd(const Natural& a, const Natural& b) {
  Natural r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Natural lcm(const Natural& a, const Natural& b) {
  if (a == 0 || b == 0) throw ValidationError("lcm of zero");
  Natural r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Natural isqrt_floor(const Natural& n) {
  if (n < 0) throw ValidationError("isqrt of negative value");
  Natural r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Natural iroot_floor(const Natural& n, unsigned long k) {
  if (n < 0 || k == 0) throw ValidationError("iroot needs n >= 0 and k >= 1");
  Natural r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

BigInt floor(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, unsigned long exp) {
  return Rational(pow(base.num(), exp), pow(base.den(), exp));
}

BigInt parse_bigint(std::string_view text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ValidationError("expected an integer, got '" + std::string(text) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits, 10);
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::vector<PrimePower> factorize(const Natural& n, std::span<const Natural> known_primes,
                                  std::uint64_t trial_limit) {
  if (n < 1) throw ValidationError("factorize needs n >= 1, got " + n.get_str());
  std::vector<PrimePower> out;
  Natural rest = n;
  auto divide_out = [&](const Natural& p) {
    unsigned long e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  for (const auto& p : known_primes) {
    if (rest == 1) break;
    if (p >= 2) divide_out(p);
  }
  for (std::uint64_t d = 2; rest > 1; d += (d == 2 ? 1 : 2)) {
    Natural dd(static_cast<unsigned long>(d));
    if (dd * dd > rest) {
      divide_out(Natural(rest));
      break;
    }
    if (d > trial_limit)
      throw CapExceeded("cannot factor " + n.get_str() + " by trial division up to " + std::to_string(trial_limit));
    divide_out(dd);
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

}  // namespace pjrp
