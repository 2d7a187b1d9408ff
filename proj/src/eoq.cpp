#include "pjrp/eoq.hpp"

#include "pjrp/errors.hpp"

namespace pjrp::eoq {

EoqParams make_params(Rational K, Rational h, Rational lambda) {
  if (K.sign() <= 0 || h.sign() <= 0 || lambda.sign() <= 0)
    throw ValidationError("EOQ parameters must be strictly positive (K=" + K.str() + ", h=" + h.str() +
                          ", lambda=" + lambda.str() + ")");
  return EoqParams{std::move(K), std::move(h), std::move(lambda)};
}

Rational average_periodic_cost(const EoqParams& p, const Rational& t) {
  if (t.sign() <= 0) throw ValidationError("cycle time must be positive, got " + t.str());
  return p.K / t + p.lambda * p.h * t / Rational(2);
}

Rational continuous_optimum_squared(const EoqParams& p) {
  return Rational(2) * p.K / (p.h * p.lambda);
}

Natural integer_optimum(const EoqParams& p) {
  const Rational s = continuous_optimum_squared(p);
  if (s < Rational(1)) return Natural(1);
  // m*m <= s  <=>  m*m <= floor(s) for integer m
  const Natural lower = isqrt_floor(floor(s));
  const Rational product(BigInt(lower * (lower + 1)));
  if (product < s) return lower + 1;
  return lower;
}

}  // namespace pjrp::eoq
