#pragma once

#include "pjrp/numerics.hpp"

namespace pjrp::eoq {

/// Standalone single-commodity parameters: ordering cost K, holding cost h
/// and demand rate lambda. All three strictly positive.
struct EoqParams {
  Rational K;
  Rational h;
  Rational lambda;
};

/// Validating constructor; throws ValidationError on any non-positive field.
EoqParams make_params(Rational K, Rational h, Rational lambda);

/// g(t) = K/t + lambda*h*t/2. Throws ValidationError for t <= 0.
Rational average_periodic_cost(const EoqParams& p, const Rational& t);

/// (t*)^2 = 2K/(h*lambda). t* itself is generally irrational and is never formed.
Rational continuous_optimum_squared(const EoqParams& p);

/// Integer cycle time minimizing g over the positive integers.
///
/// With tl = floor(t*), picks tl+1 iff tl*(tl+1) < (t*)^2 and tl otherwise, so an
/// exact tie (g(tl) == g(tl+1)) resolves to the lower value. Returns 1 when t* < 1.
Natural integer_optimum(const EoqParams& p);

}  // namespace pjrp::eoq
