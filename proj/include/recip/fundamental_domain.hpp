#pragma once

#include "recip/hyp_core.hpp"

#include <utility>

namespace recip {

template <class Scalar>
struct Reduction {
  Point<Scalar> point;
  Moebius<Scalar> gamma;  // gamma * input == point
};

namespace detail {
// n with x - n in (-1/2, 1/2], i.e. ceil(x - 1/2)
inline long round_half_down(const Rational& x) {
  const Rational s = x - Rational(1, 2);
  BigInt q = numerator(s) / denominator(s);  // truncates toward zero
  if (s.sign() > 0 && q * denominator(s) != numerator(s)) q += 1;
  return q.convert_to<long>();
}
inline long round_half_down(double x) { return static_cast<long>(std::ceil(x - 0.5)); }
}  // namespace detail

/// Reduces p into the closed modular fundamental domain {|Re z| <= 1/2, |z| >= 1}.
/// Points already inside come back unchanged with the identity.
template <class Scalar>
Reduction<Scalar> reduce_fd(const Point<Scalar>& p) {
  using T = ScalarTraits<Scalar>;
  const Scalar half(Scalar(1) / Scalar(2));
  Point<Scalar> z = p;
  Moebius<Scalar> g;
  const Moebius<Scalar> S(Scalar(0), Scalar(-1), Scalar(1), Scalar(0));
  for (int guard = 0; guard < 100000; ++guard) {
    if (T::less(half, abs_value(z.x()))) {
      const long n = detail::round_half_down(z.x());
      const Moebius<Scalar> shift(Scalar(1), Scalar(-n), Scalar(0), Scalar(1));
      z = Point<Scalar>(z.x() - Scalar(n), z.y());
      g = shift * g;
    }
    if (T::less(z.x() * z.x() + z.y() * z.y(), Scalar(1))) {
      z = apply(S, z);
      g = S * g;
      continue;
    }
    return {z, g};
  }
  throw DomainError("fundamental-domain reduction did not terminate");
}

}  // namespace recip
