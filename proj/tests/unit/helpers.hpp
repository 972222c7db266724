#pragma once

#include "recip/group_model.hpp"

#include <random>

namespace th {

using recip::Moebius;
using recip::Point;
using recip::Rational;
using Q = Rational;

inline Moebius<Q> M(long a, long b, long c, long d) { return Moebius<Q>(Q(a), Q(b), Q(c), Q(d)); }
inline Point<Q> P(const Q& x, const Q& y) { return Point<Q>(x, y); }
inline Point<Q> I() { return Point<Q>(Q(0), Q(1)); }

inline const Moebius<Q>& S() {
  static const Moebius<Q> s = M(0, -1, 1, 0);
  return s;
}
inline const Moebius<Q>& T() {
  static const Moebius<Q> t = M(1, 1, 0, 1);
  return t;
}

/// Random PSL(2,Z) element as a word of 1..max_len letters in S, T, T^-1.
inline Moebius<Q> random_modular(std::mt19937_64& rng, int max_len = 8) {
  std::uniform_int_distribution<int> len(1, max_len), letter(0, 2);
  Moebius<Q> g;
  const Moebius<Q> Ti = recip::invert(T());
  for (int i = len(rng); i > 0; --i) {
    const int l = letter(rng);
    g = g * (l == 0 ? S() : l == 1 ? T() : Ti);
  }
  return g;
}

/// Random rational point with small numerators and denominators.
inline Point<Q> random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 17), pos(1, 40);
  return P(Q(num(rng), den(rng)), Q(pos(rng), den(rng)));
}

}  // namespace th
