#include "recip/rl_word.hpp"

#include <algorithm>

namespace recip {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow in R/L reduction");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer overflow in R/L reduction");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// T^-k M T^k
IntMatrix shift(const IntMatrix& m, std::int64_t k) {
  const std::int64_t a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  IntMatrix out;
  out(0, 0) = checked_add(a, -checked_mul(k, c));
  out(0, 1) = checked_add(checked_add(b, checked_mul(k, a - d)), -checked_mul(checked_mul(k, k), c));
  out(1, 0) = c;
  out(1, 1) = checked_add(d, checked_mul(k, c));
  return out;
}

// S M S^-1
IntMatrix flip(const IntMatrix& m) {
  IntMatrix out;
  out << m(1, 1), -m(1, 0), -m(0, 1), m(0, 0);
  return out;
}

}  // namespace

IntMatrix letter_matrix(char letter) {
  IntMatrix m;
  if (letter == 'R') {
    m << 1, 1, 0, 1;
  } else if (letter == 'L') {
    m << 1, 0, 1, 1;
  } else {
    throw DomainError(std::string("unknown letter '") + letter + "'");
  }
  return m;
}

IntMatrix evaluate_word(const std::string& w) {
  IntMatrix m = IntMatrix::Identity();
  for (char ch : w) {
    const IntMatrix x = letter_matrix(ch);
    IntMatrix next;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next(r, c) = checked_add(checked_mul(m(r, 0), x(0, c)), checked_mul(m(r, 1), x(1, c)));
    m = next;
  }
  return m;
}

IntMatrix to_int_matrix(const Moebius<Rational>& g) {
  IntMatrix m;
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = to_int64(g.matrix()(i / 2, i % 2));
  return m;
}

std::string rl_word(const IntMatrix& g) {
  IntMatrix m = g;
  std::int64_t t = m(0, 0) + m(1, 1);
  if (t < 0) {
    m = -m;
    t = -t;
  }
  if (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) != 1) throw DomainError("R/L word needs a unit-determinant matrix");
  if (t <= 2) throw DomainError("R/L word needs a hyperbolic element");

  // Conjugate until the two (irrational) fixed points straddle 0, i.e. b c > 0.
  for (int guard = 0; !(checked_mul(m(0, 1), m(1, 0)) > 0); ++guard) {
    if (guard > 10000) throw DomainError("R/L reduction did not converge");
    const std::int64_t a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    // fixed points are the roots of f(z) = c z^2 + (d - a) z - b, centered at (a - d) / 2c
    const std::int64_t k = floor_div(checked_add(a - d, c), 2 * c);
    const auto f = [&](std::int64_t z) {
      return static_cast<__int128>(c) * z * z + static_cast<__int128>(d - a) * z - b;
    };
    if (static_cast<__int128>(c) * f(k) < 0) {
      m = shift(m, k);
    } else {
      m = flip(shift(m, floor_div(a - d, 2 * c)));
    }
  }
  if (m(0, 1) < 0) m = flip(m);

  std::string w;
  while (!(m(0, 1) == 0 && m(1, 0) == 0)) {
    const std::int64_t a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    if (a >= c && b >= d) {
      w += 'R';
      m << a - c, b - d, c, d;
    } else if (c >= a && d >= b) {
      w += 'L';
      m << a, b, c - a, d - b;
    } else {
      throw DomainError("R/L peeling left a non-positive matrix");
    }
    if (m.minCoeff() < 0) throw DomainError("R/L peeling left a non-positive matrix");
  }
  if (m(0, 0) != 1 || m(1, 1) != 1) throw DomainError("R/L peeling did not reach the identity");
  if (evaluate_word(w).trace() != t) throw DomainError("R/L word does not reproduce the trace");
  return w;
}

std::string rl_word(const Moebius<Rational>& g) {
  if (classify(g) != IsometryKind::Hyperbolic) throw DomainError("R/L word needs a hyperbolic element");
  return rl_word(to_int_matrix(g));
}

std::string canonical_cyclic(const std::string& w) {
  const std::size_t n = w.size();
  if (n == 0) return w;
  const std::string ww = w + w;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const char a = ww[i + k], b = ww[j + k];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return ww.substr(std::min(i, j), n);
}

std::string reverse_swap(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& ch : out) ch = ch == 'R' ? 'L' : (ch == 'L' ? 'R' : ch);
  return out;
}

std::string canonical_unoriented(const std::string& w) {
  return std::min(canonical_cyclic(w), canonical_cyclic(reverse_swap(w)));
}

bool is_reciprocal(const std::string& w) {
  if (w.empty()) throw DomainError("reciprocity needs a nonempty word");
  return canonical_cyclic(w) == canonical_cyclic(reverse_swap(w));
}

std::string primitive_root(const std::string& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return w.substr(0, p);
  }
  return w;
}

bool is_primitive(const std::string& w) { return primitive_root(w).size() == w.size(); }

}  // namespace recip
