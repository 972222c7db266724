#pragma once

#include "recip/errors.hpp"
#include "recip/scalar.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <string>

namespace recip {

template <class Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Projective unit-determinant 2x2 matrix acting on the upper half-plane.
///
/// Entries are kept sign-normalized (first nonzero of a, b, c, d positive) so
/// that g and -g, which act identically, share one representation.
template <class Scalar>
class Moebius {
 public:
  using Matrix = Matrix2<Scalar>;

  Moebius() : m_(Matrix::Identity()) {}

  Moebius(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
    m_ << a, b, c, d;
    check_determinant();
    normalize();
  }

  explicit Moebius(const Matrix& m) : m_(m) {
    check_determinant();
    normalize();
  }

  /// Wraps a product of validated elements; skips the determinant check.
  static Moebius from_product(const Matrix& m) {
    Moebius g;
    g.m_ = m;
    g.normalize();
    return g;
  }

  static Moebius identity() { return Moebius(); }

  const Scalar& a() const { return m_(0, 0); }
  const Scalar& b() const { return m_(0, 1); }
  const Scalar& c() const { return m_(1, 0); }
  const Scalar& d() const { return m_(1, 1); }
  const Matrix& matrix() const { return m_; }

  Scalar trace() const { return m_(0, 0) + m_(1, 1); }
  Scalar determinant() const { return m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0); }

  bool operator==(const Moebius& o) const {
    for (int i = 0; i < 4; ++i) {
      if (!ScalarTraits<Scalar>::equal(m_(i / 2, i % 2), o.m_(i / 2, i % 2))) return false;
    }
    return true;
  }

 private:
  void check_determinant() const {
    const Scalar det = determinant();
    if constexpr (is_exact_v<Scalar>) {
      if (det != 1) throw DomainError("matrix determinant is " + det.str() + ", expected 1");
    } else {
      const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
      if (std::abs(det - 1.0) > kTolerance * scale * scale)
        throw DomainError("matrix determinant deviates from 1");
    }
  }

  void normalize() {
    for (int i = 0; i < 4; ++i) {
      const int s = ScalarTraits<Scalar>::sign(m_(i / 2, i % 2));
      if (s > 0) return;
      if (s < 0) {
        m_ = -m_;
        return;
      }
    }
  }

  Matrix m_;
};

/// Point z = x + iy of the upper half-plane.
template <class Scalar>
class Point {
 public:
  Point(Scalar x, Scalar y) : x_(std::move(x)), y_(std::move(y)) {
    if (!(ScalarTraits<Scalar>::sign(y_) > 0 || (!is_exact_v<Scalar> && to_double(y_) > 0)))
      throw DomainError("point must lie in the upper half-plane");
  }

  const Scalar& x() const { return x_; }
  const Scalar& y() const { return y_; }

  bool operator==(const Point& o) const {
    return ScalarTraits<Scalar>::equal(x_, o.x_) && ScalarTraits<Scalar>::equal(y_, o.y_);
  }

 private:
  Scalar x_;
  Scalar y_;
};

template <class Scalar>
std::ostream& operator<<(std::ostream& os, const Point<Scalar>& p) {
  return os << "(" << p.x() << ", " << p.y() << ")";
}

template <class Scalar>
std::ostream& operator<<(std::ostream& os, const Moebius<Scalar>& g) {
  return os << "[[" << g.a() << ", " << g.b() << "], [" << g.c() << ", " << g.d() << "]]";
}

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic };

inline std::string_view to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

/// cosh of a hyperbolic distance together with the distance itself.
template <class Scalar>
struct HypDistance {
  Scalar cosh;
  double length;
};

inline double length_from_cosh(double c) { return std::acosh(std::max(1.0, c)); }

template <class Scalar>
Moebius<Scalar> compose(const Moebius<Scalar>& g, const Moebius<Scalar>& h) {
  return Moebius<Scalar>::from_product(g.matrix() * h.matrix());
}

template <class Scalar>
Moebius<Scalar> operator*(const Moebius<Scalar>& g, const Moebius<Scalar>& h) {
  return compose(g, h);
}

template <class Scalar>
Moebius<Scalar> invert(const Moebius<Scalar>& g) {
  Matrix2<Scalar> m;
  m << g.d(), -g.b(), -g.c(), g.a();
  return Moebius<Scalar>::from_product(m);
}

/// g^n for any integer n.
template <class Scalar>
Moebius<Scalar> power(const Moebius<Scalar>& g, long n) {
  Moebius<Scalar> base = n < 0 ? invert(g) : g;
  Moebius<Scalar> out;
  for (unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n); e; e >>= 1) {
    if (e & 1) out = out * base;
    base = base * base;
  }
  return out;
}

/// Conjugate g h g^{-1}.
template <class Scalar>
Moebius<Scalar> conjugate(const Moebius<Scalar>& g, const Moebius<Scalar>& h) {
  return g * h * invert(g);
}

/// z -> (az + b) / (cz + d); exact input stays exact.
template <class Scalar>
Point<Scalar> apply(const Moebius<Scalar>& g, const Point<Scalar>& p) {
  const Scalar re = g.c() * p.x() + g.d();
  const Scalar im = g.c() * p.y();
  const Scalar denom = re * re + im * im;
  const Scalar num_x = (g.a() * p.x() + g.b()) * re + g.a() * g.c() * p.y() * p.y();
  return Point<Scalar>(num_x / denom, p.y() / denom);
}

/// cosh d(p, q) = 1 + |p - q|^2 / (2 Im p Im q).
template <class Scalar>
Scalar cosh_dist(const Point<Scalar>& p, const Point<Scalar>& q) {
  const Scalar dx = p.x() - q.x();
  const Scalar dy = p.y() - q.y();
  return Scalar(1) + (dx * dx + dy * dy) / (Scalar(2) * p.y() * q.y());
}

template <class Scalar>
HypDistance<Scalar> dist(const Point<Scalar>& p, const Point<Scalar>& q) {
  Scalar c = cosh_dist(p, q);
  const double len = length_from_cosh(to_double(c));
  return {std::move(c), len};
}

template <class Scalar>
IsometryKind classify(const Moebius<Scalar>& g) {
  using T = ScalarTraits<Scalar>;
  if (T::is_zero(g.b()) && T::is_zero(g.c()) && T::equal(g.a(), g.d()) &&
      T::equal(g.a() * g.d(), Scalar(1)))
    return IsometryKind::Identity;
  const Scalar t = abs_value(g.trace());
  if (T::equal(t, Scalar(2))) return IsometryKind::Parabolic;
  return T::less(t, Scalar(2)) ? IsometryKind::Elliptic : IsometryKind::Hyperbolic;
}

/// Translation length of a hyperbolic element: 2 arccosh(|tr| / 2).
template <class Scalar>
double translation_length(const Moebius<Scalar>& g) {
  if (classify(g) != IsometryKind::Hyperbolic)
    throw DomainError("translation length needs a hyperbolic element");
  return 2.0 * std::acosh(std::abs(to_double(g.trace())) / 2.0);
}

template <class Scalar>
bool is_involution(const Moebius<Scalar>& g) {
  return ScalarTraits<Scalar>::is_zero(g.trace());
}

/// Fixed point of an order-two element: ((a - d) / 2c, 1 / |c|).
template <class Scalar>
Point<Scalar> involution_fixed_point(const Moebius<Scalar>& s) {
  if (!is_involution(s)) throw DomainError("element is not an involution");
  if (ScalarTraits<Scalar>::is_zero(s.c())) throw DomainError("involution with c = 0");
  const Scalar two_c = Scalar(2) * s.c();
  if constexpr (is_exact_v<Scalar>) {
    return Point<Scalar>((s.a() - s.d()) / two_c, Scalar(1) / abs_value(s.c()));
  } else {
    const double t = s.trace();
    return Point<Scalar>((s.a() - s.d()) / two_c,
                         std::sqrt(std::max(0.0, 4.0 - t * t)) / std::abs(two_c));
  }
}

inline double ball_volume(double radius) {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  return 2.0 * std::numbers::pi * (std::cosh(radius) - 1.0);
}

template <class Scalar>
Point<double> to_floating(const Point<Scalar>& p) {
  return Point<double>(to_double(p.x()), to_double(p.y()));
}

template <class Scalar>
Moebius<double> to_floating(const Moebius<Scalar>& g) {
  return Moebius<double>::from_product(g.matrix().unaryExpr([](const Scalar& v) { return to_double(v); }));
}

inline std::complex<double> as_complex(const Point<double>& p) { return {p.x(), p.y()}; }

inline double wrap_angle(double a) {
  constexpr double tau = 2.0 * std::numbers::pi;
  a = std::fmod(a, tau);
  if (a < 0) a += tau;
  return a >= tau ? 0.0 : a;
}

/// Direction of the tangent vector g_*(v) where v at z has direction `angle`.
inline double pushforward_angle(const Moebius<double>& g, const Point<double>& z, double angle) {
  const std::complex<double> w = g.c() * as_complex(z) + g.d();
  return wrap_angle(angle - 2.0 * std::arg(w));
}

/// Unit-speed geodesic through two distinct points, parametrized by arc length from the first.
class GeodesicArc {
 public:
  struct Sample {
    Point<double> point;
    double angle;
  };

  GeodesicArc(const Point<double>& from, const Point<double>& to) {
    const double c = cosh_dist(from, to);
    if (!(c > 1.0)) throw DomainError("geodesic needs two distinct points");
    length_ = std::acosh(c);
    // Send `from` to i, then rotate about i until `to` lies straight above it.
    const double sy = std::sqrt(from.y());
    const Moebius<double> to_i = Moebius<double>::from_product(
        (Matrix2<double>() << 1.0 / sy, -from.x() / sy, 0.0, sy).finished());
    const std::complex<double> w = as_complex(apply(to_i, to));
    const std::complex<double> I(0.0, 1.0);
    const double psi = std::arg((w - I) / (w + I));
    const double half = 0.5 * (0.5 * std::numbers::pi - (psi + 0.5 * std::numbers::pi));
    const Moebius<double> rot = Moebius<double>::from_product(
        (Matrix2<double>() << std::cos(half), std::sin(half), -std::sin(half), std::cos(half)).finished());
    frame_ = invert(compose(rot, to_i));
  }

  double length() const { return length_; }

  /// Point and tangent direction at arc length s from the start.
  Sample at(double s) const {
    const Point<double> w(0.0, std::exp(s));
    return {apply(frame_, w), pushforward_angle(frame_, w, 0.5 * std::numbers::pi)};
  }

 private:
  Moebius<double> frame_;
  double length_ = 0.0;
};

/// Point at arc-length fraction t along the geodesic from p to q, with its tangent direction.
template <class Scalar>
GeodesicArc::Sample geodesic_sample(const Point<Scalar>& p, const Point<Scalar>& q, double t) {
  if (p == q) throw DomainError("geodesic_sample needs p != q");
  GeodesicArc arc(to_floating(p), to_floating(q));
  if (t <= 0.0) return {to_floating(p), arc.at(0.0).angle};
  return arc.at(t * arc.length());
}

/// Key under which points are identified: exact coordinates, or grid cells in floating mode.
template <class Scalar>
struct PointKey {
  Scalar x, y;
  bool operator==(const PointKey&) const = default;
  bool operator<(const PointKey& o) const { return x < o.x || (x == o.x && y < o.y); }
};

template <>
struct PointKey<double> {
  std::int64_t x, y;
  bool operator==(const PointKey&) const = default;
  bool operator<(const PointKey& o) const { return x < o.x || (x == o.x && y < o.y); }
};

template <class Scalar>
PointKey<Scalar> point_key(const Point<Scalar>& p) {
  if constexpr (is_exact_v<Scalar>) {
    return {p.x(), p.y()};
  } else {
    return {grid_index(p.x()), grid_index(p.y())};
  }
}

struct PointKeyHash {
  std::size_t operator()(const PointKey<Rational>& k) const {
    std::size_t h = hash_scalar(k.x);
    hash_combine(h, hash_scalar(k.y));
    return h;
  }
  std::size_t operator()(const PointKey<double>& k) const {
    std::size_t h = std::hash<std::int64_t>{}(k.x);
    hash_combine(h, std::hash<std::int64_t>{}(k.y));
    return h;
  }
};

/// Key under which group elements are identified (same policy as PointKey).
template <class Scalar>
struct ElementKey {
  std::array<Scalar, 4> e;
  bool operator==(const ElementKey&) const = default;
};

template <>
struct ElementKey<double> {
  std::array<std::int64_t, 4> e;
  bool operator==(const ElementKey&) const = default;
};

template <class Scalar>
ElementKey<Scalar> element_key(const Moebius<Scalar>& g) {
  if constexpr (is_exact_v<Scalar>) {
    return {{g.a(), g.b(), g.c(), g.d()}};
  } else {
    return {{grid_index(g.a()), grid_index(g.b()), grid_index(g.c()), grid_index(g.d())}};
  }
}

struct ElementKeyHash {
  std::size_t operator()(const ElementKey<Rational>& k) const {
    std::size_t h = 0;
    for (const auto& v : k.e) hash_combine(h, hash_scalar(v));
    return h;
  }
  std::size_t operator()(const ElementKey<double>& k) const {
    std::size_t h = 0;
    for (auto v : k.e) hash_combine(h, std::hash<std::int64_t>{}(v));
    return h;
  }
};

}  // namespace recip
