#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace recip {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Absolute tolerance shared by every floating-mode comparison.
inline constexpr double kTolerance = 1e-10;

enum class Mode { Exact, Floating };

inline std::string_view to_string(Mode m) { return m == Mode::Exact ? "exact" : "floating"; }

/// Per-scalar policy: exact rationals compare exactly, doubles within kTolerance.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode mode = Mode::Exact;
  static constexpr bool exact = true;

  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational from_double(double v) { return Rational(v); }
  static bool is_zero(const Rational& v) { return v.sign() == 0; }
  static int sign(const Rational& v) { return v.sign(); }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static bool less_equal(const Rational& a, const Rational& b) { return a <= b; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static std::string to_string(const Rational& v) { return v.str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr Mode mode = Mode::Floating;
  static constexpr bool exact = false;

  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
  static bool is_zero(double v) { return std::abs(v) <= kTolerance; }
  static int sign(double v) { return is_zero(v) ? 0 : (v > 0 ? 1 : -1); }
  static bool equal(double a, double b) { return std::abs(a - b) <= kTolerance; }
  static bool less_equal(double a, double b) { return a <= b + kTolerance; }
  static bool less(double a, double b) { return a < b - kTolerance; }
  static std::string to_string(double v);
};

template <class Scalar>
inline constexpr bool is_exact_v = ScalarTraits<Scalar>::exact;

template <class Scalar>
double to_double(const Scalar& v) {
  return ScalarTraits<Scalar>::to_double(v);
}

template <class Scalar>
Scalar abs_value(const Scalar& v) {
  return ScalarTraits<Scalar>::sign(v) < 0 ? Scalar(-v) : v;
}

/// Parses "p/q", "p" or a decimal literal into a rational in lowest terms.
Rational parse_rational(std::string_view text);

/// Exact comparison of a rational against an exactly-representable double.
inline bool rational_leq(const Rational& a, double b) { return a <= Rational(b); }

bool is_integer(const Rational& v);
std::int64_t to_int64(const Rational& v);

/// Floating-mode identity grid: coordinates are snapped to a pitch of 10 tolerances.
inline constexpr double kGridPitch = 10 * kTolerance;

std::int64_t grid_index(double v);

/// Distance (in pitches) from v to the nearest grid boundary; small values mark near-ties.
inline double grid_margin(double v) {
  const double s = v / kGridPitch;
  return 0.5 - std::abs(s - std::round(s));
}

inline std::size_t hash_scalar(const Rational& v) {
  return std::hash<double>{}(v.convert_to<double>());
}

inline void hash_combine(std::size_t& seed, std::size_t h) {
  seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace recip
