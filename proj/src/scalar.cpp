#include "recip/scalar.hpp"

#include "recip/errors.hpp"

#include <charconv>
#include <cstdio>
#include <limits>

namespace recip {

std::string ScalarTraits<double>::to_string(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ValidationError("", "empty number in '" + std::string(whole) + "'");
  std::size_t i = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  if (i == digits.size()) throw ValidationError("", "malformed number '" + std::string(whole) + "'");
  for (std::size_t k = i; k < digits.size(); ++k) {
    if (digits[k] < '0' || digits[k] > '9')
      throw ValidationError("", "malformed number '" + std::string(whole) + "'");
  }
  std::string s(digits.substr(digits[0] == '+' ? 1 : 0));
  return BigInt(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ValidationError("", "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    // Decimal literal: exact value of the written digits, not of a double.
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    bool negative = !digits.empty() && digits[0] == '-';
    BigInt whole = digits.empty() || digits == "-" || digits == "+" ? BigInt(0)
                                                                     : parse_integer(digits, text);
    BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac, text);
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt magnitude = abs(whole) * scale + f;
    return Rational(negative ? BigInt(-magnitude) : magnitude, scale);
  }
  return Rational(parse_integer(text, text));
}

bool is_integer(const Rational& v) { return denominator(v) == 1; }

std::int64_t to_int64(const Rational& v) {
  if (!is_integer(v)) throw DomainError("value " + v.str() + " is not an integer");
  const BigInt n = numerator(v);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw DomainError("integer " + v.str() + " does not fit in 64 bits");
  return n.convert_to<std::int64_t>();
}

std::int64_t grid_index(double v) {
  const double s = std::round(v / kGridPitch);
  if (!(std::abs(s) < 9.0e18)) throw DomainError("value too large for the floating identity grid");
  return static_cast<std::int64_t>(s);
}

}  // namespace recip
