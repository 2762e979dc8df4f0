#include "hankel/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <system_error>

namespace hankel {

Backend Backend::bigfloat(int bits) {
  if (bits < BigFloat::kMinPrecision || bits > BigFloat::kMaxPrecision) {
    throw std::invalid_argument("bigfloat precision must lie in [64, 65536] bits");
  }
  return {Kind::bigfloat, bits};
}

Backend Backend::parse(std::string_view text) {
  if (text == "rational") return rational();
  if (text == "f64") return f64();
  constexpr std::string_view prefix = "bigfloat:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    int bits = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed backend: " + std::string(text));
    }
    return bigfloat(bits);
  }
  throw std::invalid_argument("unknown backend: " + std::string(text));
}

std::string Backend::str() const {
  switch (kind) {
    case Kind::rational:
      return "rational";
    case Kind::bigfloat:
      return "bigfloat:" + std::to_string(bits);
    case Kind::f64:
      break;
  }
  return "f64";
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational p = parse_rational(text.substr(0, slash));
    const Rational q = parse_rational(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return p / q;
  }

  bool negative = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    const auto rest = text.substr(i + 1);
    const char* begin = rest.data();
    if (!rest.empty() && rest.front() == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, rest.data() + rest.size(), exponent);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) return fail();
  }
  // A leading zero would select octal.
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  Rational value{BigInt(digits)};
  const long shift = exponent - fraction_digits;
  const Rational ten_power{boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(shift)))};
  value = shift >= 0 ? Rational(value * ten_power) : Rational(value / ten_power);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x);
  if (ec != std::errc{}) return std::to_string(x);
  return std::string(buffer.data(), ptr);
}

std::string format_scalar(const Rational& x) { return to_string(x); }
std::string format_scalar(double x) { return format_double(x); }
std::string format_scalar(const BigFloat& x) { return x.str(20); }

}  // namespace hankel
