#ifndef HANKEL_RATIONAL_HPP
#define HANKEL_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace hankel {

/// Exact rational number (GMP mpq); expression templates off so values
/// compose with Eigen without dangling temporaries.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Parses "p/q", "p", decimal ("-0.125") and scientific ("3e-2") notation exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms; integers print without the denominator.
std::string to_string(const Rational& q);

}  // namespace hankel

#endif  // HANKEL_RATIONAL_HPP
