#ifndef HANKEL_BIGFLOAT_HPP
#define HANKEL_BIGFLOAT_HPP

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "hankel/rational.hpp"

namespace hankel {

/// Arbitrary precision binary floating point number backed by MPFR.
///
/// Every value carries its own precision in bits. Arithmetic rounds to the
/// larger precision of the two operands, so data materialized at a given
/// precision stays at that precision through Eigen expressions without any
/// ambient state. The thread-local context precision (see PrecisionScope)
/// only governs conversions from inexact sources: rationals, strings and
/// transcendental constants.
class BigFloat {
 public:
  static constexpr int kMinPrecision = 64;
  static constexpr int kMaxPrecision = 1 << 16;

  static int context_precision() noexcept;
  static void set_context_precision(int bits);

  BigFloat() : BigFloat(0) {}
  BigFloat(int v);
  BigFloat(long v);
  BigFloat(long long v);
  BigFloat(unsigned v);
  BigFloat(unsigned long v);
  BigFloat(double v);
  explicit BigFloat(const Rational& q);
  explicit BigFloat(std::string_view decimal);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// A zero-valued number at an explicit precision.
  static BigFloat with_precision(int bits);

  int precision() const noexcept { return static_cast<int>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  explicit operator double() const noexcept { return to_double(); }

  /// Base-2 exponent e such that |x| = f * 2^e with 1/2 <= f < 1 (0 for zero).
  long exponent2() const noexcept;
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  /// Decimal rendering with the given number of significant digits
  /// (0 picks enough digits to round-trip the precision).
  std::string str(int digits = 0) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);
  friend BigFloat operator+(const BigFloat& a) { return a; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) noexcept {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) noexcept;

  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat abs(const BigFloat& x);
  friend BigFloat fabs(const BigFloat& x) { return abs(x); }
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat pow(const BigFloat& x, const BigFloat& y);
  friend BigFloat pow(const BigFloat& x, long n);
  friend BigFloat ldexp(const BigFloat& x, long e);
  friend BigFloat abs2(const BigFloat& x) { return x * x; }
  friend bool isfinite(const BigFloat& x) noexcept { return mpfr_number_p(x.value_) != 0; }
  friend bool isnan(const BigFloat& x) noexcept { return mpfr_nan_p(x.value_) != 0; }
  friend bool isinf(const BigFloat& x) noexcept { return mpfr_inf_p(x.value_) != 0; }

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& x);

 private:
  struct Uninit {};
  BigFloat(Uninit, int bits);

  mpfr_t value_;
};

/// Sets the thread-local context precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

}  // namespace hankel

namespace Eigen {

template <>
struct NumTraits<hankel::BigFloat> : GenericNumTraits<hankel::BigFloat> {
  using Real = hankel::BigFloat;
  using NonInteger = hankel::BigFloat;
  using Nested = hankel::BigFloat;
  using Literal = hankel::BigFloat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static Real epsilon() { return ldexp(Real(1), 1 - hankel::BigFloat::context_precision()); }
  static Real dummy_precision() { return ldexp(Real(1), 16 - hankel::BigFloat::context_precision()); }
  static Real highest();
  static Real lowest() { return -highest(); }
  static int digits10() { return static_cast<int>(hankel::BigFloat::context_precision() * 0.30103); }
  static int digits() { return hankel::BigFloat::context_precision(); }
};

}  // namespace Eigen

#endif  // HANKEL_BIGFLOAT_HPP
