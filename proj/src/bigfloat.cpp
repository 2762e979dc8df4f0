#include "hankel/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace hankel {

namespace {

thread_local int g_context_bits = 256;

int clamp_precision(int bits) {
  if (bits < BigFloat::kMinPrecision || bits > BigFloat::kMaxPrecision) {
    throw std::invalid_argument("big-float precision must lie in [64, 65536] bits, got " +
                                std::to_string(bits));
  }
  return bits;
}

mpfr_prec_t result_precision(const BigFloat& a, const BigFloat& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

// Widens x in place (exact) so that it can hold a result at `prec` bits.
void widen(mpfr_ptr x, mpfr_prec_t prec) {
  if (mpfr_get_prec(x) < prec) mpfr_prec_round(x, prec, MPFR_RNDN);
}

}  // namespace

int BigFloat::context_precision() noexcept { return g_context_bits; }

void BigFloat::set_context_precision(int bits) { g_context_bits = clamp_precision(bits); }

BigFloat::BigFloat(Uninit, int bits) { mpfr_init2(value_, bits); }

BigFloat BigFloat::with_precision(int bits) {
  BigFloat x(Uninit{}, clamp_precision(bits));
  mpfr_set_zero(x.value_, 1);
  return x;
}

BigFloat::BigFloat(int v) : BigFloat(static_cast<long>(v)) {}

BigFloat::BigFloat(long v) : BigFloat(Uninit{}, std::max(g_context_bits, kMinPrecision)) {
  mpfr_set_si(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long long v) : BigFloat(static_cast<long>(v)) {}

BigFloat::BigFloat(unsigned v) : BigFloat(static_cast<unsigned long>(v)) {}

BigFloat::BigFloat(unsigned long v) : BigFloat(Uninit{}, std::max(g_context_bits, kMinPrecision)) {
  mpfr_set_ui(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v) : BigFloat(Uninit{}, std::max(g_context_bits, kMinPrecision)) {
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q) : BigFloat(Uninit{}, g_context_bits) {
  mpfr_set_q(value_, q.backend().data(), MPFR_RNDN);
}

BigFloat::BigFloat(std::string_view decimal) : BigFloat(Uninit{}, g_context_bits) {
  std::string text(decimal);
  if (mpfr_set_str(value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw std::invalid_argument("malformed big-float literal: " + text);
  }
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(Uninit{}, other.precision()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, kMinPrecision);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

long BigFloat::exponent2() const noexcept {
  if (!mpfr_regular_p(value_)) return 0;
  return static_cast<long>(mpfr_get_exp(value_));
}

std::string BigFloat::str(int digits) const {
  if (digits <= 0) digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 1;
  std::vector<char> buffer(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rg", digits, value_);
  return buffer.data();
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  widen(value_, mpfr_get_prec(rhs.value_));
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, static_cast<int>(result_precision(a, b)));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, static_cast<int>(result_precision(a, b)));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, static_cast<int>(result_precision(a, b)));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, static_cast<int>(result_precision(a, b)));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat r(BigFloat::Uninit{}, a.precision());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_abs(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_exp(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_log(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(BigFloat::Uninit{}, static_cast<int>(result_precision(x, y)));
  mpfr_pow(r.value_, x.value_, y.value_, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_pow_si(r.value_, x.value_, n, MPFR_RNDN);
  return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r(BigFloat::Uninit{}, x.precision());
  mpfr_mul_2si(r.value_, x.value_, e, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  const auto digits = os.precision() > 0 ? static_cast<int>(os.precision()) : 0;
  return os << x.str(digits);
}

PrecisionScope::PrecisionScope(int bits) : saved_(g_context_bits) {
  BigFloat::set_context_precision(bits);
}

PrecisionScope::~PrecisionScope() { g_context_bits = saved_; }

}  // namespace hankel

namespace Eigen {

hankel::BigFloat NumTraits<hankel::BigFloat>::highest() {
  auto x = hankel::BigFloat::with_precision(hankel::BigFloat::context_precision());
  mpfr_set_inf(x.get(), 1);
  mpfr_nextbelow(x.get());
  return x;
}

}  // namespace Eigen
