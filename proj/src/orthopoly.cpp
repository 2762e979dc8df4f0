#include "hankel/orthopoly.hpp"

#include <algorithm>

namespace hankel {

int ladder_start_bits(std::size_t n, long magnitude_bits) {
  const long bits = 4 * static_cast<long>(n) + 64 + std::max(0L, magnitude_bits);
  return static_cast<int>(std::clamp<long>(bits, BigFloat::kMinPrecision, BigFloat::kMaxPrecision));
}

long moment_magnitude_bits(const MomentFamily& family, std::size_t n) {
  PrecisionScope scope(BigFloat::kMinPrecision);
  MomentSequence<BigFloat> ms(family);
  long best = 0;
  for (std::size_t j = 0; j + 1 < 2 * n; ++j) {
    const BigFloat m = ms(j);
    if (!m.is_zero()) best = std::max(best, m.exponent2());
  }
  return best;
}

LadderResult<BigFloat> factor_ladder(const MomentFamily& family, std::size_t n) {
  int bits = ladder_start_bits(n, moment_magnitude_bits(family, n));
  for (;;) {
    PrecisionScope scope(bits);
    try {
      MomentSequence<BigFloat> ms(family);
      return {factor(ms, n), bits};
    } catch (const PositivityError& e) {
      if (bits >= BigFloat::kMaxPrecision) {
        throw PositivityError(std::string(e.what()) + " at the precision cap", e.dimension(), false);
      }
      bits = std::min(2 * bits, BigFloat::kMaxPrecision);
    }
  }
}

}  // namespace hankel
