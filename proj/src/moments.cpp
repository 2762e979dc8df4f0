#include "hankel/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hankel {

// ---------------------------------------------------------------------------
// DiscreteMeasure

DiscreteMeasure::DiscreteMeasure(std::vector<Rational> points, std::vector<Rational> weights) {
  if (points.size() != weights.size()) {
    throw DomainError("discrete measure: " + std::to_string(points.size()) + " points but " +
                      std::to_string(weights.size()) + " weights");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  points_.reserve(points.size());
  weights_.reserve(points.size());
  for (std::size_t i : order) {
    if (weights[i] <= 0) throw DomainError("discrete measure: weights must be positive");
    if (!points_.empty() && points_.back() == points[i]) {
      throw DomainError("discrete measure: repeated point " + to_string(points[i]));
    }
    points_.push_back(points[i]);
    weights_.push_back(weights[i]);
  }
}

std::size_t DiscreteMeasure::find(const Rational& x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it != points_.end() && *it == x) return static_cast<std::size_t>(it - points_.begin());
  return size();
}

Rational DiscreteMeasure::moment(std::size_t n) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < n; ++j) p *= points_[i];
    sum += weights_[i] * p;
  }
  return sum;
}

Rational DiscreteMeasure::max_abs_point() const {
  Rational best = 0;
  for (const auto& x : points_) best = std::max(best, x < 0 ? Rational(-x) : x);
  return best;
}

DiscreteMeasure DiscreteMeasure::scaled(const Rational& factor) const {
  if (factor <= 0) throw DomainError("discrete measure: scale factor must be positive");
  std::vector<Rational> w = weights_;
  for (auto& c : w) c *= factor;
  return DiscreteMeasure(points_, std::move(w));
}

// ---------------------------------------------------------------------------
// MomentFamily

MomentFamily::MomentFamily(Variant v) : variant_(std::move(v)) {
  if (const auto* p = get_if<PowerLog>(); p && p->c <= 0) {
    throw DomainError("power_log: c must be positive");
  }
  if (const auto* g = get_if<Gegenbauer>(); g && g->lambda <= Rational(-1, 2)) {
    throw DomainError("gegenbauer: lambda must exceed -1/2");
  }
  if (const auto* ln = get_if<LogNormal>(); ln && ln->sigma <= 0) {
    throw DomainError("log_normal: sigma must be positive");
  }
  if (const auto* d = get_if<Discrete>(); d && d->measure.empty()) {
    throw EmptyMeasureError("discrete: measure has no points");
  }
  if (const auto* e = get_if<Explicit>(); e && e->values.empty()) {
    throw DomainError("explicit: no moment values");
  }
}

std::string MomentFamily::tag() const {
  struct {
    std::string operator()(const PowerLog&) const { return "power_log"; }
    std::string operator()(const Gegenbauer&) const { return "gegenbauer"; }
    std::string operator()(const Discrete&) const { return "discrete"; }
    std::string operator()(const LogNormal&) const { return "log_normal"; }
    std::string operator()(const Gaussian&) const { return "gaussian"; }
    std::string operator()(const Explicit&) const { return "explicit"; }
  } visitor;
  return std::visit(visitor, variant_);
}

bool MomentFamily::symmetric() const {
  return get_if<Gegenbauer>() != nullptr || get_if<Gaussian>() != nullptr;
}

bool MomentFamily::exact_rational() const {
  if (const auto* p = get_if<PowerLog>()) return denominator(p->c) == 1;
  return get_if<LogNormal>() == nullptr;
}

namespace detail {

Rational rational_moment(const MomentFamily& family, std::size_t n, const Rational* previous_even) {
  if (const auto* p = family.get_if<PowerLog>()) {
    if (denominator(p->c) != 1) throw PrecisionError("power_log moment is irrational", "bigfloat:256");
    const auto c = numerator(p->c).convert_to<unsigned long>();
    BigInt d = 1;
    for (unsigned long j = 0; j < c; ++j) d *= static_cast<unsigned long>(n + 1);
    return Rational(BigInt(1), d);
  }
  if (const auto* g = family.get_if<Gegenbauer>()) {
    if (n % 2 == 1) return Rational(0);
    const std::size_t k = n / 2;
    // (1/2)_k / (lambda+1)_k
    auto factor = [&](std::size_t j) {
      return (Rational(1, 2) + Rational(static_cast<long>(j))) /
             (g->lambda + 1 + Rational(static_cast<long>(j)));
    };
    if (k == 0) return Rational(1);
    if (previous_even) return *previous_even * factor(k - 1);
    Rational value = 1;
    for (std::size_t j = 0; j < k; ++j) value *= factor(j);
    return value;
  }
  if (const auto* d = family.get_if<Discrete>()) return d->measure.moment(n);
  if (family.get_if<Gaussian>()) {
    if (n % 2 == 1) return Rational(0);
    const std::size_t k = n / 2;
    if (k == 0) return Rational(1);
    if (previous_even) return *previous_even * Rational(static_cast<long>(2 * k - 1));
    Rational value = 1;
    for (std::size_t j = 1; j <= k; ++j) value *= Rational(static_cast<long>(2 * j - 1));
    return value;
  }
  if (const auto* e = family.get_if<Explicit>()) {
    if (n >= e->values.size()) {
      throw MissingDataError("explicit sequence has " + std::to_string(e->values.size()) +
                             " moments; m_" + std::to_string(n) + " requested");
    }
    return e->values[n];
  }
  throw PrecisionError(family.tag() + " moments are irrational", "bigfloat:256");
}

namespace {

TrendVerdict analytic(Verdict v, std::string basis) {
  return TrendVerdict{v, false, std::move(basis), 0, 0};
}

std::string fmt(const Rational& q) { return to_string(q); }

// Least-squares slope of log m_{2k} against log(2k+1) over the upper half of the window.
std::optional<double> fit_exponent(const std::vector<double>& even, std::size_t& begin,
                                   std::size_t& end) {
  const std::size_t count = even.size();
  if (count < 4) return std::nullopt;
  begin = count / 2;
  end = count - 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t k = begin; k <= end; ++k) {
    if (!(even[k] > 0) || !std::isfinite(even[k])) return std::nullopt;
    const double x = std::log(static_cast<double>(2 * k + 1));
    const double y = std::log(even[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  const double nn = static_cast<double>(used);
  const double denom = nn * sxx - sx * sx;
  if (used < 2 || denom <= 0) return std::nullopt;
  return (nn * sxy - sx * sy) / denom;
}

Verdict band(double s, double yes_below, double no_above) {
  if (s < yes_below) return Verdict::yes;
  if (s > no_above) return Verdict::no;
  return Verdict::inconclusive;
}

}  // namespace

DecayEvidence decay_verdicts(const MomentFamily& family, int weight_order,
                             const std::vector<double>& even_moments, std::size_t window_begin,
                             std::size_t window_end, const ClassifyTolerances& tol) {
  DecayEvidence ev;
  // Weighting by (1-x^2)^r with r >= 0 only speeds up decay for measures on
  // [-1,1]; the analytic rules below are stated for the base family and are
  // applied only at weight order 0.
  if (weight_order == 0) {
    if (const auto* p = family.get_if<PowerLog>()) {
      const std::string b = "closed form m_n = (n+1)^-c, c = " + fmt(p->c);
      ev.o1 = analytic(Verdict::yes, b);
      ev.big_o = analytic(p->c >= 1 ? Verdict::yes : Verdict::no, b);
      ev.ell1 = analytic(p->c > 1 ? Verdict::yes : Verdict::no, b);
      ev.exponent = -p->c.convert_to<double>();
      return ev;
    }
    if (const auto* g = family.get_if<Gegenbauer>()) {
      const std::string b = "closed form m_2k ~ k^-(lambda+1/2), lambda = " + fmt(g->lambda);
      ev.o1 = analytic(Verdict::yes, b);
      ev.big_o = analytic(g->lambda >= Rational(1, 2) ? Verdict::yes : Verdict::no, b);
      ev.ell1 = analytic(g->lambda > Rational(1, 2) ? Verdict::yes : Verdict::no, b);
      ev.exponent = -(g->lambda + Rational(1, 2)).convert_to<double>();
      return ev;
    }
    if (const auto* d = family.get_if<Discrete>()) {
      const Rational r = d->measure.max_abs_point();
      const std::string b = "finite support, max |x| = " + fmt(r);
      const Verdict v = r < 1 ? Verdict::yes : Verdict::no;
      ev.o1 = analytic(v, b);
      ev.big_o = analytic(v, b);
      ev.ell1 = analytic(v, b);
      return ev;
    }
    if (family.get_if<LogNormal>() || family.get_if<Gaussian>()) {
      const std::string b = "closed form: even moments grow without bound";
      ev.o1 = analytic(Verdict::no, b);
      ev.big_o = analytic(Verdict::no, b);
      ev.ell1 = analytic(Verdict::no, b);
      return ev;
    }
  }

  auto heuristic = [&](Verdict v, std::string basis, std::size_t b, std::size_t e) {
    return TrendVerdict{v, true, std::move(basis), window_begin + 2 * b, std::min(window_end, window_begin + 2 * e)};
  };
  const std::size_t last = even_moments.empty() ? 0 : even_moments.size() - 1;
  const std::size_t tail_from = even_moments.size() / 2;
  const bool tail_zero =
      !even_moments.empty() &&
      std::all_of(even_moments.begin() + static_cast<std::ptrdiff_t>(tail_from),
                  even_moments.end(), [](double m) { return m == 0.0; });
  if (tail_zero) {
    const std::string b = "even moments vanish over the window";
    ev.o1 = heuristic(Verdict::yes, b, tail_from, last);
    ev.big_o = ev.o1;
    ev.ell1 = ev.o1;
    ev.exponent = -INFINITY;
    enforce_monotone(ev.o1, ev.big_o, ev.ell1);
    return ev;
  }
  std::size_t b = 0, e = 0;
  const auto s = fit_exponent(even_moments, b, e);
  if (!s) {
    const std::string basis = "window too short or even moments not positive";
    ev.o1 = heuristic(Verdict::inconclusive, basis, 0, last);
    ev.big_o = ev.o1;
    ev.ell1 = ev.o1;
    return ev;
  }
  std::ostringstream basis;
  basis << "fitted exponent " << format_double(*s) << " of m_2k ~ (2k+1)^s";
  ev.exponent = *s;
  ev.o1 = heuristic(band(*s, tol.o1_yes_below, tol.o1_no_above), basis.str(), b, e);
  ev.big_o = heuristic(band(*s, tol.big_o_yes_below, tol.big_o_no_above), basis.str(), b, e);
  ev.ell1 = heuristic(band(*s, tol.ell1_yes_below, tol.ell1_no_above), basis.str(), b, e);
  enforce_monotone(ev.o1, ev.big_o, ev.ell1);
  return ev;
}

std::optional<std::pair<double, bool>> ell1_tail(const MomentFamily& family, int weight_order,
                                                 std::size_t trace_terms, double last_even_moment,
                                                 double exponent) {
  const double kk = static_cast<double>(trace_terms);
  if (weight_order == 0) {
    if (const auto* p = family.get_if<PowerLog>()) {
      // (2x+1)^-c is convex: the sum over k >= K is below the integral from K-1/2.
      const double c = p->c.convert_to<double>();
      if (c <= 1) return std::nullopt;
      return std::pair{std::pow(2 * kk, 1 - c) / (2 * (c - 1)), true};
    }
    if (const auto* g = family.get_if<Gegenbauer>()) {
      const double lambda = g->lambda.convert_to<double>();
      if (lambda <= 0.5) return std::nullopt;
      return std::pair{last_even_moment * (1 + (kk + lambda + 1) / (lambda - 0.5)), true};
    }
    if (const auto* d = family.get_if<Discrete>()) {
      if (d->measure.max_abs_point() >= 1) return std::nullopt;
      Rational tail = 0;
      for (std::size_t i = 0; i < d->measure.size(); ++i) {
        const Rational& x = d->measure.points()[i];
        Rational p = 1;
        for (std::size_t j = 0; j < 2 * trace_terms; ++j) p *= x;
        tail += d->measure.weights()[i] * p / (1 - x * x);
      }
      return std::pair{tail.convert_to<double>(), true};
    }
  }
  if (!(exponent < -1) || !std::isfinite(exponent)) {
    if (exponent == -INFINITY) return std::pair{0.0, false};
    return std::nullopt;
  }
  return std::pair{last_even_moment * (2 * kk + 1) / (2 * (-exponent - 1)), false};
}

void enforce_monotone(TrendVerdict& o1, TrendVerdict& big_o, TrendVerdict& ell1) {
  if (ell1.verdict == Verdict::yes) big_o.verdict = Verdict::yes;
  if (big_o.verdict == Verdict::yes) o1.verdict = Verdict::yes;
  if (o1.verdict == Verdict::no) big_o.verdict = Verdict::no;
  if (big_o.verdict == Verdict::no) ell1.verdict = Verdict::no;
}

}  // namespace detail

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::inconclusive:
      break;
  }
  return "inconclusive";
}

}  // namespace hankel
