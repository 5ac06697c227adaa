#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qlab/rational.hpp"
#include "qlab/zeta_poly.hpp"

namespace qlab {

/// Order of an exact (finite, fully known) series. Arithmetic on orders
/// saturates at this value.
inline constexpr long kExact = std::numeric_limits<long>::max() / 4;

inline long sat_add(long a, long b) {
  if (a >= kExact || b >= kExact) return kExact;
  long s = a + b;
  return s > kExact ? kExact : s;
}
inline long sat_mul(long a, long m) { return a >= kExact ? kExact : std::min(a * m, kExact); }

struct SeriesError : std::domain_error {
  using std::domain_error::domain_error;
};
/// Inversion of a series that is zero up to its order.
struct ZeroLeadingCoefficient : SeriesError {
  using SeriesError::SeriesError;
};
/// Inversion of a bivariate series whose leading ζ-polynomial is not a monomial.
struct NonUnitLeadingCoefficient : SeriesError {
  using SeriesError::SeriesError;
};

inline bool coeff_is_unit(const Rational& c) { return !is_zero(c); }
inline Rational coeff_inverse(const Rational& c) { return Rational(1) / c; }
inline bool coeff_is_unit(const ZetaPoly& c) { return c.is_unit(); }
inline ZetaPoly coeff_inverse(const ZetaPoly& c) { return c.inverse(); }

/// Truncated formal Laurent series Σ c_n qⁿ with coefficients in C.
///
/// Coefficients with exponent above order() are unknown. A series with
/// order() == kExact is a Laurent polynomial known exactly. Storage is trimmed
/// at both ends so that equality is structural.
template <class C>
class Series {
 public:
  using Coeff = C;

  /// Exact zero.
  Series() = default;

  Series(std::vector<C> coeffs, long valuation, long order = kExact)
      : valuation_(valuation), order_(order), coeffs_(std::move(coeffs)) {
    normalize();
  }

  static Series exact(std::vector<C> coeffs, long valuation = 0) {
    return Series(std::move(coeffs), valuation, kExact);
  }
  static Series monomial(const C& c, long exponent) { return Series({c}, exponent, kExact); }
  static Series one() { return monomial(C(1), 0); }
  static Series zero(long order = kExact) { return Series({}, 0, order); }
  static Series from_map(const std::map<long, C>& terms, long order = kExact) {
    if (terms.empty()) return zero(order);
    long lo = terms.begin()->first;
    long hi = terms.rbegin()->first;
    std::vector<C> v(static_cast<std::size_t>(hi - lo + 1), C(0));
    for (const auto& [e, c] : terms) v[static_cast<std::size_t>(e - lo)] = c;
    return Series(std::move(v), lo, order);
  }

  long order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest exponent with a nonzero coefficient; order()+1 for a series that
  /// is zero up to its order.
  long valuation() const { return coeffs_.empty() ? sat_add(order_, 1) : valuation_; }
  /// Highest exponent with a stored nonzero coefficient.
  long last_exponent() const { return valuation_ + static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<C>& stored() const { return coeffs_; }

  const C& leading_coefficient() const {
    if (coeffs_.empty()) throw ZeroLeadingCoefficient("series is zero up to its order");
    return coeffs_.front();
  }

  /// Coefficient of qⁿ. Throws std::out_of_range above the certified order.
  C coefficient(long n) const {
    if (n > order_) {
      throw std::out_of_range("coefficient of q^" + std::to_string(n) +
                              " is beyond the certified order " + std::to_string(order_));
    }
    if (coeffs_.empty() || n < valuation_ || n > last_exponent()) return C(0);
    return coeffs_[static_cast<std::size_t>(n - valuation_)];
  }
  C operator[](long n) const { return coefficient(n); }

  /// Dense copy of the coefficients for exponents lo..hi (hi ≤ order()).
  std::vector<C> dense(long lo, long hi) const {
    if (hi < lo) return {};
    if (hi > order_) {
      throw std::out_of_range("dense: exponent " + std::to_string(hi) + " beyond order " +
                              std::to_string(order_));
    }
    std::vector<C> out(static_cast<std::size_t>(hi - lo + 1), C(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      long e = valuation_ + static_cast<long>(i);
      if (e >= lo && e <= hi) out[static_cast<std::size_t>(e - lo)] = coeffs_[i];
    }
    return out;
  }

  /// Forgets coefficients above n.
  Series truncated(long n) const {
    Series r = *this;
    r.order_ = std::min(order_, n);
    r.normalize();
    return r;
  }

  Series& operator+=(const Series& o) { return accumulate(o, false); }
  Series& operator-=(const Series& o) { return accumulate(o, true); }

  Series operator-() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  template <class S>
  Series& scale(const S& s) {
    for (auto& c : coeffs_) c = c * s;
    normalize();
    return *this;
  }

  /// In-place multiplication by c·q^e.
  Series& shift(const C& c, long e) {
    for (auto& x : coeffs_) x = x * c;
    valuation_ += e;
    order_ = sat_add(order_, e);
    normalize();
    return *this;
  }

  /// In-place multiplication by (1 − c·q^k), k ≥ 1.
  Series& mul_binomial(const C& c, long k) {
    if (k < 1) throw std::invalid_argument("mul_binomial: step must be positive");
    if (coeffs_.empty() || qlab::is_zero(c)) return *this;
    long hi = is_exact() ? last_exponent() + k : order_;
    std::vector<C> d = dense(valuation_, hi);
    for (std::size_t i = d.size(); i-- > static_cast<std::size_t>(k);) {
      if (qlab::is_zero(d[i - static_cast<std::size_t>(k)])) continue;
      d[i] -= c * d[i - static_cast<std::size_t>(k)];
    }
    coeffs_ = std::move(d);
    normalize();
    return *this;
  }

  /// In-place division by (1 − c·q^k), k ≥ 1. Requires a finite order.
  Series& div_binomial(const C& c, long k) {
    if (k < 1) throw std::invalid_argument("div_binomial: step must be positive");
    if (is_exact()) throw SeriesError("div_binomial on an exact series needs an order");
    if (coeffs_.empty() || qlab::is_zero(c)) return *this;
    std::vector<C> d = dense(valuation_, order_);
    for (std::size_t i = static_cast<std::size_t>(k); i < d.size(); ++i) {
      if (qlab::is_zero(d[i - static_cast<std::size_t>(k)])) continue;
      d[i] += c * d[i - static_cast<std::size_t>(k)];
    }
    coeffs_ = std::move(d);
    normalize();
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend bool operator==(const Series& a, const Series& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_ &&
           (a.coeffs_.empty() || a.valuation_ == b.valuation_);
  }

 private:
  Series& accumulate(const Series& o, bool subtract) {
    long ord = std::min(order_, o.order_);
    if (o.coeffs_.empty()) {
      order_ = ord;
      normalize();
      return *this;
    }
    long lo = coeffs_.empty() ? o.valuation_ : std::min(valuation_, o.valuation_);
    long hi = coeffs_.empty() ? o.last_exponent() : std::max(last_exponent(), o.last_exponent());
    hi = std::min(hi, ord);
    if (hi < lo) {
      coeffs_.clear();
      order_ = ord;
      return *this;
    }
    std::vector<C> d(static_cast<std::size_t>(hi - lo + 1), C(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      long e = valuation_ + static_cast<long>(i);
      if (e <= hi) d[static_cast<std::size_t>(e - lo)] = coeffs_[i];
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
      long e = o.valuation_ + static_cast<long>(i);
      if (e > hi) break;
      if (subtract) d[static_cast<std::size_t>(e - lo)] -= o.coeffs_[i];
      else d[static_cast<std::size_t>(e - lo)] += o.coeffs_[i];
    }
    coeffs_ = std::move(d);
    valuation_ = lo;
    order_ = ord;
    normalize();
    return *this;
  }

  void normalize() {
    if (!coeffs_.empty() && last_exponent() > order_) {
      long keep = order_ - valuation_ + 1;
      coeffs_.resize(keep > 0 ? static_cast<std::size_t>(keep) : 0, C(0));
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && qlab::is_zero(coeffs_[lead])) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = 0;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      valuation_ += static_cast<long>(lead);
    }
    while (qlab::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  long valuation_ = 0;
  long order_ = kExact;
  std::vector<C> coeffs_;
};

using LaurentSeries = Series<Rational>;
using BivariateSeries = Series<ZetaPoly>;

/// Cauchy product. The result's order is the largest exponent certified by
/// both inputs: min(a.order + b.valuation, b.order + a.valuation).
template <class C>
Series<C> operator*(const Series<C>& a, const Series<C>& b) {
  long ord = std::min(sat_add(a.order(), b.valuation()), sat_add(b.order(), a.valuation()));
  if (a.is_zero() || b.is_zero()) return Series<C>::zero(ord);
  long v = a.valuation() + b.valuation();
  long hi = std::min(ord, a.last_exponent() + b.last_exponent());
  if (hi < v) return Series<C>::zero(ord);
  const auto& x = a.stored();
  const auto& y = b.stored();
  std::vector<C> out(static_cast<std::size_t>(hi - v + 1), C(0));
  for (std::size_t i = 0; i < x.size() && static_cast<long>(i) <= hi - v; ++i) {
    if (is_zero(x[i])) continue;
    std::size_t jmax = std::min(y.size(), static_cast<std::size_t>(hi - v) - i + 1);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (is_zero(y[j])) continue;
      out[i + j] += x[i] * y[j];
    }
  }
  return Series<C>(std::move(out), v, ord);
}

template <class C>
Series<C>& operator*=(Series<C>& a, const Series<C>& b) {
  a = a * b;
  return a;
}

/// Scalar multiple.
template <class C>
Series<C> operator*(Series<C> a, const Rational& s) {
  return a.scale(s);
}
template <class C>
Series<C> operator*(const Rational& s, Series<C> a) {
  return a.scale(s);
}

/// Multiplicative inverse. The result keeps the input's relative precision
/// (order − valuation); an exact input needs an explicit max_order.
template <class C>
Series<C> inverse(const Series<C>& a, std::optional<long> max_order = std::nullopt) {
  if (a.is_zero()) throw ZeroLeadingCoefficient("inverse: series is zero up to its order");
  const C& lead = a.leading_coefficient();
  if (!coeff_is_unit(lead)) {
    throw NonUnitLeadingCoefficient("inverse: leading coefficient " + to_string(lead) +
                                    " is not a unit");
  }
  long v = a.valuation();
  long ord = a.is_exact() ? kExact : a.order() - 2 * v;
  if (max_order) ord = std::min(ord, *max_order);
  if (ord >= kExact) throw SeriesError("inverse of an exact series needs max_order");
  if (ord < -v) return Series<C>::zero(ord);
  std::size_t n = static_cast<std::size_t>(ord + v + 1);
  C inv0 = coeff_inverse(lead);
  const auto& x = a.stored();
  std::vector<C> out(n, C(0));
  out[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    C acc(0);
    std::size_t imax = std::min(k, x.size() - 1);
    for (std::size_t i = 1; i <= imax; ++i) {
      if (is_zero(x[i]) || is_zero(out[k - i])) continue;
      acc += x[i] * out[k - i];
    }
    out[k] = -(acc * inv0);
  }
  return Series<C>(std::move(out), -v, ord);
}

/// a / b. If both are exact, max_order must be given.
template <class C>
Series<C> divide(const Series<C>& a, const Series<C>& b,
                 std::optional<long> max_order = std::nullopt) {
  std::optional<long> cap = max_order;
  if (!cap && !a.is_exact() && !b.is_zero()) {
    cap = sat_add(a.order() - a.valuation(), -b.valuation());
  }
  auto r = a * inverse(b, cap);
  return max_order ? r.truncated(*max_order) : r;
}

/// q ↦ q^m for m ≥ 1.
template <class C>
Series<C> substitute_q_power(const Series<C>& a, long m) {
  if (m < 1) throw std::invalid_argument("substitute_q_power: m must be positive");
  long ord = sat_mul(a.order(), m);
  if (a.order() < 0 && a.order() < kExact) ord = a.order() * m;
  if (a.is_zero()) return Series<C>::zero(ord);
  const auto& x = a.stored();
  std::vector<C> out((x.size() - 1) * static_cast<std::size_t>(m) + 1, C(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[i * static_cast<std::size_t>(m)] = x[i];
  return Series<C>(std::move(out), a.valuation() * m, ord);
}

/// q ↦ c·q (e.g. c = −1 for q ↦ −q).
template <class C>
Series<C> scale_q(const Series<C>& a, const Rational& c) {
  if (a.is_zero()) return a;
  std::vector<C> out = a.stored();
  long v = a.valuation();
  Rational p = 1;
  if (v >= 0) {
    for (long i = 0; i < v; ++i) p *= c;
  } else {
    for (long i = 0; i < -v; ++i) p /= c;
  }
  for (auto& x : out) {
    x = x * p;
    p *= c;
  }
  return Series<C>(std::move(out), v, a.order());
}

/// Embeds a one-variable series as a ζ-free bivariate series.
inline BivariateSeries lift(const LaurentSeries& a) {
  std::vector<ZetaPoly> out;
  out.reserve(a.stored().size());
  for (const auto& c : a.stored()) out.emplace_back(c);
  return {std::move(out), a.valuation(), a.order()};
}

/// ζ ↦ 1 applied coefficientwise.
inline LaurentSeries collapse_zeta(const BivariateSeries& a) {
  std::vector<Rational> out;
  out.reserve(a.stored().size());
  for (const auto& c : a.stored()) out.push_back(c.at_one());
  return {std::move(out), a.valuation(), a.order()};
}

/// ζ ↦ ζ⁻¹ applied coefficientwise.
inline BivariateSeries reflect_zeta(const BivariateSeries& a) {
  std::vector<ZetaPoly> out;
  out.reserve(a.stored().size());
  for (const auto& c : a.stored()) out.push_back(c.reflected());
  return {std::move(out), a.valuation(), a.order()};
}

/// First exponent (≤ both orders) where a and b differ.
template <class C>
std::optional<long> first_mismatch(const Series<C>& a, const Series<C>& b) {
  long ord = std::min(a.order(), b.order());
  long lo = std::min(a.valuation(), b.valuation());
  for (long n = lo; n <= ord; ++n) {
    if (n > a.last_exponent() && n > b.last_exponent() && n >= a.valuation() &&
        n >= b.valuation()) {
      break;
    }
    if (!(a.coefficient(n) == b.coefficient(n))) return n;
  }
  return std::nullopt;
}

/// Equality up to the smaller certified order.
template <class C>
bool equal_up_to_order(const Series<C>& a, const Series<C>& b) {
  return !first_mismatch(a, b).has_value();
}

}  // namespace qlab
