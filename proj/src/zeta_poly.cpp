#include "qlab/zeta_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qlab {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  r.canonicalize();
  return r;
}

ZetaPoly::ZetaPoly(const Rational& c, int exponent) {
  if (!qlab::is_zero(c)) {
    low_ = exponent;
    coeffs_.push_back(c);
  }
}

ZetaPoly ZetaPoly::from_map(const std::map<int, Rational>& terms) {
  ZetaPoly p;
  for (const auto& [e, c] : terms) p += ZetaPoly(c, e);
  return p;
}

void ZetaPoly::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](const Rational& c) { return !qlab::is_zero(c); });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  low_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
  while (qlab::is_zero(coeffs_.back())) coeffs_.pop_back();
}

// Grows storage so that exponents lo..hi are addressable.
void ZetaPoly::fit(int lo, int hi) {
  if (coeffs_.empty()) {
    low_ = lo;
    coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    return;
  }
  if (lo < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), Rational(0));
    low_ = lo;
  }
  if (hi > max_exponent()) coeffs_.resize(static_cast<std::size_t>(hi - low_ + 1), Rational(0));
}

ZetaPoly ZetaPoly::inverse() const {
  if (!is_unit()) throw std::domain_error("ZetaPoly::inverse: not a monomial");
  return {Rational(1) / coeffs_.front(), -low_};
}

std::size_t ZetaPoly::term_count() const {
  return static_cast<std::size_t>(std::count_if(
      coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return !qlab::is_zero(c); }));
}

Rational ZetaPoly::coefficient(int exponent) const {
  if (coeffs_.empty() || exponent < low_ || exponent > max_exponent()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

std::map<int, Rational> ZetaPoly::terms() const {
  std::map<int, Rational> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!qlab::is_zero(coeffs_[i])) out.emplace(low_ + static_cast<int>(i), coeffs_[i]);
  }
  return out;
}

Rational ZetaPoly::at_one() const {
  Rational s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

ZetaPoly ZetaPoly::reflected() const {
  ZetaPoly r;
  if (coeffs_.empty()) return r;
  r.low_ = -max_exponent();
  r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
  return r;
}

ZetaPoly& ZetaPoly::operator+=(const ZetaPoly& o) {
  if (o.coeffs_.empty()) return *this;
  fit(o.low_, o.max_exponent());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    coeffs_[static_cast<std::size_t>(o.low_ - low_) + i] += o.coeffs_[i];
  }
  trim();
  return *this;
}

ZetaPoly& ZetaPoly::operator-=(const ZetaPoly& o) {
  if (o.coeffs_.empty()) return *this;
  fit(o.low_, o.max_exponent());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    coeffs_[static_cast<std::size_t>(o.low_ - low_) + i] -= o.coeffs_[i];
  }
  trim();
  return *this;
}

ZetaPoly& ZetaPoly::operator*=(const Rational& s) {
  if (qlab::is_zero(s)) {
    coeffs_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

ZetaPoly ZetaPoly::operator-() const {
  ZetaPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

ZetaPoly& ZetaPoly::shift(const Rational& c, int e) {
  if (coeffs_.empty()) return *this;
  *this *= c;
  if (!coeffs_.empty()) low_ += e;
  return *this;
}

ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b) {
  ZetaPoly r;
  if (a.coeffs_.empty() || b.coeffs_.empty()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (qlab::is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

std::string ZetaPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (qlab::is_zero(c)) continue;
    int e = low_ + static_cast<int>(i);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rational a = abs(c);
    if (e == 0 || a != 1) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "z";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

}  // namespace qlab
