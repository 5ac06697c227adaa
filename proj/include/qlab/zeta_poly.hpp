#pragma once

#include <map>
#include <string>
#include <vector>

#include "qlab/rational.hpp"

namespace qlab {

/// Finite Laurent polynomial in ζ with exact rational coefficients.
///
/// Stored densely from the lowest to the highest nonzero exponent; both ends
/// are always nonzero, so the zero polynomial is the empty vector and equality
/// is structural.
class ZetaPoly {
 public:
  ZetaPoly() = default;
  ZetaPoly(const Rational& c) : ZetaPoly(c, 0) {}  // NOLINT: implicit scalar embedding
  ZetaPoly(long c) : ZetaPoly(Rational(c), 0) {}   // NOLINT
  ZetaPoly(const Rational& c, int exponent);

  static ZetaPoly monomial(const Rational& c, int exponent) { return {c, exponent}; }
  static ZetaPoly from_map(const std::map<int, Rational>& terms);

  bool is_zero() const { return coeffs_.empty(); }
  /// Units of Q[ζ, ζ⁻¹] are exactly the nonzero monomials.
  bool is_unit() const { return coeffs_.size() == 1; }
  ZetaPoly inverse() const;

  int min_exponent() const { return low_; }
  int max_exponent() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t term_count() const;
  Rational coefficient(int exponent) const;
  std::map<int, Rational> terms() const;

  /// Sum of coefficients (ζ = 1).
  Rational at_one() const;
  /// ζ ↦ ζ⁻¹.
  ZetaPoly reflected() const;

  ZetaPoly& operator+=(const ZetaPoly& o);
  ZetaPoly& operator-=(const ZetaPoly& o);
  ZetaPoly& operator*=(const Rational& s);
  ZetaPoly operator-() const;
  /// Multiplies by c·ζ^e in place.
  ZetaPoly& shift(const Rational& c, int e);

  friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { return a += b; }
  friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { return a -= b; }
  friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b);
  friend ZetaPoly operator*(ZetaPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const ZetaPoly& a, const ZetaPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  void fit(int lo, int hi);

  int low_ = 0;
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const ZetaPoly& p) { return p.is_zero(); }
inline std::string to_string(const ZetaPoly& p) { return p.to_string(); }

}  // namespace qlab
