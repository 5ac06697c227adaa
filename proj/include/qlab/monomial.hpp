#pragma once

#include <string>

#include "qlab/rational.hpp"

namespace qlab {

/// c·ζ^a·q^b.
struct Monomial {
  Rational coeff = 1;
  int zeta = 0;
  long q = 0;

  static Monomial constant(const Rational& c) { return {c, 0, 0}; }
  static Monomial q_power(long b, const Rational& c = 1) { return {c, 0, b}; }
  static Monomial zeta_power(int a, long b = 0, const Rational& c = 1) { return {c, a, b}; }

  bool is_zero() const { return qlab::is_zero(coeff); }

  Monomial pow(long n) const;
  Monomial inverse() const;
  Monomial operator-() const { return {-coeff, zeta, q}; }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    return {x.coeff * y.coeff, x.zeta + y.zeta, x.q + y.q};
  }
  friend Monomial operator/(const Monomial& x, const Monomial& y) { return x * y.inverse(); }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.coeff == y.coeff && x.zeta == y.zeta && x.q == y.q;
  }

  std::string to_string() const;
};

/// ζ ↦ c·ζ^e·q^j, applied term-wise before any truncation.
struct ZetaSubstitution {
  Rational coeff = 1;
  int zeta = 1;
  long q = 0;

  static ZetaSubstitution identity() { return {}; }
  /// ζ ↦ ±q^j (eliminates ζ).
  static ZetaSubstitution to_q_power(long j, int sign = 1) { return {Rational(sign), 0, j}; }

  bool is_identity() const { return coeff == 1 && zeta == 1 && q == 0; }
  bool eliminates_zeta() const { return zeta == 0; }

  Monomial apply(const Monomial& m) const;
  std::string to_string() const;
};

/// Parses the specializations accepted on the command line: "1", "-1", "q",
/// "-q", "q^j", "-q^j" (j may be negative). Throws std::invalid_argument.
ZetaSubstitution parse_zeta_spec(const std::string& spec);

}  // namespace qlab
