#include "qlab/monomial.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

namespace qlab {

Monomial Monomial::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Rational c = 1;
  for (long i = 0; i < n; ++i) c *= coeff;
  return {c, static_cast<int>(zeta * n), q * n};
}

Monomial Monomial::inverse() const {
  if (is_zero()) throw std::domain_error("Monomial::inverse of zero");
  return {Rational(1) / coeff, -zeta, -q};
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  os << coeff.get_str();
  if (zeta != 0) os << "*z^" << zeta;
  if (q != 0) os << "*q^" << q;
  return os.str();
}

Monomial ZetaSubstitution::apply(const Monomial& m) const {
  if (m.zeta == 0) return m;
  Monomial image{coeff, zeta, q};
  Monomial r = image.pow(m.zeta);
  return {m.coeff * r.coeff, r.zeta, m.q + r.q};
}

std::string ZetaSubstitution::to_string() const {
  std::ostringstream os;
  os << "z -> " << Monomial{coeff, zeta, q}.to_string();
  return os.str();
}

ZetaSubstitution parse_zeta_spec(const std::string& spec) {
  static const std::regex unit(R"(^([+-]?)1$)");
  static const std::regex power(R"(^([+-]?)q(\^(-?\d+))?$)");
  std::smatch m;
  if (std::regex_match(spec, m, unit)) {
    return ZetaSubstitution::to_q_power(0, m[1] == "-" ? -1 : 1);
  }
  if (std::regex_match(spec, m, power)) {
    long j = m[3].matched ? std::stol(m[3].str()) : 1;
    return ZetaSubstitution::to_q_power(j, m[1] == "-" ? -1 : 1);
  }
  throw std::invalid_argument("unsupported zeta specialization '" + spec +
                              "' (expected 1, -1, q^j or -q^j)");
}

}  // namespace qlab
