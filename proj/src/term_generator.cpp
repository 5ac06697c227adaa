#include "qlab/term_generator.hpp"

#include <algorithm>
#include <sstream>

namespace qlab {
namespace {

template <class C>
C embed(const Rational& c, int zeta);

template <>
Rational embed<Rational>(const Rational& c, int zeta) {
  if (zeta != 0) {
    throw SeriesError("a power of zeta survives the substitution; evaluate as a bivariate series");
  }
  return c;
}

template <>
ZetaPoly embed<ZetaPoly>(const Rational& c, int zeta) {
  return ZetaPoly::monomial(c, zeta);
}

template <class C>
C unit_inverse(const C& c) {
  if (is_zero(c)) throw ValuationViolation("vanishing denominator factor (pole)");
  if (!coeff_is_unit(c)) {
    throw NonUnitLeadingCoefficient("denominator factor " + to_string(c) +
                                    " is not invertible over the coefficient ring");
  }
  return coeff_inverse(c);
}

// Number of factors of a product; nullopt for an infinite product.
std::optional<long> factor_count(const Pochhammer& p) {
  if (p.step < 1) throw std::invalid_argument("pochhammer step must be positive");
  if (p.length && *p.length < 0) throw std::invalid_argument("pochhammer length must be >= 0");
  return p.length;
}

struct Scan {
  bool zero = false;
  long valuation = 0;
};

// Valuation bookkeeping over the factors with exponent ≤ 0, which are the
// only ones that shift the valuation or contribute constants.
Scan scan(const Term& t, const ZetaSubstitution& sub) {
  Scan s;
  Monomial pre = sub.apply(t.prefactor);
  if (pre.is_zero()) {
    s.zero = true;
    return s;
  }
  s.valuation = pre.q;
  auto visit = [&](const Pochhammer& p, bool denominator) {
    auto len = factor_count(p);
    Monomial b = sub.apply(p.base);
    if (b.is_zero() || (len && *len == 0)) return;
    if (!len && b.q < 1) {
      throw DivergentProduct("infinite product (" + b.to_string() + "; q^" +
                             std::to_string(p.step) + ")_inf does not converge");
    }
    for (long i = 0; !len || i < *len; ++i) {
      long e = b.q + i * p.step;
      if (e > 0) break;
      if (e < 0) {
        s.valuation += denominator ? -e : e;
      } else if (b.zeta == 0 && b.coeff == 1) {
        if (denominator) throw ValuationViolation("vanishing denominator factor (pole)");
        s.zero = true;
      }
    }
  };
  for (const auto& p : t.numerators) visit(p, false);
  for (const auto& p : t.denominators) visit(p, true);
  return s;
}

}  // namespace

long negative_exponent_sum(long start, long step, std::optional<long> length) {
  long s = 0;
  for (long i = 0; (!length || i < *length); ++i) {
    long e = start + i * step;
    if (e >= 0) break;
    s += e;
  }
  return s;
}

std::optional<long> term_valuation(const Term& t, const ZetaSubstitution& sub) {
  Scan s = scan(t, sub);
  if (s.zero) return std::nullopt;
  return s.valuation;
}

template <class C>
Series<C> evaluate_term(const Term& t, long order, const ZetaSubstitution& sub) {
  Scan s = scan(t, sub);
  if (s.zero || s.valuation > order) return Series<C>::zero(order);
  const long precision = order - s.valuation;

  Monomial pre = sub.apply(t.prefactor);
  C constant = embed<C>(pre.coeff, pre.zeta);
  Series<C> body({C(1)}, 0, precision);

  auto apply = [&](const Pochhammer& p, bool denominator) {
    auto len = factor_count(p);
    Monomial b = sub.apply(p.base);
    if (b.is_zero() || (len && *len == 0)) return;
    C c = embed<C>(b.coeff, b.zeta);
    for (long i = 0; !len || i < *len; ++i) {
      long e = b.q + i * p.step;
      if (e > precision) break;
      if (e > 0) {
        if (denominator) body.div_binomial(c, e);
        else body.mul_binomial(c, e);
      } else if (e == 0) {
        C k = C(1) - c;
        constant = constant * (denominator ? unit_inverse(k) : k);
      } else {
        // 1 − c·q^e = −c·q^e · (1 − c⁻¹·q^{−e})
        C lead = -c;
        constant = constant * (denominator ? unit_inverse(lead) : lead);
        C cinv = unit_inverse(c);
        if (-e <= precision) {
          if (denominator) body.div_binomial(cinv, -e);
          else body.mul_binomial(cinv, -e);
        }
      }
    }
  };
  for (const auto& p : t.numerators) apply(p, false);
  for (const auto& p : t.denominators) apply(p, true);
  body.shift(constant, s.valuation);
  return body;
}

template <class C>
Series<C> sum_terms(const TermGenerator& gen, long order, const ZetaSubstitution& sub) {
  Series<C> acc = Series<C>::zero(order);
  if (gen.empty_range()) return acc;
  if (!gen.has_zeta && !sub.is_identity()) {
    throw std::invalid_argument(gen.name + " has no zeta variable to specialize");
  }
  const long j = sub.q;
  const long n0 = gen.monotone_from(j);
  std::optional<long> previous;
  long stalled = 0;
  for (long n = gen.first; !gen.last || n <= *gen.last; ++n) {
    const long b = gen.bound(n, j);
    if (n >= n0) {
      if (previous && b < *previous) {
        std::ostringstream os;
        os << gen.name << ": declared valuation bound decreases at n=" << n << " (" << *previous
           << " -> " << b << ") under " << sub.to_string();
        throw ValuationViolation(os.str());
      }
      if (b > order) break;
      if (previous && b == *previous) {
        if (++stalled > 64 + 4 * std::max(0L, order - b)) {
          throw ValuationViolation(gen.name + ": declared valuation bound does not tend to "
                                   "infinity under " + sub.to_string());
        }
      } else {
        stalled = 0;
      }
      previous = b;
    }
    for (const Term& t : gen.terms(n)) {
      auto v = term_valuation(t, sub);
      if (!v) continue;
      if (*v < b) {
        std::ostringstream os;
        os << gen.name << ": term at n=" << n << " has valuation " << *v
           << " below the declared bound " << b << " under " << sub.to_string();
        throw ValuationViolation(os.str());
      }
      if (*v > order) continue;
      acc += evaluate_term<C>(t, order, sub);
    }
  }
  return acc;
}

LaurentSeries specialize_zeta(const TermGenerator& gen, const ZetaSubstitution& zeta_value,
                              long order) {
  if (!zeta_value.eliminates_zeta()) {
    throw std::invalid_argument("specialize_zeta expects zeta -> +-q^j");
  }
  return sum_terms<Rational>(gen, order, zeta_value);
}

template <class C>
Series<C> pochhammer(const Monomial& base, long step, std::optional<long> length, long order) {
  Term t;
  t.num({base, step, length});
  return evaluate_term<C>(t, order);
}

template <class C>
Series<C> monomial_series(const Monomial& m, const ZetaSubstitution& sub) {
  Monomial x = sub.apply(m);
  if (x.is_zero()) return Series<C>::zero();
  return Series<C>::monomial(embed<C>(x.coeff, x.zeta), x.q);
}

long shape_valuation(const Term& t, long j) {
  auto q_exp = [j](const Monomial& m) { return m.q + static_cast<long>(m.zeta) * j; };
  long v = q_exp(t.prefactor);
  for (const auto& p : t.numerators) {
    if (!p.base.is_zero()) v += negative_exponent_sum(q_exp(p.base), p.step, p.length);
  }
  for (const auto& p : t.denominators) {
    if (!p.base.is_zero()) v -= negative_exponent_sum(q_exp(p.base), p.step, p.length);
  }
  return v;
}

std::function<long(long)> convex_stable_from(std::function<long(long, long)> bound, long first) {
  return [bound = std::move(bound), first](long j) {
    constexpr long kScan = 4096;
    long n = first;
    while (bound(n + 1, j) < bound(n, j)) {
      if (++n >= first + kScan) {
        throw ValuationViolation("declared valuation bound still decreasing after " +
                                 std::to_string(kScan) + " terms (ζ ↦ ·q^" +
                                 std::to_string(j) + ")");
      }
    }
    return n;
  };
}

TermGenerator shaped(std::string name, long first, std::function<std::vector<Term>(long)> terms,
                     bool has_zeta, std::optional<long> last) {
  TermGenerator g;
  g.name = std::move(name);
  g.first = first;
  g.last = last;
  g.terms = terms;
  g.has_zeta = has_zeta;
  g.bound = [terms](long n, long j) {
    auto ts = terms(n);
    if (ts.empty()) return kExact;
    long b = kExact;
    for (const auto& t : ts) b = std::min(b, shape_valuation(t, j));
    return b;
  };
  g.stable_from_for = convex_stable_from(g.bound, first);
  return g;
}

template Series<Rational> monomial_series<Rational>(const Monomial&, const ZetaSubstitution&);
template Series<ZetaPoly> monomial_series<ZetaPoly>(const Monomial&, const ZetaSubstitution&);
template Series<Rational> evaluate_term<Rational>(const Term&, long, const ZetaSubstitution&);
template Series<ZetaPoly> evaluate_term<ZetaPoly>(const Term&, long, const ZetaSubstitution&);
template Series<Rational> sum_terms<Rational>(const TermGenerator&, long,
                                              const ZetaSubstitution&);
template Series<ZetaPoly> sum_terms<ZetaPoly>(const TermGenerator&, long,
                                              const ZetaSubstitution&);
template Series<Rational> pochhammer<Rational>(const Monomial&, long, std::optional<long>, long);
template Series<ZetaPoly> pochhammer<ZetaPoly>(const Monomial&, long, std::optional<long>, long);

}  // namespace qlab
