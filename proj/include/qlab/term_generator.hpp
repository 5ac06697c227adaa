#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/monomial.hpp"
#include "qlab/series.hpp"

namespace qlab {

/// A generated term fell below its declared valuation bound, a denominator
/// factor vanished, or the declared bound never exceeds the requested order.
struct ValuationViolation : SeriesError {
  using SeriesError::SeriesError;
};

/// An infinite product whose factors do not tend to 1 q-adically.
struct DivergentProduct : SeriesError {
  using SeriesError::SeriesError;
};

/// (base; q^step)_length = ∏_{i<length} (1 − base·q^{i·step}); length nullopt means ∞.
struct Pochhammer {
  Monomial base;
  long step = 1;
  std::optional<long> length;

  static Pochhammer finite(const Monomial& base, long step, long length) {
    return {base, step, length};
  }
  static Pochhammer infinite(const Monomial& base, long step) { return {base, step, std::nullopt}; }
};

/// prefactor · ∏ numerators / ∏ denominators.
struct Term {
  Monomial prefactor;
  std::vector<Pochhammer> numerators;
  std::vector<Pochhammer> denominators;

  Term& num(const Pochhammer& p) {
    numerators.push_back(p);
    return *this;
  }
  Term& den(const Pochhammer& p) {
    denominators.push_back(p);
    return *this;
  }
};

/// Exact valuation of a term after substitution, or nullopt if the term is
/// identically zero. Throws ValuationViolation on a vanishing denominator
/// factor and DivergentProduct on an infinite product with base exponent ≤ 0.
std::optional<long> term_valuation(const Term& t, const ZetaSubstitution& sub = {});

/// Expansion of one term to absolute order `order`.
template <class C>
Series<C> evaluate_term(const Term& t, long order, const ZetaSubstitution& sub = {});

/// Declarative description of Σ_{n=first}^{last} terms(n).
///
/// `bound(n, j)` is the declared lower bound for the q-valuation of every term
/// at index n when ζ ↦ (·)ζ^e q^j; it must be nondecreasing for n ≥ n₀ and tend
/// to infinity. n₀ is `stable_from_for(j)` when set, `stable_from` otherwise.
struct TermGenerator {
  std::string name;
  long first = 0;
  std::optional<long> last;
  std::function<std::vector<Term>(long)> terms;
  std::function<long(long n, long j)> bound;
  long stable_from = 0;
  std::function<long(long j)> stable_from_for;
  bool has_zeta = false;

  bool empty_range() const { return last && *last < first; }
  long monotone_from(long j) const { return stable_from_for ? stable_from_for(j) : stable_from; }
};

/// Sum of all terms, exact through `order`.
template <class C>
Series<C> sum_terms(const TermGenerator& gen, long order, const ZetaSubstitution& sub = {});

/// c·ζ^a·q^b under the substitution, as an exact series.
template <class C>
Series<C> monomial_series(const Monomial& m, const ZetaSubstitution& sub = {});

/// Lower bound for the valuation of t under ζ ↦ (·)ζ^e q^j, read off the
/// exponents alone (exact unless some constant factor vanishes).
long shape_valuation(const Term& t, long j);

/// First index from which a bound with nondecreasing increments stops decreasing.
std::function<long(long)> convex_stable_from(std::function<long(long, long)> bound, long first);

/// Generator whose declared bound is the shape valuation of its terms.
TermGenerator shaped(std::string name, long first, std::function<std::vector<Term>(long)> terms,
                     bool has_zeta = false, std::optional<long> last = std::nullopt);

/// Term-wise substitution ζ ↦ ±q^j followed by summation.
LaurentSeries specialize_zeta(const TermGenerator& gen, const ZetaSubstitution& zeta_value,
                              long order);

/// Finite or infinite q-Pochhammer product as a series.
template <class C>
Series<C> pochhammer(const Monomial& base, long step, std::optional<long> length, long order);

/// Σ_{i≥0} min(0, start + i·step): the valuation lost to negative-exponent
/// factors of a product whose exponents are start, start+step, ...
long negative_exponent_sum(long start, long step, std::optional<long> length = std::nullopt);

extern template Series<Rational> evaluate_term<Rational>(const Term&, long,
                                                         const ZetaSubstitution&);
extern template Series<ZetaPoly> evaluate_term<ZetaPoly>(const Term&, long,
                                                         const ZetaSubstitution&);
extern template Series<Rational> sum_terms<Rational>(const TermGenerator&, long,
                                                     const ZetaSubstitution&);
extern template Series<ZetaPoly> sum_terms<ZetaPoly>(const TermGenerator&, long,
                                                     const ZetaSubstitution&);
extern template Series<Rational> monomial_series<Rational>(const Monomial&,
                                                          const ZetaSubstitution&);
extern template Series<ZetaPoly> monomial_series<ZetaPoly>(const Monomial&,
                                                          const ZetaSubstitution&);
extern template Series<Rational> pochhammer<Rational>(const Monomial&, long, std::optional<long>,
                                                      long);
extern template Series<ZetaPoly> pochhammer<ZetaPoly>(const Monomial&, long, std::optional<long>,
                                                      long);

}  // namespace qlab
