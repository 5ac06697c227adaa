#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/series.hpp"
#include "qlab/term_generator.hpp"

namespace qlab {

// Shorthand for writing terms.
inline Monomial qpow(long b, const Rational& c = 1) { return {c, 0, b}; }
inline Monomial zq(int a, long b, const Rational& c = 1) { return {c, a, b}; }
inline Pochhammer poch(const Monomial& base, long step, long length) {
  return Pochhammer::finite(base, step, length);
}
inline Pochhammer poch_inf(const Monomial& base, long step) {
  return Pochhammer::infinite(base, step);
}

/// Generators for every named series, each built from its defining sum or
/// product (never from an identity that relates it to another series).
namespace gen {

TermGenerator partitions();              // 1/(q)_∞
TermGenerator overpartitions();          // (−q)_∞/(q)_∞
TermGenerator theta_neg_q();             // Σ_{n∈ℤ} (−1)ⁿ q^{n²}
TermGenerator unimodal();                // Σ qⁿ/(q)_n²
TermGenerator concave();                 // Σ qⁿ/(q^{n+1})_∞²
TermGenerator sigma();                   // Σ q^{n(n+1)/2}/(−q)_n
TermGenerator g_series();                // Σ q^{2n+1}/((q^{2n+1})_∞ (q^{2n+2};q²)_n)
TermGenerator w1();                      // Σ (−1)ⁿ (q)_n q^{n(n+1)/2}/(−q)_n
TermGenerator w1_hecke();                // indefinite theta form of W1
TermGenerator phi();                     // Σ q^{n²}/(−q²;q²)_n
TermGenerator f3();                      // Σ q^{n²}/(−q)_n²
TermGenerator mu();                      // Σ (−1)ⁿ (q;q²)_n q^{n²}/(−q²;q²)_n²
TermGenerator nu3();                     // Σ q^{n(n+1)}/(−q;q²)_{n+1}
TermGenerator F1();                      // Σ_{n≥1} (−1/q;q²)_n ζⁿ q^{n(n+1)}/(−ζq,−q²;q²)_n
TermGenerator F2();                      // Σ (−1/ζ;q²)_n (−1)ⁿ qⁿ/(−q²;q²)_n
TermGenerator rank();                    // R(ζ;q)
TermGenerator m2rank();                  // R2(ζ;q)
TermGenerator pod(bool refined);         // P̄_od(q) or P̄_od(ζ;q)
TermGenerator pev(bool refined);         // P̄_ev(q) or P̄_ev(ζ;q)
TermGenerator pod1();                    // P̄_od^[1](q)
TermGenerator vod(bool refined);         // V̄_od(q) or V̄_od(ζ;q)
TermGenerator false_pentagonal();        // Σ_{n∈ℤ} sgn(n) q^{n(3n−1)/2}

/// f(ζ₁, ζ₂; q^k) = Σ ζ₁ⁿ ζ₂²ⁿ q^{k(n²−3n)} / (−ζ₂, −ζ₁ζ₂q^{−k}; q^k)_n.
TermGenerator choi_f(const Monomial& zeta1, const Monomial& zeta2, long k = 1);
/// ν(ζ₁, ζ₂; q^k) = Σ ζ₂²ⁿ q^{k n(n−1)} / (−ζ₁²ζ₂² q^{−3k}; q^{2k})_{n+1}.
/// ν depends on its arguments only through their squares, which are passed
/// directly so that imaginary arguments stay exact.
TermGenerator choi_nu(const Monomial& zeta1_sq, const Monomial& zeta2_sq, long k = 1);
/// (1+ζ)·ν(iq, i(ζq)^{1/2}; q) = Σ (−1)ⁿ ζⁿ q^{n²}/(−ζq²;q²)_n.
TermGenerator nu_real();

}  // namespace gen

enum class Arity { OneVariable, TwoVariable };

struct SeriesCatalogEntry {
  std::string name;
  Arity arity;
  std::string anchor;
  std::function<TermGenerator()> generator;
};

struct UnknownSeries : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

const std::vector<SeriesCatalogEntry>& series_catalog();
const SeriesCatalogEntry& find_series(std::string_view name);

/// One-variable expansion of a catalog entry (throws for two-variable entries).
LaurentSeries build(std::string_view name, long order);
/// Two-variable expansion (one-variable entries are lifted).
BivariateSeries build_bivariate(std::string_view name, long order);
/// Term-wise ζ ↦ ±q^j specialization of a two-variable entry.
LaurentSeries build_specialized(std::string_view name, const ZetaSubstitution& zeta, long order);

/// f(ζ₁,ζ₂;q) or ν(ζ₁,ζ₂;q) at monomial arguments; for "nu_2var" the
/// monomials are the squares ζ₁², ζ₂².
BivariateSeries build_choi(std::string_view name, const Monomial& zeta1, const Monomial& zeta2,
                           long order, long k = 1);

}  // namespace qlab
