#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/rational.hpp"

namespace qlab {

using Real = long double;

/// B_n(x) with exact rational coefficients.
class BernoulliPoly {
 public:
  explicit BernoulliPoly(int n);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of x^k.
  const Rational& coefficient(int k) const { return coeffs_.at(k); }
  Rational operator()(const Rational& x) const;
  Real operator()(Real x) const;
  /// n·B_{n−1} as coefficients (so derivative().size() == degree()).
  std::vector<Rational> derivative() const;

  static Rational number(int n);  // B_n(0), with B_1 = −1/2

 private:
  std::vector<Rational> coeffs_;
};

/// λ t^β e^{γ/t}.
struct AsymptoticProfile {
  Real lambda = 1;
  Real beta = 0;
  Real gamma = 1;

  Real operator()(Real t) const;
};

/// Profiles for P̄_od, P̄_ev and P as q = e^{−t} → 1.
AsymptoticProfile profile(std::string_view name);

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Term or factor count passed its cap: t is too small for this representation.
struct ConvergenceTooSlow : NumericError {
  using NumericError::NumericError;
};
/// Cancellation in an alternating sum ate the requested digits.
struct PrecisionLoss : NumericError {
  using NumericError::NumericError;
};

/// Value at q = e^{−t} of a one-variable catalog series (or "euler_product",
/// meaning (q)_∞), from its defining sum. precision is the number of
/// significant decimal digits wanted (1..17).
Real eval_numeric(std::string_view name, Real t, int precision = 15);
/// Same at an arbitrary q in [0, 1).
Real eval_numeric_q(std::string_view name, Real q, int precision = 15);

// ---------------------------------------------------------------------------
// Euler–Maclaurin.

struct Smooth1D {
  std::function<Real(Real)> value;
  std::function<Real(int, Real)> derivative;  // g^{(n)}(x)
  std::optional<Real> integral;               // ∫_0^∞ g; quadrature if absent
};

struct Smooth2D {
  std::function<Real(Real, Real)> value;
  std::function<Real(int, int, Real, Real)> derivative;  // f^{(n,m)}(x, y)
  std::optional<Real> integral;                          // ∫∫ over the quadrant
  std::function<Real(int)> edge_x;  // ∫_0^∞ f^{(n,0)}(0, y) dy; quadrature if empty
  std::function<Real(int)> edge_y;  // ∫_0^∞ f^{(0,m)}(x, 0) dx; quadrature if empty
};

/// e^{−c x²} with closed-form derivatives and integral.
Smooth1D gaussian_1d(Real c);
/// e^{−(a x² + b x y + c y²)} with closed-form derivatives, edge integrals and
/// quadrant integral. Requires a, c > 0 and b ≥ 0.
Smooth2D gaussian_2d(Real a, Real b, Real c);

/// Edge integral ∫_0^∞ f^{(n,0)}(0,y) dy by numerical quadrature of the
/// supplied derivative (ignores edge_x).
Real edge_integral_x(const Smooth2D& f, int n);
Real quadrant_integral(const Smooth2D& f);

struct EMExpansion {
  Real value = 0;
  Real main = 0;                   // the integral term(s)
  std::vector<Real> corrections;   // boundary and Bernoulli terms, in order of appearance
};

/// (1/z)∫g − Σ_{n<N} B_{n+1}(a) g^{(n)}(0) z^n/(n+1)!
EMExpansion em_sum_1d(const Smooth1D& g, const Rational& a, Real z, int N);
/// Σ_{m≥0} g((m+a)z), summed directly.
Real direct_sum_1d(const Smooth1D& g, Real a, Real z);

/// Two-dimensional expansion of Σ_{m∈ℕ₀²} f((m+a)z).
EMExpansion em_sum_2d(const Smooth2D& f, const Rational& a1, const Rational& a2, Real z, int N);
Real direct_sum_2d(const Smooth2D& f, Real a1, Real a2, Real z);

/// Σ_{δ,r∈{0,1}} (−1)^{δ+r} B_{k}(δ/2 + (1+2r)/8), exact.
Rational hecke_bernoulli_combination(int k);
/// Σ_{j∈{1,3,5,7}} (2|j) B_k(j/8), exact.
Rational character_bernoulli_combination(int k);

/// The part 2Σ_{n≥0, 1≤j≤n} (−1)^{n+j} q^{2n²+n−j²}(1−q^{2n+1}) of W1 at
/// q = e^{−z}: via the 2-d expansion with f = e^{−8x²−8xy−y²} at √z, and by
/// direct summation.
Real w1_hecke_piece_expansion(Real z, int N);
Real w1_hecke_piece_direct(Real z);

// ---------------------------------------------------------------------------
// Coefficient ratios.

struct RatioRow {
  long n = 0;
  std::string coefficient;  // exact decimal
  Real main_term = 0;
  Real ratio = 0;
};

/// pod, pev or g.
Real main_term(std::string_view family, long n);
/// Exact b(0..order) for pod, pev, g or p. pod and pev come from their
/// mock/false theta decompositions; g from a telescoped form of its defining
/// sum; p from 1/(q)_∞. Results are cached.
const std::vector<Integer>& exact_coefficients(std::string_view family, long order);
std::vector<RatioRow> ratio_table(std::string_view family, const std::vector<long>& n_values);

}  // namespace qlab
