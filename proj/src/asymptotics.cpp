#include "qlab/asymptotics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "qlab/builders.hpp"

namespace qlab {
namespace {

constexpr Real kPi = 3.141592653589793238462643383279502884L;

Real to_real(const Rational& r) {
  return std::stold(r.get_num().get_str()) / std::stold(r.get_den().get_str());
}

Real quad(const std::function<Real(Real)>& f) {
  boost::math::quadrature::exp_sinh<Real> integrator;
  return integrator.integrate(f, Real(1e-16));
}

// ∫_0^∞ y^j e^{−c y²} dy
Real gaussian_moment(int j, Real c) {
  return std::tgamma(Real(j + 1) / 2) / (2 * std::pow(c, Real(j + 1) / 2));
}

// Coefficients of a polynomial in x and y, p[i][j] multiplying x^i y^j.
using Poly2 = std::vector<std::vector<Real>>;

Real eval(const Poly2& p, Real x, Real y) {
  Real s = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    Real row = 0;
    for (std::size_t j = p[i].size(); j-- > 0;) row = row * y + p[i][j];
    s = s * x + row;
  }
  return s;
}

// P ↦ ∂P + P·(u x + v y), i.e. one derivative of P·e^{Q} with ∂Q = u x + v y.
Poly2 step(const Poly2& p, bool wrt_x, Real u, Real v) {
  std::size_t n = p.size() + 1;
  Poly2 r(n, std::vector<Real>(n, 0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      Real c = p[i][j];
      if (c == 0) continue;
      if (wrt_x && i > 0) r[i - 1][j] += c * Real(i);
      if (!wrt_x && j > 0) r[i][j - 1] += c * Real(j);
      r[i + 1][j] += c * u;
      r[i][j + 1] += c * v;
    }
  }
  return r;
}

// ----- numeric evaluation of term generators ---------------------------------

struct Budget {
  long long factors = 0;
  long long cap = 200'000'000;
  void spend(long long k) {
    factors += k;
    if (factors > cap) throw ConvergenceTooSlow("factor budget exhausted; t is too small");
  }
};

Real power(Real q, long e) {
  if (q == 0) {
    if (e < 0) throw NumericError("negative power of q at q = 0");
    return e == 0 ? 1 : 0;
  }
  return std::pow(q, Real(e));
}

Real monomial_value(const Monomial& m, Real q) {
  if (m.zeta != 0) throw std::invalid_argument("numeric evaluation needs a ζ-free term");
  if (is_zero(m.coeff)) return 0;
  return to_real(m.coeff) * power(q, m.q);
}

Real pochhammer_value(const Pochhammer& p, Real q, Real eps, Budget& budget) {
  if (is_zero(p.base.coeff)) return 1;
  const Real c = to_real(p.base.coeff);
  const Real ratio = power(q, p.step);
  Real x = c * power(q, p.base.q);
  Real prod = 1;
  if (p.length) {
    budget.spend(*p.length);
    for (long i = 0; i < *p.length; ++i, x *= ratio) prod *= 1 - x;
    return prod;
  }
  for (long i = 0;; ++i, x *= ratio) {
    if (p.base.q + i * p.step > 0 && std::fabs(x) < eps) break;
    budget.spend(1);
    prod *= 1 - x;
  }
  return prod;
}

Real term_value(const Term& t, Real q, Budget& budget) {
  const Real eps = 1e-22L;
  Real v = monomial_value(t.prefactor, q);
  if (v == 0) return 0;
  for (const auto& p : t.numerators) v *= pochhammer_value(p, q, eps, budget);
  for (const auto& p : t.denominators) {
    Real d = pochhammer_value(p, q, eps, budget);
    if (d == 0) throw NumericError("vanishing denominator");
    v /= d;
  }
  return v;
}

Real eval_generator(const TermGenerator& g, Real q, int precision) {
  if (g.has_zeta) throw std::invalid_argument("series '" + g.name + "' depends on ζ");
  const Real eps = std::pow(Real(10), -Real(precision + 2));
  Budget budget;
  Real sum = 0, largest = 0;
  int quiet = 0;
  const long stable = g.monotone_from(0);
  for (long n = g.first;; ++n) {
    if (g.last && n > *g.last) break;
    if (n - g.first > 10'000'000) throw ConvergenceTooSlow("term count cap exceeded");
    Real tn = 0;
    for (const auto& t : g.terms(n)) tn += term_value(t, q, budget);
    sum += tn;
    largest = std::max({largest, std::fabs(tn), std::fabs(sum)});
    if (n >= stable && std::fabs(tn) <= eps * std::fabs(sum)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    budget.spend(1);
  }
  if (sum == 0 ? largest > 0 : largest / std::fabs(sum) > std::pow(Real(10), 18 - precision)) {
    throw PrecisionLoss("cancellation leaves fewer than " + std::to_string(precision) +
                        " significant digits");
  }
  return sum;
}

// ----- exact coefficient tables --------------------------------------------

std::vector<Integer> integral(const LaurentSeries& s, long order) {
  std::vector<Integer> out(order + 1);
  for (long n = 0; n <= order; ++n) {
    Rational c = s.coefficient(n);
    if (c.get_den() != 1) throw std::logic_error("non-integral coefficient");
    out[n] = c.get_num();
  }
  return out;
}

LaurentSeries inf_product(const Monomial& base, long step, long order) {
  return pochhammer<Rational>(base, step, std::nullopt, order);
}

std::vector<Integer> p_table(long order) {
  return integral(inverse(inf_product(qpow(1), 1, order), order), order);
}

// A(1 − W1) − ((1+q)/q)·FP with A = (1+q)(−q;q²)_∞/(q(q)_∞).
std::vector<Integer> pod_table(long order) {
  const long M = order + 1;
  auto op = LaurentSeries::exact({Rational(1), Rational(1)}, 0);
  auto inv_q = LaurentSeries::monomial(Rational(1), -1);
  auto A = op * inf_product(qpow(1, -1), 2, M) * inverse(inf_product(qpow(1), 1, M), M) * inv_q;
  auto rhs = A * (LaurentSeries::one() - build("W1", M)) - op * inv_q * build("false_pentagonal", M);
  return integral(rhs, order);
}

// (1+q)/(2(q)_∞)·(1 − (q)²_∞/(−q)²_∞) + (1+q)(φ(−q) − 1)
std::vector<Integer> pev_table(long order) {
  const long M = order;
  auto op = LaurentSeries::exact({Rational(1), Rational(1)}, 0);
  auto P = inf_product(qpow(1), 1, M);
  auto Pm = inf_product(qpow(1, -1), 1, M);
  auto rhs = op * inverse(P, M) * (LaurentSeries::one() - P * P * inverse(Pm * Pm, M)) * Rational(1, 2) +
             op * (scale_q(build("phi", M), Rational(-1)) - LaurentSeries::one());
  return integral(rhs, order);
}

void mul_binomial(std::vector<Integer>& a, long k) {  // a ← a·(1 − q^k)
  for (long n = static_cast<long>(a.size()) - 1; n >= k; --n) a[n] -= a[n - k];
}
void div_binomial(std::vector<Integer>& a, long k) {  // a ← a/(1 − q^k)
  for (long n = k; n < static_cast<long>(a.size()); ++n) a[n] += a[n - k];
}

// G = Σ_n q^{2n+1} A_n with A_n = 1/((q^{2n+1})_∞ (q^{2n+2};q²)_n), and
// A_n = A_{n+1}(1−q^{4n+2})(1−q^{4n+4})/((1−q^{2n+1})(1−q^{2n+2})²).
std::vector<Integer> g_table(long order) {
  std::vector<Integer> g(order + 1, 0);
  std::vector<Integer> A(order + 1, 0);
  A[0] = 1;  // A_n ≡ 1 once 2n+1 > order
  for (long n = order / 2; n >= 0; --n) {
    mul_binomial(A, 4 * n + 2);
    mul_binomial(A, 4 * n + 4);
    div_binomial(A, 2 * n + 1);
    div_binomial(A, 2 * n + 2);
    div_binomial(A, 2 * n + 2);
    for (long m = 2 * n + 1; m <= order; ++m) g[m] += A[m - 2 * n - 1];
  }
  return g;
}

}  // namespace

// ----- Bernoulli ---------------------------------------------------------------

Rational BernoulliPoly::number(int n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  if (n < 0) throw std::invalid_argument("Bernoulli index must be >= 0");
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    Rational s = 0;
    Integer binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-s / (m + 1));
  }
  return cache[n];
}

BernoulliPoly::BernoulliPoly(int n) {
  if (n < 0) throw std::invalid_argument("Bernoulli degree must be >= 0");
  coeffs_.assign(n + 1, Rational(0));
  Integer binom = 1;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    coeffs_[n - k] = Rational(binom) * number(k);
    binom = binom * (n - k) / (k + 1);
  }
}

Rational BernoulliPoly::operator()(const Rational& x) const {
  Rational s = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) s = s * x + coeffs_[i];
  return s;
}

Real BernoulliPoly::operator()(Real x) const {
  Real s = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) s = s * x + to_real(coeffs_[i]);
  return s;
}

std::vector<Rational> BernoulliPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Rational(long(k)));
  return d;
}

// ----- profiles and numeric values -----------------------------------------

Real AsymptoticProfile::operator()(Real t) const {
  return lambda * std::pow(t, beta) * std::exp(gamma / t);
}

AsymptoticProfile profile(std::string_view name) {
  const Real root = 1 / std::sqrt(2 * kPi);
  if (name == "pod" || name == "Pod") return {root, Real(1.5), 5 * kPi * kPi / 24};
  if (name == "pev" || name == "Pev" || name == "p" || name == "P") {
    return {root, Real(0.5), kPi * kPi / 6};
  }
  throw std::invalid_argument("no asymptotic profile for '" + std::string(name) + "'");
}

Real eval_numeric_q(std::string_view name, Real q, int precision) {
  if (!(q >= 0 && q < 1)) throw std::invalid_argument("q must lie in [0, 1)");
  if (precision < 1 || precision > 18) throw std::invalid_argument("precision must be 1..18");
  if (name == "euler_product") {
    Budget budget;
    return pochhammer_value(Pochhammer::infinite(qpow(1), 1), q, 1e-22L, budget);
  }
  const auto& entry = find_series(name);
  if (entry.arity != Arity::OneVariable) {
    throw std::invalid_argument("series '" + entry.name + "' needs a ζ value");
  }
  return eval_generator(entry.generator(), q, precision);
}

Real eval_numeric(std::string_view name, Real t, int precision) {
  if (!(t > 0 && t <= Real(0.5))) throw std::invalid_argument("t must lie in (0, 0.5]");
  return eval_numeric_q(name, std::exp(-t), precision);
}

// ----- Euler–Maclaurin ------------------------------------------------------

Smooth1D gaussian_1d(Real c) {
  if (!(c > 0)) throw std::invalid_argument("gaussian_1d needs c > 0");
  Smooth1D g;
  g.value = [c](Real x) { return std::exp(-c * x * x); };
  g.derivative = [c](int n, Real x) {
    Poly2 p{{1}};
    for (int i = 0; i < n; ++i) p = step(p, true, -2 * c, 0);
    const Real e = std::exp(-c * x * x);
    return e == 0 ? 0 : eval(p, x, 0) * e;
  };
  g.integral = std::sqrt(kPi / c) / 2;
  return g;
}

Smooth2D gaussian_2d(Real a, Real b, Real c) {
  if (!(a > 0 && c > 0 && b >= 0)) throw std::invalid_argument("gaussian_2d needs a, c > 0, b >= 0");
  auto poly = [a, b, c](int n, int m) {
    Poly2 p{{1}};
    for (int i = 0; i < n; ++i) p = step(p, true, -2 * a, -b);
    for (int i = 0; i < m; ++i) p = step(p, false, -b, -2 * c);
    return p;
  };
  Smooth2D f;
  f.value = [a, b, c](Real x, Real y) { return std::exp(-(a * x * x + b * x * y + c * y * y)); };
  f.derivative = [=](int n, int m, Real x, Real y) {
    const Real e = std::exp(-(a * x * x + b * x * y + c * y * y));
    return e == 0 ? 0 : eval(poly(n, m), x, y) * e;
  };
  f.edge_x = [=](int n) {
    auto p = poly(n, 0);
    Real s = 0;
    for (std::size_t j = 0; j < p[0].size(); ++j) s += p[0][j] * gaussian_moment(int(j), c);
    return s;
  };
  f.edge_y = [=](int m) {
    auto p = poly(0, m);
    Real s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i][0] * gaussian_moment(int(i), a);
    return s;
  };
  const Real d = a * c - b * b / 4;
  const Real u = (b / 2) / std::sqrt(a * c);
  if (d > 0) {
    f.integral = std::acos(u) / (2 * std::sqrt(d));
  } else if (d < 0) {
    f.integral = std::acosh(u) / (2 * std::sqrt(-d));
  } else {
    f.integral = 1 / (2 * std::sqrt(a * c));
  }
  return f;
}

Real edge_integral_x(const Smooth2D& f, int n) {
  return quad([&](Real y) { return f.derivative(n, 0, 0, y); });
}

namespace {
Real edge_integral_y(const Smooth2D& f, int m) {
  return quad([&](Real x) { return f.derivative(0, m, x, 0); });
}
Real factorial(int n) { return std::tgamma(Real(n + 1)); }
}  // namespace

Real quadrant_integral(const Smooth2D& f) {
  if (f.integral) return *f.integral;
  return quad([&](Real y) { return quad([&](Real x) { return f.value(x, y); }); });
}

EMExpansion em_sum_1d(const Smooth1D& g, const Rational& a, Real z, int N) {
  if (sgn(a) < 0) throw std::invalid_argument("a must be >= 0");
  if (!(z > 0) || N < 0) throw std::invalid_argument("need z > 0 and N >= 0");
  EMExpansion e;
  const Real I = g.integral ? *g.integral : quad(g.value);
  e.main = I / z;
  e.value = e.main;
  for (int n = 0; n < N; ++n) {
    Real term = -to_real(BernoulliPoly(n + 1)(a)) * g.derivative(n, 0) * std::pow(z, Real(n)) /
                factorial(n + 1);
    e.corrections.push_back(term);
    e.value += term;
  }
  return e;
}

Real direct_sum_1d(const Smooth1D& g, Real a, Real z) {
  Real s = 0;
  int quiet = 0;
  for (long m = 0; m < 100'000'000; ++m) {
    Real t = g.value((m + a) * z);
    s += t;
    if ((m + a) * z > 1 && std::fabs(t) <= 1e-24L * std::fabs(s)) {
      if (++quiet >= 5) return s;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceTooSlow("direct sum did not converge");
}

EMExpansion em_sum_2d(const Smooth2D& f, const Rational& a1, const Rational& a2, Real z, int N) {
  if (sgn(a1) < 0 || sgn(a2) < 0) throw std::invalid_argument("shifts must be >= 0");
  if (!(z > 0) || N < 0) throw std::invalid_argument("need z > 0 and N >= 0");
  EMExpansion e;
  e.main = quadrant_integral(f) / (z * z);
  e.value = e.main;
  auto add = [&](Real t) {
    e.corrections.push_back(t);
    e.value += t;
  };
  for (int n = 0; n <= N; ++n) {
    Real edge = f.edge_x ? f.edge_x(n) : edge_integral_x(f, n);
    add(-to_real(BernoulliPoly(n + 1)(a1)) * std::pow(z, Real(n)) / factorial(n + 1) * edge / z);
  }
  for (int m = 0; m <= N; ++m) {
    Real edge = f.edge_y ? f.edge_y(m) : edge_integral_y(f, m);
    add(-to_real(BernoulliPoly(m + 1)(a2)) * std::pow(z, Real(m)) / factorial(m + 1) * edge / z);
  }
  for (int n = 0; n < N; ++n) {
    for (int m = 0; n + m < N; ++m) {
      add(to_real(BernoulliPoly(n + 1)(a1) * BernoulliPoly(m + 1)(a2)) * f.derivative(n, m, 0, 0) *
          std::pow(z, Real(n + m)) / (factorial(n + 1) * factorial(m + 1)));
    }
  }
  return e;
}

Real direct_sum_2d(const Smooth2D& f, Real a1, Real a2, Real z) {
  Smooth1D row;
  Real total = 0;
  int quiet = 0;
  for (long m1 = 0; m1 < 10'000'000; ++m1) {
    const Real x = (m1 + a1) * z;
    row.value = [&](Real y) { return f.value(x, y); };
    Real s = direct_sum_1d(row, a2, z);
    total += s;
    if (x > 1 && std::fabs(s) <= 1e-24L * std::fabs(total)) {
      if (++quiet >= 5) return total;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceTooSlow("direct double sum did not converge");
}

Rational hecke_bernoulli_combination(int k) {
  BernoulliPoly b(k);
  Rational s = 0;
  for (int d = 0; d <= 1; ++d) {
    for (int r = 0; r <= 1; ++r) {
      Rational x = Rational(d, 2) + Rational(1 + 2 * r, 8);
      x.canonicalize();
      s += ((d + r) % 2 == 0 ? 1 : -1) * b(x);
    }
  }
  return s;
}

Rational character_bernoulli_combination(int k) {
  BernoulliPoly b(k);
  Rational s = 0;
  for (int j : {1, 3, 5, 7}) {
    int chi = (j == 1 || j == 7) ? 1 : -1;  // (2|j)
    s += chi * b(Rational(j, 8));
  }
  return s;
}

Real w1_hecke_piece_expansion(Real z, int N) {
  const Smooth2D f = gaussian_2d(8, 8, 1);
  Real s = 0;
  for (int d = 0; d <= 1; ++d) {
    for (int r = 0; r <= 1; ++r) {
      Rational a1 = Rational(d, 2) + Rational(1 + 2 * r, 8);
      a1.canonicalize();
      Real v = em_sum_2d(f, a1, Rational(1), std::sqrt(z), N).value;
      s += ((d + r) % 2 == 0 ? 1 : -1) * v;
    }
  }
  return 2 * std::exp(z / 8) * s;
}

Real w1_hecke_piece_direct(Real z) {
  const Real q = std::exp(-z);
  Real s = 0;
  for (long n = 1;; ++n) {
    if (std::pow(q, Real(n * n + n)) * Real(n) < 1e-25L) break;
    Real inner = 0;
    for (long j = 1; j <= n; ++j) {
      inner += ((n + j) % 2 == 0 ? 1 : -1) * std::pow(q, Real(2 * n * n + n - j * j));
    }
    s += inner * (1 - std::pow(q, Real(2 * n + 1)));
    if (n > 10'000'000) throw ConvergenceTooSlow("direct Hecke sum did not converge");
  }
  return 2 * s;
}

// ----- ratio tables -----------------------------------------------------------

Real main_term(std::string_view family, long n) {
  if (n <= 0) throw std::invalid_argument("main term needs n >= 1");
  const Real x = Real(n);
  if (family == "pod") {
    return 5 * kPi / (48 * std::sqrt(Real(2)) * std::pow(x, Real(1.5))) *
           std::exp(kPi * std::sqrt(5 * x / 6));
  }
  if (family == "pev" || family == "g" || family == "p") {
    return std::exp(kPi * std::sqrt(2 * x / 3)) / (4 * std::sqrt(Real(3)) * x);
  }
  throw std::invalid_argument("unknown ratio family '" + std::string(family) + "'");
}

const std::vector<Integer>& exact_coefficients(std::string_view family, long order) {
  static std::mutex mu;
  static std::map<std::string, std::vector<Integer>> cache;
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[std::string(family)];
  if (static_cast<long>(slot.size()) <= order) {
    const long target = std::max(order, 2 * static_cast<long>(slot.size()));
    if (family == "pod") {
      slot = pod_table(target);
    } else if (family == "pev") {
      slot = pev_table(target);
    } else if (family == "g") {
      slot = g_table(target);
    } else if (family == "p") {
      slot = p_table(target);
    } else {
      cache.erase(std::string(family));
      throw std::invalid_argument("no exact table for '" + std::string(family) + "'");
    }
  }
  return slot;
}

std::vector<RatioRow> ratio_table(std::string_view family, const std::vector<long>& n_values) {
  long top = 0;
  for (long n : n_values) {
    if (n <= 0) throw std::invalid_argument("ratio rows need n >= 1");
    top = std::max(top, n);
  }
  main_term(family, 1);  // rejects unknown families before the exact phase
  const auto& b = exact_coefficients(family, top);
  std::vector<RatioRow> rows;
  for (long n : n_values) {
    RatioRow r;
    r.n = n;
    r.coefficient = b[n].get_str();
    r.main_term = main_term(family, n);
    r.ratio = std::stold(r.coefficient) / r.main_term;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qlab
