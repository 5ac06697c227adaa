#include "qlab/identities.hpp"

#include <algorithm>
#include <future>
#include <initializer_list>
#include <thread>
#include <type_traits>
#include <utility>

#include "qlab/builders.hpp"

namespace qlab {
namespace {

using R = Rational;

Rational sign(long n) { return (n % 2 == 0) ? R(1) : R(-1); }

// Series toolkit at a fixed working order.
template <class C>
struct Q {
  using S = Series<C>;
  long N;
  ZetaSubstitution sub{};

  S one() const { return S::one(); }
  S m(const Monomial& x) const { return monomial_series<C>(x, sub); }
  S q(long e, const R& c = 1) const { return m(qpow(e, c)); }
  S poly(std::initializer_list<Monomial> xs) const {
    S r;
    for (const auto& x : xs) r += m(x);
    return r;
  }
  S term(const Term& t) const { return evaluate_term<C>(t, N, sub); }
  S fin(const Monomial& base, long step, long len) const {
    Term t;
    t.num(poch(base, step, len));
    return term(t);
  }
  // (base; q^step)_∞, with any factors of nonpositive exponent split off as a
  // finite Laurent polynomial in front.
  S inf(const Monomial& base, long step) const {
    long e0 = sub.apply(base).q;
    long lead = e0 <= 0 ? (-e0) / step + 1 : 0;
    Term t;
    if (lead > 0) t.num(poch(base, step, lead));
    t.num(poch_inf(base * qpow(lead * step), step));
    return term(t);
  }
  S sum(const TermGenerator& g) const {
    return sum_terms<C>(g, N, g.has_zeta ? sub : ZetaSubstitution{});
  }
  S inv(const S& a) const { return inverse(a, N); }
};

template <class C>
using Sides = std::pair<Series<C>, Series<C>>;

using Terms = std::vector<Term>;

TermGenerator adhoc(long first, std::function<Term(long)> term) {
  return shaped("sum", first, [term = std::move(term)](long n) { return Terms{term(n)}; });
}
TermGenerator adhoc2(long first, std::function<Terms(long)> terms) {
  return shaped("sum", first, std::move(terms));
}

void describe(Mismatch& m, const Rational& x, const Rational& y) {
  m.lhs = to_string(x);
  m.rhs = to_string(y);
}

void describe(Mismatch& m, const ZetaPoly& x, const ZetaPoly& y) {
  int lo = std::min(x.is_zero() ? y.min_exponent() : x.min_exponent(),
                    y.is_zero() ? x.min_exponent() : y.min_exponent());
  int hi = std::max(x.is_zero() ? y.max_exponent() : x.max_exponent(),
                    y.is_zero() ? x.max_exponent() : y.max_exponent());
  for (int e = lo; e <= hi; ++e) {
    if (x.coefficient(e) != y.coefficient(e)) {
      m.zeta_exponent = e;
      m.lhs = to_string(x.coefficient(e));
      m.rhs = to_string(y.coefficient(e));
      return;
    }
  }
}

template <class C>
Comparison compare_sides(const Series<C>& lhs, const Series<C>& rhs, long order) {
  long certified = std::min(lhs.order(), rhs.order());
  if (certified < order) {
    throw SeriesError("sides are certified only through q^" + std::to_string(certified) +
                      ", below the requested order " + std::to_string(order));
  }
  Comparison c;
  c.checked_order = order;
  auto a = lhs.truncated(order);
  auto b = rhs.truncated(order);
  if (auto n = first_mismatch(a, b)) {
    Mismatch m;
    m.q_exponent = *n;
    describe(m, a.coefficient(*n), b.coefficient(*n));
    c.mismatch = m;
  }
  return c;
}

template <class C>
IdentityCase make_case(std::string id, std::string description, long margin,
                       std::function<Sides<C>(const Q<C>&)> sides) {
  IdentityCase c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.bivariate = std::is_same_v<C, ZetaPoly>;
  c.default_order = c.bivariate ? 60 : 100;
  c.compare = [margin, sides = std::move(sides)](long order) {
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    Q<C> z{order + margin};
    auto [lhs, rhs] = sides(z);
    return compare_sides(lhs, rhs, order);
  };
  return c;
}

// ---------------------------------------------------------------------------
// Lemma families.

std::string pretty(const Monomial& m) {
  if (m.is_zero()) return "0";
  R c = m.coeff;
  bool neg = sgn(c) < 0;
  if (neg) c = -c;
  std::string body;
  if (m.zeta != 0) body += m.zeta == 1 ? "z" : "z^" + std::to_string(m.zeta);
  if (m.q != 0) {
    if (!body.empty()) body += "*";
    body += m.q == 1 ? "q" : "q^" + std::to_string(m.q);
  }
  std::string cs = (c == 1 && !body.empty()) ? "" : c.get_str() + (body.empty() ? "" : "*");
  return (neg ? "-" : "") + cs + body;
}

const Monomial& param(const LemmaParams& p, const std::string& name) {
  auto it = p.values.find(name);
  if (it == p.values.end()) throw std::invalid_argument("missing lemma parameter '" + name + "'");
  return it->second;
}

template <class C>
Sides<C> ramanujan1(const Q<C>& z, const LemmaParams& p) {
  const Monomial a = param(p, "a"), b = param(p, "b"), c = param(p, "c");
  const long k = p.base;
  const Monomial qk = qpow(k);
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term t{qpow(k * (n + 1)), {}, {}};
    t.num(poch(-a * qk, k, n)).num(poch(-b * qk, k, n)).den(poch(-c * qk, k, n));
    return t;
  }));
  const Monomial ab = a * b;
  auto s1 = z.sum(adhoc(1, [=](long n) {
    Term t{(ab / c).pow(n) * qpow(k * n * (n + 1) / 2), {}, {}};
    t.num(poch(-c.inverse(), k, n)).den(poch(a * qk / c, k, n)).den(poch(b * qk / c, k, n));
    return t;
  }));
  auto s2 = z.sum(adhoc(1, [=](long n) {
    Term t{(ab / (c * c)).pow(n) * qpow(k * n * n), {}, {}};
    t.den(poch(a * qk / c, k, n)).den(poch(b * qk / c, k, n));
    return t;
  }));
  auto pre = z.m(c / ab);
  auto rhs = pre * s1 - pre * z.inf(-a * qk, k) * z.inf(-b * qk, k) *
                            z.inv(z.inf(-c * qk, k)) * s2;
  return {lhs, rhs};
}

template <class C>
Sides<C> ramanujan2(const Q<C>& z, const LemmaParams& p) {
  const Monomial a = param(p, "a"), b = param(p, "b"), c = param(p, "c");
  const long k = p.base;
  const Monomial qk = qpow(k);
  const Monomial ba = -(b / a);
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term t{qpow(k * n), {}, {}};
    t.num(poch(c * qk, k, n)).den(poch(-a * qk, k, n)).den(poch(-b * qk, k, n));
    return t;
  }));
  auto s1 = z.sum(adhoc(0, [=](long n) {
    Term t{ba.pow(n) * qpow(k * n * (n + 1) / 2), {}, {}};
    t.num(poch(c * qk, k, n)).den(poch(-(c * qk / a), k, n + 1)).den(poch(-b * qk, k, n));
    return t;
  }));
  auto s2 = z.sum(adhoc(0, [=](long n) {
    Term t{ba.pow(n) * qpow(k * n * (n + 1) / 2), {}, {}};
    t.den(poch(-(c * qk / a), k, n + 1));
    return t;
  }));
  auto rhs = z.poly({qpow(0), a.inverse()}) * s1 -
             z.m(a.inverse()) * z.inf(c * qk, k) *
                 z.inv(z.inf(-a * qk, k) * z.inf(-b * qk, k)) * s2;
  return {lhs, rhs};
}

template <class C>
Sides<C> euler1(const Q<C>& z, const LemmaParams& p) {
  const Monomial t = param(p, "t");
  const long k = p.base;
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term x{t.pow(n), {}, {}};
    x.den(poch(qpow(k), k, n));
    return x;
  }));
  return {lhs, z.inv(z.inf(t, k))};
}

template <class C>
Sides<C> euler2(const Q<C>& z, const LemmaParams& p) {
  const Monomial t = param(p, "t");
  const long k = p.base;
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term x{t.pow(n) * qpow(k * n * (n - 1) / 2), {}, {}};
    x.den(poch(qpow(k), k, n));
    return x;
  }));
  return {lhs, z.inf(-t, k)};
}

template <class C>
Sides<C> garvan(const Q<C>& z, const LemmaParams& p) {
  const Monomial w = param(p, "z");
  auto lhs = z.sum(adhoc(1, [=](long n) {
    Term t{w.pow(n) * qpow(n * n, sign(n + 1)), {}, {}};
    t.den(poch(w * qpow(2 * n), 1, 1)).den(poch(w * qpow(1), 2, n));
    return t;
  }));
  auto rhs = z.sum(adhoc(1, [=](long n) {
    Term t{w.pow(n) * qpow(n * (n + 1) / 2), {}, {}};
    t.num(poch(qpow(1), 1, n - 1)).den(poch(w * qpow(1), 1, n));
    return t;
  }));
  return {lhs, rhs};
}

template <class C>
Sides<C> lost_notebook(const Q<C>& z, const LemmaParams& p) {
  const Monomial a = param(p, "a"), b = param(p, "b");
  const long k = p.base;
  const Monomial qk = qpow(k);
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term t{(a * b).pow(n) * qpow(k * n * n), {}, {}};
    t.den(poch(a * qk, k, n)).den(poch(b * qk, k, n));
    return t;
  }));
  auto s = z.sum(adhoc(1, [=](long n) {
    Term t{(b * qk).pow(n), {}, {}};
    t.den(poch(a * qk, k, n));
    return t;
  }));
  return {lhs, z.one() + z.m(a) * s};
}

template <class C>
Sides<C> heine(const Q<C>& z, const LemmaParams& p) {
  const Monomial a = param(p, "a"), b = param(p, "b"), c = param(p, "c");
  const long k = p.base;
  const Monomial x = c / (a * b);
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term t{x.pow(n), {}, {}};
    t.num(poch(a, k, n)).num(poch(b, k, n)).den(poch(qpow(k), k, n)).den(poch(c, k, n));
    return t;
  }));
  auto rhs = z.inf(c / a, k) * z.inf(c / b, k) * z.inv(z.inf(c, k) * z.inf(x, k));
  return {lhs, rhs};
}

template <class C>
Sides<C> andrews_pentagonal(const Q<C>& z, const LemmaParams& p) {
  const Monomial w = param(p, "z");
  auto lhs = z.one() + z.sum(adhoc2(1, [=](long n) {
               return Terms{Term{w.pow(3 * n - 1) * qpow(n * (3 * n - 1) / 2, sign(n)), {}, {}},
                            Term{w.pow(3 * n) * qpow(n * (3 * n + 1) / 2, sign(n)), {}, {}}};
             }));
  auto rhs = z.sum(adhoc(0, [=](long n) {
    Term t{w.pow(2 * n) * qpow(n * (n + 1) / 2, sign(n)), {}, {}};
    t.den(poch(w * qpow(1), 1, n));
    return t;
  }));
  return {lhs, rhs};
}

template <class C>
Sides<C> bem1(const Q<C>& z, const LemmaParams& p) {
  const Monomial a = param(p, "a"), b = param(p, "b"), c = param(p, "c"), d = param(p, "d");
  const long k = p.base;
  const Monomial ad = a * d;
  auto lhs = z.sum(adhoc(1, [=](long n) {
    Term t{ad.pow(n), {}, {}};
    t.num(poch(b / a, k, n)).num(poch(c / d, k, n));
    t.den(poch(b, k, n)).den(poch(c * qpow(k), k, n));
    return t;
  }));
  auto s = z.sum(adhoc2(0, [=](long n) {
    Term base{c.pow(n), {}, {}};
    base.num(poch(a, k, n)).num(poch(b * d / c, k, n));
    base.den(poch(b, k, n)).den(poch(ad, k, n));
    Term x = base, y = base;
    x.prefactor = x.prefactor * ad * qpow(k * n);
    x.den(poch(ad * qpow(k * n), k, 1));
    y.prefactor = y.prefactor * (-b) * qpow(k * n);
    y.den(poch(b * qpow(k * n), k, 1));
    return Terms{x, y};
  }));
  auto factor = z.poly({a, -b}) * z.poly({d, -c}) * z.inv(z.poly({ad, -b}));
  return {lhs, factor * s};
}

template <class C>
Sides<C> bem2(const Q<C>& z, const LemmaParams& p) {
  const Monomial w = param(p, "z"), c = param(p, "c"), d = param(p, "d");
  const long k = p.base;
  const Monomial qk = qpow(k);
  auto lhs = z.sum(adhoc(1, [=](long n) {
    Term t{(-(w * d)).pow(n) * qpow(k * n * (n + 1) / 2), {}, {}};
    t.num(poch(c / d, k, n)).den(poch(w * qk, k, n)).den(poch(c * qk, k, n));
    return t;
  }));
  auto s = z.sum(adhoc(1, [=](long n) {
    Term t{(c * qk).pow(n), {}, {}};
    t.num(poch(w * d * qk / c, k, n - 1)).den(poch(w * qk, k, n));
    return t;
  }));
  return {lhs, z.poly({w, -(w * d / c)}) * s};
}

template <class C>
Sides<C> agarwal(const Q<C>& z, const LemmaParams& p) {
  const Monomial w = param(p, "z");
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term t{w.pow(n) * qpow(2 * n, sign(n)), {}, {}};
    t.num(poch(qpow(1, -1), 2, n)).den(poch(-w * qpow(3), 2, n));
    return t;
  }));
  auto f2 = z.sum(adhoc(0, [=](long n) {
    Term t{qpow(n, sign(n)), {}, {}};
    t.num(poch(-w.inverse(), 2, n)).den(poch(qpow(2, -1), 2, n));
    return t;
  }));
  const Monomial wq = w * qpow(1);
  auto first = z.inf(qpow(1), 1) * z.inf(w * qpow(2), 1) * z.inf(wq.inverse(), 2) *
               z.inv(z.inf(-w * qpow(2), 1));
  auto rhs = (first + z.poly({qpow(0), wq.inverse()}) * f2) * R(1, 2);
  return {lhs, rhs};
}

template <class C>
Sides<C> rogers_fine(const Q<C>& z, const LemmaParams& p) {
  const Monomial al = param(p, "alpha"), be = param(p, "beta"), t = param(p, "t");
  const long k = p.base;
  const Monomial qk = qpow(k);
  auto lhs = z.sum(adhoc(0, [=](long n) {
    Term x{t.pow(n), {}, {}};
    x.num(poch(al, k, n)).den(poch(be, k, n));
    return x;
  }));
  auto rhs = z.sum(adhoc(0, [=](long n) {
    Term x{(be * t / qk).pow(n) * qpow(k * n * n), {}, {}};
    x.num(poch(al, k, n)).num(poch(al * t * qk / be, k, n)).num(poch(al * t * qpow(2 * k * n), k, 1));
    x.den(poch(be, k, n)).den(poch(t, k, n + 1));
    return x;
  }));
  return {lhs, rhs};
}

struct Family {
  std::string id;
  std::string description;
  Sides<Rational> (*one)(const Q<Rational>&, const LemmaParams&);
  Sides<ZetaPoly> (*two)(const Q<ZetaPoly>&, const LemmaParams&);
};

#define QLAB_FAMILY(id, desc, fn) Family{id, desc, &fn<Rational>, &fn<ZetaPoly>}

const std::vector<Family>& families() {
  static const std::vector<Family> fs = {
      QLAB_FAMILY("ramanujan-1", "first Ramanujan transformation of (-aq,-bq)_n q^(n+1)/(-cq)_n",
                  ramanujan1),
      QLAB_FAMILY("ramanujan-2", "second Ramanujan transformation of (cq)_n q^n/(-aq,-bq)_n",
                  ramanujan2),
      QLAB_FAMILY("euler-1", "sum t^n/(q)_n = 1/(t)_inf", euler1),
      QLAB_FAMILY("euler-2", "sum t^n q^(n(n-1)/2)/(q)_n = (-t)_inf", euler2),
      QLAB_FAMILY("garvan", "Garvan's identity in z", garvan),
      QLAB_FAMILY("lost-notebook", "sum (ab)^n q^(n^2)/(aq,bq)_n = 1 + a sum (bq)^n/(aq)_n",
                  lost_notebook),
      QLAB_FAMILY("heine", "Heine summation (a,b)_n (c/ab)^n/(q,c)_n", heine),
      QLAB_FAMILY("andrews-pentagonal", "pentagonal series in z against sum z^2n q^(n(n+1)/2)",
                  andrews_pentagonal),
      QLAB_FAMILY("bem-1", "first Bhoria-Eyyunni-Maji transformation", bem1),
      QLAB_FAMILY("bem-2", "second Bhoria-Eyyunni-Maji transformation", bem2),
      QLAB_FAMILY("agarwal", "Agarwal's transformation at alpha=-q, beta=-zq^3, t=-zq^2",
                  agarwal),
      QLAB_FAMILY("rogers-fine", "Rogers-Fine identity", rogers_fine),
  };
  return fs;
}

#undef QLAB_FAMILY

std::string case_id(const std::string& family, const LemmaParams& p) {
  std::string id = family + "[";
  bool first = true;
  for (const auto& [name, value] : p.values) {
    if (!first) id += ",";
    first = false;
    id += name + "=" + pretty(value);
  }
  if (p.base != 1) id += ",q->q^" + std::to_string(p.base);
  return id + "]";
}

bool has_zeta(const LemmaParams& p) {
  return std::any_of(p.values.begin(), p.values.end(),
                     [](const auto& kv) { return kv.second.zeta != 0; });
}

// ---------------------------------------------------------------------------
// Named identities.

using QR = Q<Rational>;
using QZ = Q<ZetaPoly>;

template <class C>
Series<C> one_plus_q(const Q<C>& z) {
  return z.poly({qpow(0), qpow(1)});
}

// Σ_{n≥1} q^{2n²−n}/(−q)_{2n}
TermGenerator sgn_sum_lhs() {
  return adhoc(1, [](long n) {
    Term t{qpow(2 * n * n - n), {}, {}};
    t.den(poch(qpow(1, -1), 1, 2 * n));
    return t;
  });
}

std::vector<IdentityCase> named_cases() {
  std::vector<IdentityCase> out;

  out.push_back(make_case<Rational>(
      "pod-decomposition", "Pod as W1 and false pentagonal pieces", 4, [](const QR& z) {
        auto op = one_plus_q(z);
        auto A = op * z.inf(qpow(1, -1), 2) * z.inv(z.inf(qpow(1), 1)) * z.q(-1);
        auto rhs = A * (z.one() - z.sum(gen::w1())) -
                   op * z.q(-1) * z.sum(gen::false_pentagonal());
        return Sides<Rational>{z.sum(gen::pod(false)), rhs};
      }));

  out.push_back(make_case<Rational>(
      "pev-decomposition", "Pev through phi(-q) and (q)^2/(-q)^2", 4, [](const QR& z) {
        auto op = one_plus_q(z);
        auto P = z.inf(qpow(1), 1);
        auto Pm = z.inf(qpow(1, -1), 1);
        auto rhs = op * z.inv(P) * (z.one() - P * P * z.inv(Pm * Pm)) * R(1, 2) +
                   op * (scale_q(z.sum(gen::phi()), R(-1)) - z.one());
        return Sides<Rational>{z.sum(gen::pev(false)), rhs};
      }));

  out.push_back(make_case<ZetaPoly>(
      "pod2-decomposition", "Pod(z;q) through F1 and f(zq,q^2;q^2)", 4, [](const QZ& z) {
        auto op = one_plus_q(z);
        auto inv_zq = z.m(zq(-1, -1));
        auto pre = op * z.inf(qpow(3, -1), 2) *
                   z.inv(z.inf(zq(1, 2), 2) * z.inf(qpow(3), 2)) * inv_zq;
        auto f = z.sum(gen::choi_f(zq(1, 1), qpow(2), 2));
        auto rhs = pre * z.sum(gen::F1()) - op * inv_zq * f + op * inv_zq;
        return Sides<ZetaPoly>{z.sum(gen::pod(true)), rhs};
      }));

  out.push_back(make_case<Rational>(
      "pod2-at-q", "Pod(q;q) through mu(-q) and f(q^2)", 4, [](const QR& z) {
        QR s = z;
        s.sub = ZetaSubstitution::to_q_power(1);
        auto op = one_plus_q(z);
        auto pre = op * z.inf(qpow(1, -1), 2) * z.inv(z.inf(qpow(1), 2) * z.inf(qpow(1), 2)) *
                   z.q(-2);
        auto mu_neg = scale_q(z.sum(gen::mu()), R(-1));
        QR h{z.N / 2 + 2};
        auto f_q2 = substitute_q_power(h.sum(gen::f3()), 2);
        auto rhs = pre * (mu_neg - op) - op * z.q(-2) * (f_q2 - z.one());
        return Sides<Rational>{s.sum(gen::pod(true)), rhs};
      }));

  out.push_back(make_case<Rational>(
      "pod1-decomposition", "Pod1 through W1 and the false pentagonal series", 4,
      [](const QR& z) {
        auto op = one_plus_q(z);
        auto P = z.inf(qpow(1), 1);
        auto B = z.inf(qpow(3, -1), 2);
        auto rhs = z.q(1) * B * z.inv(P) * z.sum(gen::w1()) +
                   z.poly({qpow(0), qpow(1, -2), qpow(2, -1)}) * B * z.inv(op * P) +
                   z.q(1) * z.inv(op) * z.sum(gen::false_pentagonal()) - z.inv(op);
        return Sides<Rational>{z.sum(gen::pod1()), rhs};
      }));

  out.push_back(make_case<ZetaPoly>(
      "pev2-decomposition", "Pev(z;q) through a product, F2 and the nu real form", 4,
      [](const QZ& z) {
        auto op = one_plus_q(z);
        auto t1 = z.m(zq(1, 1)) * z.inf(qpow(2), 2) * z.inf(zq(1, 3), 2) * z.inf(zq(-1, -1), 2) *
                  z.inv(z.inf(qpow(3, -1), 2) * z.inf(zq(1, 2, -1), 2));
        auto t2 = op * z.inf(qpow(2, -1), 2) * z.inf(zq(1, 1, -1), 2) *
                  z.inv(z.inf(zq(1, 2), 2)) * z.sum(gen::F2());
        auto t3 = op * (z.sum(gen::nu_real()) - z.one());
        return Sides<ZetaPoly>{z.sum(gen::pev(true)), t1 + t2 + t3};
      }));

  out.push_back(make_case<Rational>(
      "pev2-at-minus-q", "Pev(-q;q) through nu(-q) and products", 4, [](const QR& z) {
        QR s = z;
        s.sub = ZetaSubstitution::to_q_power(1, -1);
        auto rhs = -one_plus_q(z) -
                   z.inf(qpow(2, -1), 4) * z.inf(qpow(8), 8) * z.inv(z.inf(qpow(6), 4)) * R(2) +
                   z.inf(qpow(4), 4) * z.inv(z.inf(qpow(3, -1), 2)) * R(2) +
                   z.poly({qpow(0), qpow(2, -1)}) * scale_q(z.sum(gen::nu3()), R(-1));
        return Sides<Rational>{s.sum(gen::pev(true)), rhs};
      }));

  out.push_back(make_case<Rational>(
      "pev2-at-minus-1", "Pev(-1;q) = (1+q)((q;q^2)_inf - 1)", 2, [](const QR& z) {
        QR s = z;
        s.sub = ZetaSubstitution::to_q_power(0, -1);
        auto rhs = one_plus_q(z) * (z.inf(qpow(1), 2) - z.one());
        return Sides<Rational>{s.sum(gen::pev(true)), rhs};
      }));

  out.push_back(make_case<Rational>(
      "phi-f-theta", "2 phi(-q) - f(q) = Theta(-q)^2/(q)_inf", 2, [](const QR& z) {
        auto lhs = scale_q(z.sum(gen::phi()), R(-1)) * R(2) - z.sum(gen::f3());
        auto th = z.sum(gen::theta_neg_q());
        return Sides<Rational>{lhs, th * th * z.inv(z.inf(qpow(1), 1))};
      }));

  out.push_back(make_case<ZetaPoly>(
      "vod2-rank", "q Vod(z;q) through R2(-z;q) and R(-z;q^2)", 4, [](const QZ& z) {
        const ZetaSubstitution neg{R(-1), 1, 0};
        auto r2 = sum_terms<ZetaPoly>(gen::m2rank(), z.N, neg);
        auto r = substitute_q_power(sum_terms<ZetaPoly>(gen::rank(), z.N / 2 + 1, neg), 2);
        auto rhs = z.inf(qpow(1, -1), 2) * (r2 - z.one()) *
                       z.inv(z.inf(zq(1, 1), 2) * z.inf(zq(-1, 1), 2)) -
                   r + z.one();
        return Sides<ZetaPoly>{z.q(1) * z.sum(gen::vod(true)), rhs};
      }));

  out.push_back(make_case<Rational>(
      "g-pev-p", "g(n) + pev(n-1) = 2p(n-1), counting the empty overpartition in pev(0)", 2,
      [](const QR& z) {
        auto lhs = z.sum(gen::g_series()) + z.q(1) * (z.one() + z.sum(gen::pev(false)));
        return Sides<Rational>{lhs, z.q(1, 2) * z.sum(gen::partitions())};
      }));

  out.push_back(make_case<Rational>(
      "false-pentagonal-sum", "sum q^(2n^2-n)/(-q)_2n equals the false pentagonal series", 2,
      [](const QR& z) {
        return Sides<Rational>{z.sum(sgn_sum_lhs()), z.sum(gen::false_pentagonal())};
      }));

  out.push_back(make_case<Rational>(
      "w1-tail", "sum q^(n(n+1))/((1+q^(2n-1))(-q^2;q^2)_n) = -q(W1-1)/(1-q)", 2,
      [](const QR& z) {
        auto lhs = z.sum(adhoc(1, [](long n) {
          Term t{qpow(n * (n + 1)), {}, {}};
          t.den(poch(qpow(2 * n - 1, -1), 1, 1)).den(poch(qpow(2, -1), 2, n));
          return t;
        }));
        auto rhs = -(z.q(1) * z.inv(z.poly({qpow(0), qpow(1, -1)})) *
                     (z.sum(gen::w1()) - z.one()));
        return Sides<Rational>{lhs, rhs};
      }));

  out.push_back(make_case<Rational>(
      "w1-hecke", "W1 equals its indefinite theta form", 1, [](const QR& z) {
        return Sides<Rational>{z.sum(gen::w1()), z.sum(gen::w1_hecke())};
      }));

  out.push_back(make_case<Rational>(
      "theta-squared", "sum (-1)^n (q^2;q^2)_(n-1) q^(n^2)/(-q)_2n = ((q)^2/(-q)^2 - 1)/4", 2,
      [](const QR& z) {
        auto lhs = z.sum(adhoc(1, [](long n) {
          Term t{qpow(n * n, sign(n)), {}, {}};
          t.num(poch(qpow(2), 2, n - 1)).den(poch(qpow(1, -1), 1, 2 * n));
          return t;
        }));
        auto P = z.inf(qpow(1), 1);
        auto Pm = z.inf(qpow(1, -1), 1);
        return Sides<Rational>{lhs, (P * P * z.inv(Pm * Pm) - z.one()) * R(1, 4)};
      }));

  out.push_back(make_case<Rational>(
      "sgn-sum-shift",
      "sum q^((2n-1)(n-1))/((1+q^2n)(-q)_(2n-2)) = 1 - q sum q^(2n^2-n)/(-q)_2n", 2,
      [](const QR& z) {
        auto lhs = z.sum(adhoc(1, [](long n) {
          Term t{qpow((2 * n - 1) * (n - 1)), {}, {}};
          t.den(poch(qpow(2 * n, -1), 1, 1)).den(poch(qpow(1, -1), 1, 2 * n - 2));
          return t;
        }));
        return Sides<Rational>{lhs, z.one() - z.q(1) * z.sum(sgn_sum_lhs())};
      }));

  out.push_back(make_case<Rational>(
      "garvan-at-minus-inv-q",
      "sum q^(n(n-1))/((1+q^(2n-1))(-q^2;q^2)_(n-1)) = W1(q)", 2, [](const QR& z) {
        auto lhs = z.sum(adhoc(1, [](long n) {
          Term t{qpow(n * (n - 1)), {}, {}};
          t.den(poch(qpow(2 * n - 1, -1), 1, 1)).den(poch(qpow(2, -1), 2, n - 1));
          return t;
        }));
        return Sides<Rational>{lhs, z.sum(gen::w1())};
      }));

  out.push_back(make_case<Rational>(
      "kang", "sum q^(n(n+1)/2)/(-q)_(n+1) = 1", 1, [](const QR& z) {
        auto lhs = z.sum(adhoc(0, [](long n) {
          Term t{qpow(n * (n + 1) / 2), {}, {}};
          t.den(poch(qpow(1, -1), 1, n + 1));
          return t;
        }));
        return Sides<Rational>{lhs, z.one()};
      }));

  out.push_back(make_case<Rational>(
      "donato", "sum n q^(n(n-1)/2)/(-q)_n = sigma(q)", 1, [](const QR& z) {
        auto lhs = z.sum(adhoc(0, [](long n) {
          Term t{qpow(n * (n - 1) / 2, R(n)), {}, {}};
          t.den(poch(qpow(1, -1), 1, n));
          return t;
        }));
        return Sides<Rational>{lhs, z.sum(gen::sigma())};
      }));

  out.push_back(make_case<Rational>(
      "theta-product", "Theta(-q) = (q)_inf^2/(q^2;q^2)_inf", 1, [](const QR& z) {
        auto P = z.inf(qpow(1), 1);
        return Sides<Rational>{z.sum(gen::theta_neg_q()), P * P * z.inv(z.inf(qpow(2), 2))};
      }));

  out.push_back(make_case<Rational>(
      "unimodal-false-theta", "U(q) = P(q)^2 sum (-1)^n q^(n(n+1)/2)", 1, [](const QR& z) {
        auto P = z.sum(gen::partitions());
        auto ft = z.sum(adhoc(0, [](long n) { return Term{qpow(n * (n + 1) / 2, sign(n)), {}, {}}; }));
        return Sides<Rational>{z.sum(gen::unimodal()), P * P * ft};
      }));

  out.push_back(make_case<Rational>(
      "overpartition-theta", "Pbar(q) = 1/Theta(-q)", 1, [](const QR& z) {
        return Sides<Rational>{z.sum(gen::overpartitions()), z.inv(z.sum(gen::theta_neg_q()))};
      }));

  out.push_back(make_case<Rational>(
      "agl", "1 + 4 sum (-1)^(n+1) q^(2n+1)/(1+q^(2n+1)) = (q)^2/(-q)^2", 1, [](const QR& z) {
        auto s = z.sum(adhoc(0, [](long n) {
          Term t{qpow(2 * n + 1, sign(n + 1)), {}, {}};
          t.den(poch(qpow(2 * n + 1, -1), 1, 1));
          return t;
        }));
        auto P = z.inf(qpow(1), 1);
        auto Pm = z.inf(qpow(1, -1), 1);
        return Sides<Rational>{z.one() + s * R(4), P * P * z.inv(Pm * Pm)};
      }));

  // (1+z) nu(iq, i(zq)^(1/2); q) against its real form, at z = ±q^j.
  for (auto [sgn_, j] : {std::pair{1, 0L}, {1, 1L}, {1, 2L}, {-1, 1L}}) {
    const ZetaSubstitution at = ZetaSubstitution::to_q_power(j, sgn_);
    out.push_back(make_case<Rational>(
        "nu-real-form[z=" + pretty(Monomial{R(sgn_), 0, j}) + "]",
        "(1+z) nu(iq, i(zq)^(1/2); q) equals sum (-1)^n z^n q^(n^2)/(-zq^2;q^2)_n", 2,
        [at](const QR& z) {
          QR s = z;
          s.sub = at;
          auto nu = s.sum(gen::choi_nu(qpow(2, -1), zq(1, 1, -1), 1));
          return Sides<Rational>{s.poly({qpow(0), zq(1, 0)}) * nu, s.sum(gen::nu_real())};
        }));
  }
  return out;
}

Monomial mq(long e, long c = 1) { return qpow(e, R(c)); }
Monomial mz(long e, long c = 1) { return zq(1, e, R(c)); }

LemmaParams lp(std::map<std::string, Monomial> v, long base = 1) { return {std::move(v), base}; }

IdentityRegistry build_default() {
  IdentityRegistry reg;
  reg.add(named_cases());

  reg.add(register_parametrized(
      "ramanujan-1", {lp({{"a", mq(0, -1)}, {"b", mq(1, -1)}, {"c", mq(1)}}, 2),
                      lp({{"a", mz(0, -1)}, {"b", mq(1, -1)}, {"c", mq(1)}}, 2),
                      lp({{"a", mz(-1, -1)}, {"b", zq(-1, -1, -1)}, {"c", mq(-1)}}, 2)}));
  reg.add(register_parametrized(
      "ramanujan-2", {lp({{"a", mq(0)}, {"b", mq(1)}, {"c", mq(0)}}, 2),
                      lp({{"a", mq(0)}, {"b", mz(1)}, {"c", mz(0)}}, 2)}));
  for (const char* fam : {"euler-1", "euler-2"}) {
    reg.add(register_parametrized(fam, {lp({{"t", mq(1)}}), lp({{"t", mq(1, -1)}}),
                                        lp({{"t", mq(2)}}), lp({{"t", mz(1)}})}));
  }
  reg.add(register_parametrized("garvan", {lp({{"z", mq(-1, -1)}}), lp({{"z", mq(1)}}),
                                           lp({{"z", mq(1, -1)}}), lp({{"z", mz(0)}})}));
  reg.add(register_parametrized(
      "lost-notebook", {lp({{"a", mq(1)}, {"b", mq(1)}}), lp({{"a", mq(1, -1)}, {"b", mq(2)}}),
                        lp({{"a", mq(2, -1)}, {"b", mq(-1, -1)}}, 2)}));
  {
    std::vector<LemmaParams> hs = {lp({{"a", mq(1)}, {"b", mq(2)}, {"c", mq(4)}})};
    // a = -q/t, b = q^2, c = -q^(2k+4) in base q^2 at t = q^m
    for (auto [k, m] : {std::pair{0L, 1L}, {1L, 2L}, {2L, 3L}}) {
      hs.push_back(lp({{"a", mq(1 - m, -1)}, {"b", mq(2)}, {"c", mq(2 * k + 4, -1)}}, 2));
    }
    reg.add(register_parametrized("heine", hs));
  }
  reg.add(register_parametrized("andrews-pentagonal",
                                {lp({{"z", mq(0, -1)}}), lp({{"z", mq(1)}}), lp({{"z", mz(0)}})}));
  {
    // base q^2, b = -zq, c = -z, d = -1 at z = q^j, a = q^i (i != j+1)
    std::vector<LemmaParams> bs;
    for (auto [i, j] : {std::pair{1L, 1L}, {1L, 2L}, {3L, 1L}, {2L, 3L}}) {
      bs.push_back(lp({{"a", mq(i)}, {"b", mq(j + 1, -1)}, {"c", mq(j, -1)}, {"d", mq(0, -1)}},
                      2));
    }
    bs.push_back(lp({{"a", mq(3)}, {"b", mz(1, -1)}, {"c", mz(0, -1)}, {"d", mq(0, -1)}}, 2));
    reg.add(register_parametrized("bem-1", bs));
  }
  reg.add(register_parametrized(
      "bem-2", {lp({{"z", mq(0, -1)}, {"c", mq(0, -1)}, {"d", mq(1)}}, 2),
                lp({{"z", mq(0, -1)}, {"c", mq(0, -1)}, {"d", mq(-1)}}, 2),
                lp({{"z", mz(0)}, {"c", mq(0, -1)}, {"d", mq(1)}}, 2)}));
  reg.add(register_parametrized("agarwal",
                                {lp({{"z", mq(1)}}), lp({{"z", mq(1, -1)}}), lp({{"z", mz(0)}})}));
  reg.add(register_parametrized(
      "rogers-fine",
      {lp({{"alpha", Monomial{R(0), 0, 0}}, {"beta", mq(4, -1)}, {"t", mq(1, -1)}}, 2),
       lp({{"alpha", mq(-1)}, {"beta", mq(2, -1)}, {"t", mq(1, -1)}}, 2),
       lp({{"alpha", mq(1)}, {"beta", mq(2)}, {"t", mq(1)}}),
       lp({{"alpha", mq(1, -1)}, {"beta", mq(3)}, {"t", mq(2)}})}));

  // Short aliases accepted by `qlab verify --identity`.
  const std::pair<const char*, const char*> aliases[] = {
      {"thm1.1", "pod-decomposition"},
      {"thm1.3", "pev-decomposition"},
      {"cor1.12", "phi-f-theta"},
  };
  for (const auto& [name, target] : aliases) reg.alias(name, target);
  return reg;
}

}  // namespace

const std::vector<std::string>& lemma_families() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& f : families()) v.push_back(f.id);
    return v;
  }();
  return ids;
}

std::vector<IdentityCase> register_parametrized(const std::string& lemma_id,
                                                const std::vector<LemmaParams>& substitutions) {
  const auto& fs = families();
  auto it = std::find_if(fs.begin(), fs.end(), [&](const Family& f) { return f.id == lemma_id; });
  if (it == fs.end()) throw UnknownIdentity("unknown lemma family '" + lemma_id + "'");
  std::vector<IdentityCase> out;
  for (const auto& p : substitutions) {
    if (p.base < 1) throw std::invalid_argument("lemma base exponent must be positive");
    const std::string id = case_id(lemma_id, p);
    IdentityCase c = has_zeta(p)
                         ? make_case<ZetaPoly>(id, it->description, 6,
                                               [fn = it->two, p](const QZ& z) { return fn(z, p); })
                         : make_case<Rational>(id, it->description, 6,
                                               [fn = it->one, p](const QR& z) { return fn(z, p); });
    c.compare(2);  // guard: throws on ill-posed substitutions
    out.push_back(std::move(c));
  }
  return out;
}

void IdentityRegistry::add(IdentityCase c) {
  for (const auto& e : cases_) {
    if (e.id == c.id) throw std::invalid_argument("duplicate identity id '" + c.id + "'");
  }
  cases_.push_back(std::move(c));
}

void IdentityRegistry::add(std::vector<IdentityCase> cs) {
  for (auto& c : cs) add(std::move(c));
}

const IdentityCase& IdentityRegistry::find(const std::string& id) const {
  std::string key = id;
  if (auto a = aliases_.find(id); a != aliases_.end()) key = a->second;
  for (const auto& c : cases_) {
    if (c.id == key) return c;
  }
  throw UnknownIdentity("unknown identity '" + id + "'");
}

VerificationReport run_case(const IdentityCase& c, long order) {
  VerificationReport r;
  r.id = c.id;
  r.order = order;
  r.bivariate = c.bivariate;
  try {
    Comparison cmp = c.compare(order);
    r.mismatch = cmp.mismatch;
    r.status = cmp.mismatch ? Status::Fail : Status::Pass;
  } catch (const std::exception& e) {
    r.status = Status::Fail;
    r.error = e.what();
  }
  return r;
}

VerificationReport IdentityRegistry::verify(const std::string& id, long order) const {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  return run_case(find(id), order);
}

std::vector<VerificationReport> IdentityRegistry::verify_all(long order,
                                                             std::optional<long> bivariate_order,
                                                             unsigned workers) const {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  const long biv = bivariate_order ? *bivariate_order : std::min(order, 60L);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<VerificationReport> out(cases_.size());
  for (std::size_t start = 0; start < cases_.size(); start += workers) {
    std::size_t stop = std::min(cases_.size(), start + workers);
    std::vector<std::future<VerificationReport>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      const IdentityCase* c = &cases_[i];
      long ord = c->bivariate ? biv : order;
      batch.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async,
                                 [c, ord] { return run_case(*c, ord); }));
    }
    for (std::size_t i = start; i < stop; ++i) out[i] = batch[i - start].get();
  }
  return out;
}

const IdentityRegistry& default_registry() {
  static const IdentityRegistry reg = build_default();
  return reg;
}

}  // namespace qlab
