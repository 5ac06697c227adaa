#include "qlab/builders.hpp"

#include <algorithm>
#include <cctype>

namespace qlab {
namespace {

Rational sign(long n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

// Valuation gained from the negative-exponent factors of a denominator.
long den_gain(long start, long step, std::optional<long> length) {
  return -negative_exponent_sum(start, step, length);
}

// q-exponent of a monomial after ζ ↦ (·)q^j.
long q_exp(const Monomial& m, long j) { return m.q + static_cast<long>(m.zeta) * j; }

TermGenerator single(std::string name, Term t) {
  TermGenerator g;
  g.name = std::move(name);
  g.first = 0;
  g.last = 0;
  g.terms = [t](long) { return std::vector<Term>{t}; };
  g.bound = [](long, long) { return 0L; };
  return g;
}

}  // namespace

namespace gen {

TermGenerator partitions() {
  Term t;
  t.den(poch_inf(qpow(1), 1));
  return single("P", t);
}

TermGenerator overpartitions() {
  Term t;
  t.num(poch_inf(qpow(1, -1), 1)).den(poch_inf(qpow(1), 1));
  return single("Pbar", t);
}

TermGenerator theta_neg_q() {
  TermGenerator g;
  g.name = "Theta_neg_q";
  g.terms = [](long k) {
    if (k == 0) return std::vector<Term>{Term{}};
    // n = k and n = −k
    Term t{qpow(k * k, sign(k)), {}, {}};
    return std::vector<Term>{t, t};
  };
  g.bound = [](long k, long) { return k * k; };
  return g;
}

TermGenerator unimodal() {
  TermGenerator g;
  g.name = "U";
  g.terms = [](long n) {
    Term t{qpow(n), {}, {}};
    t.den(poch(qpow(1), 1, n)).den(poch(qpow(1), 1, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n; };
  return g;
}

TermGenerator concave() {
  TermGenerator g;
  g.name = "V";
  g.terms = [](long n) {
    Term t{qpow(n), {}, {}};
    t.den(poch_inf(qpow(n + 1), 1)).den(poch_inf(qpow(n + 1), 1));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n; };
  return g;
}

TermGenerator sigma() {
  TermGenerator g;
  g.name = "sigma";
  g.terms = [](long n) {
    Term t{qpow(n * (n + 1) / 2), {}, {}};
    t.den(poch(qpow(1, -1), 1, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n * (n + 1) / 2; };
  return g;
}

TermGenerator g_series() {
  TermGenerator g;
  g.name = "g_series";
  g.terms = [](long n) {
    Term t{qpow(2 * n + 1), {}, {}};
    t.den(poch_inf(qpow(2 * n + 1), 1)).den(poch(qpow(2 * n + 2), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return 2 * n + 1; };
  return g;
}

TermGenerator w1() {
  TermGenerator g;
  g.name = "W1";
  g.terms = [](long n) {
    Term t{qpow(n * (n + 1) / 2, sign(n)), {}, {}};
    t.num(poch(qpow(1), 1, n)).den(poch(qpow(1, -1), 1, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n * (n + 1) / 2; };
  return g;
}

TermGenerator w1_hecke() {
  TermGenerator g;
  g.name = "W1_hecke";
  g.terms = [](long n) {
    std::vector<Term> out;
    Term t{qpow(2 * n * n + n, sign(n)), {}, {}};
    t.num(poch(qpow(2 * n + 1), 1, 1));
    out.push_back(t);
    for (long j = 1; j <= n; ++j) {
      Term s{qpow(2 * n * n + n - j * j, 2 * sign(n + j)), {}, {}};
      s.num(poch(qpow(2 * n + 1), 1, 1));
      out.push_back(s);
    }
    return out;
  };
  g.bound = [](long n, long) { return n * n + n; };
  return g;
}

TermGenerator phi() {
  TermGenerator g;
  g.name = "phi";
  g.terms = [](long n) {
    Term t{qpow(n * n), {}, {}};
    t.den(poch(qpow(2, -1), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n * n; };
  return g;
}

TermGenerator f3() {
  TermGenerator g;
  g.name = "f3";
  g.terms = [](long n) {
    Term t{qpow(n * n), {}, {}};
    t.den(poch(qpow(1, -1), 1, n)).den(poch(qpow(1, -1), 1, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n * n; };
  return g;
}

TermGenerator mu() {
  TermGenerator g;
  g.name = "mu";
  g.terms = [](long n) {
    Term t{qpow(n * n, sign(n)), {}, {}};
    t.num(poch(qpow(1), 2, n)).den(poch(qpow(2, -1), 2, n)).den(poch(qpow(2, -1), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n * n; };
  return g;
}

TermGenerator nu3() {
  TermGenerator g;
  g.name = "nu3";
  g.terms = [](long n) {
    Term t{qpow(n * (n + 1)), {}, {}};
    t.den(poch(qpow(1, -1), 2, n + 1));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return n * (n + 1); };
  return g;
}

TermGenerator F1() {
  TermGenerator g;
  g.name = "F1";
  g.first = 1;
  g.has_zeta = true;
  g.terms = [](long n) {
    Term t{zq(static_cast<int>(n), n * (n + 1)), {}, {}};
    t.num(poch(qpow(-1, -1), 2, n));
    t.den(poch(zq(1, 1, -1), 2, n)).den(poch(qpow(2, -1), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long j) { return n * (n + 1) + n * j - 1 + den_gain(1 + j, 2, n); };
  g.stable_from_for = convex_stable_from(g.bound, g.first);
  return g;
}

TermGenerator F2() {
  TermGenerator g;
  g.name = "F2";
  g.has_zeta = true;
  g.terms = [](long n) {
    Term t{qpow(n, sign(n)), {}, {}};
    t.num(poch(zq(-1, 0, -1), 2, n)).den(poch(qpow(2, -1), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long j) { return n + negative_exponent_sum(-j, 2, n); };
  g.stable_from_for = convex_stable_from(g.bound, 0);
  return g;
}

TermGenerator rank() {
  TermGenerator g;
  g.name = "R";
  g.has_zeta = true;
  g.terms = [](long n) {
    Term t{qpow(n * n), {}, {}};
    t.den(poch(zq(1, 1), 1, n)).den(poch(zq(-1, 1), 1, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long j) { return n * n + den_gain(1 + j, 1, n) + den_gain(1 - j, 1, n); };
  g.stable_from_for = convex_stable_from(g.bound, 0);
  return g;
}

TermGenerator m2rank() {
  TermGenerator g;
  g.name = "R2";
  g.has_zeta = true;
  g.terms = [](long n) {
    Term t{qpow(n * n), {}, {}};
    t.num(poch(qpow(1, -1), 2, n));
    t.den(poch(zq(1, 2), 2, n)).den(poch(zq(-1, 2), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long j) { return n * n + den_gain(2 + j, 2, n) + den_gain(2 - j, 2, n); };
  g.stable_from_for = convex_stable_from(g.bound, 0);
  return g;
}

TermGenerator pod(bool refined) {
  TermGenerator g;
  g.name = refined ? "Pod_2var" : "Pod";
  g.has_zeta = refined;
  const int z = refined ? 1 : 0;
  g.terms = [z](long n) {
    std::vector<Term> out;
    // smallest part odd, equal to 2n+1
    Term a{qpow(2 * n + 1), {}, {}};
    a.num(poch_inf(qpow(2 * n + 3, -1), 2));
    a.den(poch_inf(zq(z, 2 * n + 2), 2)).den(poch_inf(qpow(2 * n + 3), 2));
    out.push_back(a);
    if (n >= 1) {
      // smallest part even, equal to 2n
      Term b{qpow(2 * n), {}, {}};
      b.num(poch_inf(qpow(2 * n + 1, -1), 2));
      b.den(poch_inf(zq(z, 2 * n), 2)).den(poch_inf(qpow(2 * n + 1), 2));
      out.push_back(b);
    }
    return out;
  };
  g.bound = [](long n, long) { return n == 0 ? 1 : 2 * n; };
  return g;
}

TermGenerator pev(bool refined) {
  TermGenerator g;
  g.name = refined ? "Pev_2var" : "Pev";
  g.has_zeta = refined;
  const int z = refined ? 1 : 0;
  g.terms = [z](long n) {
    std::vector<Term> out;
    Term a{zq(z, 2 * n + 1), {}, {}};
    a.num(poch_inf(qpow(2 * n + 2, -1), 2)).num(poch_inf(zq(z, 2 * n + 3, -1), 2));
    a.den(poch_inf(zq(z, 2 * n + 2), 2));
    out.push_back(a);
    if (n >= 1) {
      Term b{zq(z, 2 * n), {}, {}};
      b.num(poch_inf(qpow(2 * n, -1), 2)).num(poch_inf(zq(z, 2 * n + 1, -1), 2));
      b.den(poch_inf(zq(z, 2 * n), 2));
      out.push_back(b);
    }
    return out;
  };
  g.bound = [z](long n, long j) { return (n == 0 ? 1 : 2 * n) + z * j; };
  return g;
}

TermGenerator pod1() {
  TermGenerator g;
  g.name = "Pod1";
  g.first = 1;
  g.terms = [](long n) {
    Term t{qpow(2 * n), {}, {}};
    t.num(poch_inf(qpow(2 * n + 3, -1), 2));
    t.den(poch_inf(qpow(2 * n), 2)).den(poch_inf(qpow(2 * n + 3), 2));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return 2 * n; };
  return g;
}

TermGenerator vod(bool refined) {
  TermGenerator g;
  g.name = refined ? "Vod_2var" : "Vod";
  g.has_zeta = refined;
  const int z = refined ? 1 : 0;
  g.terms = [z](long n) {
    Term t{qpow(2 * n), {}, {}};
    t.num(poch_inf(qpow(2 * n + 1, -1), 2));
    t.den(poch_inf(zq(z, 2 * n + 1), 2)).den(poch_inf(zq(-z, 2 * n + 1), 2));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long) { return 2 * n; };
  return g;
}

TermGenerator false_pentagonal() {
  TermGenerator g;
  g.name = "false_pentagonal";
  g.first = 1;
  g.terms = [](long k) {
    // sgn(k)q^{k(3k−1)/2} for k and −k; the k = 0 term vanishes
    return std::vector<Term>{Term{qpow(k * (3 * k - 1) / 2), {}, {}},
                             Term{qpow(k * (3 * k + 1) / 2, -1), {}, {}}};
  };
  g.bound = [](long k, long) { return k * (3 * k - 1) / 2; };
  return g;
}

TermGenerator choi_f(const Monomial& zeta1, const Monomial& zeta2, long k) {
  if (k < 1) throw std::invalid_argument("choi_f: base exponent must be positive");
  TermGenerator g;
  g.name = "f_2var";
  g.has_zeta = zeta1.zeta != 0 || zeta2.zeta != 0;
  const Monomial d1 = -zeta2;
  const Monomial d2 = -(zeta1 * zeta2 * qpow(-k));
  g.terms = [=](long n) {
    Term t{zeta1.pow(n) * zeta2.pow(2 * n) * qpow(k * (n * n - 3 * n)), {}, {}};
    t.den(poch(d1, k, n)).den(poch(d2, k, n));
    return std::vector<Term>{t};
  };
  g.bound = [=](long n, long j) {
    return n * q_exp(zeta1, j) + 2 * n * q_exp(zeta2, j) + k * (n * n - 3 * n) +
           den_gain(q_exp(d1, j), k, n) + den_gain(q_exp(d2, j), k, n);
  };
  g.stable_from_for = convex_stable_from(g.bound, 0);
  return g;
}

TermGenerator choi_nu(const Monomial& zeta1_sq, const Monomial& zeta2_sq, long k) {
  if (k < 1) throw std::invalid_argument("choi_nu: base exponent must be positive");
  TermGenerator g;
  g.name = "nu_2var";
  g.has_zeta = zeta1_sq.zeta != 0 || zeta2_sq.zeta != 0;
  const Monomial d = -(zeta1_sq * zeta2_sq * qpow(-3 * k));
  g.terms = [=](long n) {
    Term t{zeta2_sq.pow(n) * qpow(k * n * (n - 1)), {}, {}};
    t.den(poch(d, 2 * k, n + 1));
    return std::vector<Term>{t};
  };
  g.bound = [=](long n, long j) {
    return n * q_exp(zeta2_sq, j) + k * n * (n - 1) + den_gain(q_exp(d, j), 2 * k, n + 1);
  };
  g.stable_from_for = convex_stable_from(g.bound, 0);
  return g;
}

TermGenerator nu_real() {
  TermGenerator g;
  g.name = "nu_real";
  g.has_zeta = true;
  g.terms = [](long n) {
    Term t{zq(static_cast<int>(n), n * n, sign(n)), {}, {}};
    t.den(poch(zq(1, 2, -1), 2, n));
    return std::vector<Term>{t};
  };
  g.bound = [](long n, long j) { return n * n + n * j + den_gain(2 + j, 2, n); };
  g.stable_from_for = convex_stable_from(g.bound, 0);
  return g;
}

}  // namespace gen

const std::vector<SeriesCatalogEntry>& series_catalog() {
  using A = Arity;
  static const std::vector<SeriesCatalogEntry> catalog = {
      {"P", A::OneVariable, "partition generating function 1/(q)_inf", gen::partitions},
      {"Pbar", A::OneVariable, "overpartition generating function (-q)_inf/(q)_inf",
       gen::overpartitions},
      {"Theta_neg_q", A::OneVariable, "theta function sum_{n in Z} (-1)^n q^(n^2)",
       gen::theta_neg_q},
      {"U", A::OneVariable, "unimodal sequences sum q^n/(q)_n^2", gen::unimodal},
      {"V", A::OneVariable, "concave compositions sum q^n/(q^(n+1))_inf^2", gen::concave},
      {"sigma", A::OneVariable, "sigma(q) = sum q^(n(n+1)/2)/(-q)_n", gen::sigma},
      {"g_series", A::OneVariable,
       "restricted colored partitions sum q^(2n+1)/((q^(2n+1))_inf (q^(2n+2);q^2)_n)",
       gen::g_series},
      {"W1", A::OneVariable, "W1(q) = sum (-1)^n (q)_n q^(n(n+1)/2)/(-q)_n", gen::w1},
      {"W1_hecke", A::OneVariable, "indefinite theta form of W1", gen::w1_hecke},
      {"phi", A::OneVariable, "third order phi(q) = sum q^(n^2)/(-q^2;q^2)_n", gen::phi},
      {"f3", A::OneVariable, "third order f(q) = sum q^(n^2)/(-q)_n^2", gen::f3},
      {"mu", A::OneVariable, "second order mu(q) = sum (-1)^n (q;q^2)_n q^(n^2)/(-q^2;q^2)_n^2",
       gen::mu},
      {"nu3", A::OneVariable, "third order nu(q) = sum q^(n(n+1))/(-q;q^2)_(n+1)", gen::nu3},
      {"F1", A::TwoVariable,
       "F1(z;q) = sum_{n>=1} (-1/q;q^2)_n z^n q^(n(n+1))/(-zq,-q^2;q^2)_n", gen::F1},
      {"F2", A::TwoVariable, "F2(z;q) = sum (-1/z;q^2)_n (-1)^n q^n/(-q^2;q^2)_n", gen::F2},
      {"f_2var", A::TwoVariable, "f(z1,z2;q) at z1 = zq, z2 = q^2, base q^2",
       [] { return gen::choi_f(zq(1, 1), qpow(2), 2); }},
      {"nu_2var", A::TwoVariable,
       "(1+z) nu(iq, i(zq)^(1/2); q) = sum (-1)^n z^n q^(n^2)/(-zq^2;q^2)_n", gen::nu_real},
      {"R", A::TwoVariable, "rank generating function sum q^(n^2)/(zq,q/z)_n", gen::rank},
      {"R2", A::TwoVariable,
       "M2-rank generating function sum (-q;q^2)_n q^(n^2)/(zq^2,q^2/z;q^2)_n", gen::m2rank},
      {"Pod", A::OneVariable, "overpartitions with non-overlined smallest and even parts",
       [] { return gen::pod(false); }},
      {"Pod_2var", A::TwoVariable, "Pod refined by the number of even parts",
       [] { return gen::pod(true); }},
      {"Pev", A::OneVariable, "overpartitions without repeated odd parts, odd parts plain",
       [] { return gen::pev(false); }},
      {"Pev_2var", A::TwoVariable, "Pev refined by odd parts plus non-overlined even parts",
       [] { return gen::pev(true); }},
      {"Pod1", A::OneVariable, "smallest part even, odd parts exceed it by at least three",
       gen::pod1},
      {"Vod", A::OneVariable, "restricted concave compositions with even central part",
       [] { return gen::vod(false); }},
      {"Vod_2var", A::TwoVariable, "Vod refined by the rank relative to non-overlined parts",
       [] { return gen::vod(true); }},
      {"false_pentagonal", A::OneVariable, "sum_{n in Z} sgn(n) q^(n(3n-1)/2)",
       gen::false_pentagonal},
  };
  return catalog;
}

namespace {
std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

void check_order(long order) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
}
}  // namespace

const SeriesCatalogEntry& find_series(std::string_view name) {
  const auto& cat = series_catalog();
  for (const auto& e : cat) {
    if (e.name == name) return e;
  }
  // Case-insensitive fallback, accepted only when unambiguous.
  const SeriesCatalogEntry* hit = nullptr;
  for (const auto& e : cat) {
    if (lower(e.name) == lower(name)) {
      if (hit) throw UnknownSeries("ambiguous series name '" + std::string(name) + "'");
      hit = &e;
    }
  }
  if (!hit) throw UnknownSeries("unknown series '" + std::string(name) + "'");
  return *hit;
}

LaurentSeries build(std::string_view name, long order) {
  check_order(order);
  const auto& e = find_series(name);
  if (e.arity == Arity::TwoVariable) {
    throw std::invalid_argument(e.name + " is a two-variable series; specialize zeta or use "
                                "build_bivariate");
  }
  return sum_terms<Rational>(e.generator(), order);
}

BivariateSeries build_bivariate(std::string_view name, long order) {
  check_order(order);
  const auto& e = find_series(name);
  return sum_terms<ZetaPoly>(e.generator(), order);
}

LaurentSeries build_specialized(std::string_view name, const ZetaSubstitution& zeta, long order) {
  check_order(order);
  const auto& e = find_series(name);
  if (e.arity == Arity::OneVariable) {
    throw std::invalid_argument(e.name + " has no zeta variable to specialize");
  }
  return specialize_zeta(e.generator(), zeta, order);
}

BivariateSeries build_choi(std::string_view name, const Monomial& zeta1, const Monomial& zeta2,
                           long order, long k) {
  check_order(order);
  if (name == "f_2var") return sum_terms<ZetaPoly>(gen::choi_f(zeta1, zeta2, k), order);
  if (name == "nu_2var") return sum_terms<ZetaPoly>(gen::choi_nu(zeta1, zeta2, k), order);
  throw UnknownSeries("build_choi expects f_2var or nu_2var, got '" + std::string(name) + "'");
}

}  // namespace qlab
