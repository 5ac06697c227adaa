#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "qlab/builders.hpp"

using namespace qlab;

namespace {

LaurentSeries poly(std::map<long, long> terms, long order) {
  std::map<long, Rational> t;
  for (auto [e, c] : terms) t[e] = c;
  return LaurentSeries::from_map(t, order);
}

void expect_same(const LaurentSeries& a, const LaurentSeries& b) {
  auto m = first_mismatch(a, b);
  EXPECT_FALSE(m.has_value()) << "first difference at q^" << *m;
}

LaurentSeries euler(long step, long order) {
  return pochhammer<Rational>(Monomial::q_power(step), step, std::nullopt, order);
}

// All partitions of n with parts <= max_part, visited one by one.
void partitions(long n, long max_part, std::vector<long>& cur,
                const std::function<void(const std::vector<long>&)>& visit) {
  if (n == 0) {
    visit(cur);
    return;
  }
  for (long p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

TEST(Catalog, NamesResolveUniquely) {
  for (const auto& e : series_catalog()) {
    EXPECT_EQ(&find_series(e.name), &e) << e.name;
    EXPECT_FALSE(e.anchor.empty());
  }
  EXPECT_EQ(find_series("pod").name, "Pod");
  EXPECT_THROW(find_series("no_such_series"), UnknownSeries);
  EXPECT_THROW(build("Pod_2var", 5), std::invalid_argument);
  EXPECT_THROW(build("P", -1), std::invalid_argument);
}

TEST(Builders, SmallExpansions) {
  EXPECT_EQ(build("P", 10)[4], 5);
  EXPECT_EQ(build("Theta_neg_q", 9), poly({{0, 1}, {1, -2}, {4, 2}, {9, -2}}, 9));
  EXPECT_EQ(build("sigma", 3), poly({{0, 1}, {1, 1}, {2, -1}, {3, 2}}, 3));
  EXPECT_EQ(build("phi", 5)[0], 1);
  EXPECT_EQ(build("f3", 2), poly({{0, 1}, {1, 1}, {2, -2}}, 2));
  auto g = build("g_series", 10);
  EXPECT_EQ(g[0], 0);
  EXPECT_EQ(g[1], 1);
}

TEST(Builders, RestrictedOverpartitionFixtures) {
  EXPECT_EQ(build("Pod", 10)[6], 7);
  EXPECT_EQ(build("Pev", 10)[6], 8);
  EXPECT_EQ(build("Pod1", 12)[9], 4);
  EXPECT_EQ(build("Pod", 0)[0], 0);

  auto pod2 = build_bivariate("Pod_2var", 8);
  EXPECT_EQ(pod2[6].terms(), (std::map<int, Rational>{{0, 3}, {1, 3}, {2, 1}}));
  auto pev2 = build_bivariate("Pev_2var", 8);
  EXPECT_EQ(pev2[6].terms(), (std::map<int, Rational>{{1, 2}, {2, 4}, {3, 2}}));
  auto vod2 = build_bivariate("Vod_2var", 40);
  EXPECT_EQ(vod2[2].terms(), (std::map<int, Rational>{{-2, 1}, {-1, 1}, {0, 2}, {1, 1}, {2, 1}}));
  EXPECT_FALSE(first_mismatch(vod2, reflect_zeta(vod2)).has_value());
}

TEST(Builders, BivariateCollapseMatchesOneVariable) {
  const std::pair<const char*, const char*> pairs[] = {
      {"Pod_2var", "Pod"}, {"Pev_2var", "Pev"}, {"Vod_2var", "Vod"}, {"R", "P"}};
  for (const auto& [two, one] : pairs) {
    SCOPED_TRACE(two);
    expect_same(collapse_zeta(build_bivariate(two, 60)), build(one, 60));
    expect_same(build_specialized(two, ZetaSubstitution::to_q_power(0), 60), build(one, 60));
  }
}

TEST(Builders, RankAndM2Rank) {
  auto r = build_bivariate("R", 10);
  EXPECT_EQ(r[4].coefficient(0), 1);
  // R2 at ζ=1 counts partitions without repeated odd parts.
  auto r2 = build_specialized("R2", ZetaSubstitution::to_q_power(0), 20);
  for (long n = 0; n <= 20; ++n) {
    long count = 0;
    std::vector<long> cur;
    partitions(n, n, cur, [&](const std::vector<long>& p) {
      for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i] == p[i - 1] && p[i] % 2 == 1) return;
      }
      ++count;
    });
    EXPECT_EQ(r2[n], count) << n;
  }
}

TEST(Builders, ProductForms) {
  constexpr long N = 60;
  // Θ(−q) = (q)_∞² / (q²;q²)_∞.
  expect_same(build("Theta_neg_q", N), euler(1, N) * euler(1, N) * inverse(euler(2, N)));
  // U = P² · Σ (−1)ⁿ q^{n(n+1)/2}.
  std::map<long, Rational> tri;
  for (long n = 0; n * (n + 1) / 2 <= N; ++n) tri[n * (n + 1) / 2] = n % 2 ? -1 : 1;
  auto p = build("P", N);
  expect_same(build("U", N), p * p * LaurentSeries::from_map(tri, N));
  // Pbar = (−q)_∞ / (q)_∞.
  auto minus_q = pochhammer<Rational>(Monomial::q_power(1, -1), 1, std::nullopt, N);
  expect_same(build("Pbar", N), minus_q * inverse(euler(1, N)));
}

TEST(Builders, W1HeckeFormAgrees) {
  expect_same(build("W1", 80), build("W1_hecke", 80));
}

TEST(Builders, ChoiFDirectTerms) {
  constexpr long N = 8;
  // f(q, q; q): n=0 gives 1, n=1 gives q/(1+q)², n=2 gives q⁴/((1+q)²(1+q²)²), n=3 starts at q⁹.
  auto f = build_choi("f_2var", qpow(1), qpow(1), N);
  auto one_plus_q = poly({{0, 1}, {1, 1}}, kExact);
  auto one_plus_q2 = poly({{0, 1}, {2, 1}}, kExact);
  auto d1 = one_plus_q * one_plus_q;
  auto d2 = d1 * one_plus_q2 * one_plus_q2;
  auto expected = LaurentSeries::one() + divide(poly({{1, 1}}, kExact), d1, N) +
                  divide(poly({{4, 1}}, kExact), d2, N);
  expect_same(collapse_zeta(f), expected.truncated(N));
  EXPECT_EQ(f.order(), N);

  auto empty = gen::choi_f(qpow(1), qpow(1));
  empty.last = -1;
  EXPECT_TRUE(sum_terms<Rational>(empty, 10).is_zero());
}

TEST(Builders, NuRealForm) {
  // ζ = q^j: ν(iq, i(ζq)^{1/2}; q) from its squares (−q², −q^{j+1}) times (1+q^j).
  for (long j : {1L, 2L, 3L}) {
    SCOPED_TRACE(j);
    auto nu = collapse_zeta(build_choi("nu_2var", qpow(2, -1), qpow(j + 1, -1), 40));
    auto lhs = poly({{0, 1}, {j, 1}}, kExact) * nu;
    expect_same(lhs, build_specialized("nu_2var", ZetaSubstitution::to_q_power(j), 40));
  }
}

TEST(Builders, TruncationStability) {
  constexpr long N = 30;
  for (const auto& e : series_catalog()) {
    SCOPED_TRACE(e.name);
    if (e.arity == Arity::OneVariable) {
      auto lo = build(e.name, N), hi = build(e.name, 2 * N);
      EXPECT_EQ(lo.order(), N);
      EXPECT_EQ(hi.order(), 2 * N);
      expect_same(lo, hi);
    } else {
      auto lo = build_bivariate(e.name, N), hi = build_bivariate(e.name, 2 * N);
      EXPECT_EQ(lo.order(), N);
      EXPECT_FALSE(first_mismatch(lo, hi).has_value());
    }
  }
}

TEST(Builders, Specialization) {
  // F2 at ζ = −1 collapses (−1/ζ;q²)_n = (1;q²)_n to the n=0 term.
  auto f2 = build_specialized("F2", ZetaSubstitution::to_q_power(0, -1), 20);
  EXPECT_EQ(f2, LaurentSeries::one().truncated(20));
  // ζ = q^{-1} in Pod_2var is handled term-wise.
  auto s = build_specialized("Pod_2var", ZetaSubstitution::to_q_power(-1), 20);
  auto full = build_bivariate("Pod_2var", 40);
  for (long n = 0; n <= 20; ++n) {
    Rational c = 0;
    for (long m = n; m <= 40; ++m) c += full[m].coefficient(static_cast<int>(m - n));
    EXPECT_EQ(s[n], c) << n;
  }
}
