#include <gtest/gtest.h>

#include <map>
#include <random>

#include "qlab/builders.hpp"
#include "qlab/series.hpp"
#include "qlab/term_generator.hpp"
#include "series_properties.hpp"

using namespace qlab;
using qlab::testing::RandomSeries;

namespace {

LaurentSeries poly(std::map<long, long> terms, long order = kExact) {
  std::map<long, Rational> t;
  for (auto [e, c] : terms) t[e] = c;
  return LaurentSeries::from_map(t, order);
}

void expect_same(const LaurentSeries& a, const LaurentSeries& b) {
  auto m = first_mismatch(a, b);
  EXPECT_FALSE(m.has_value()) << "first difference at q^" << *m;
}

}  // namespace

TEST(SeriesArithmetic, AdditionExamples) {
  EXPECT_EQ(poly({{0, 1}, {1, 1}}) + poly({{0, -1}, {2, 1}}), poly({{1, 1}, {2, 1}}));
  auto a = poly({{-1, 3}, {4, 2}});
  EXPECT_EQ(a + LaurentSeries::zero(), a);
  EXPECT_EQ(poly({{-1, 1}, {0, 1}}) + poly({{-1, -1}}), LaurentSeries::one());
}

TEST(SeriesArithmetic, MultiplicationExamples) {
  auto geometric = inverse(poly({{0, 1}, {1, -1}}), 20L);
  auto prod = poly({{0, 1}, {1, -1}}) * geometric;
  EXPECT_EQ(prod.order(), 20);
  expect_same(prod, LaurentSeries::one());
  EXPECT_EQ(poly({{-1, 1}}) * poly({{1, 1}}), LaurentSeries::one());
  auto sq = poly({{0, 1}, {1, 1}}) * poly({{0, 1}, {1, 1}});
  EXPECT_EQ(sq, poly({{0, 1}, {1, 2}, {2, 1}}));
}

TEST(SeriesArithmetic, InverseExamples) {
  auto g = inverse(poly({{0, 1}, {1, -1}}), 15L);
  for (long n = 0; n <= 15; ++n) EXPECT_EQ(g[n], 1) << n;
  auto euler = pochhammer<Rational>(Monomial::q_power(1), 1, std::nullopt, 10);
  EXPECT_EQ(inverse(euler)[4], 5);
  auto r = inverse(poly({{1, 1}, {2, 1}}), 8L);
  EXPECT_EQ(r.valuation(), -1);
  for (long n = -1; n <= 8; ++n) EXPECT_EQ(r[n], (n + 1) % 2 == 0 ? 1 : -1) << n;
}

TEST(SeriesArithmetic, OrderIsUnknownAboveTruncation) {
  auto a = poly({{0, 1}, {1, 1}}, 5);
  EXPECT_THROW(a.coefficient(6), std::out_of_range);
  // q^{-2} times something known to q^5 is known only to q^3.
  auto b = poly({{-2, 1}}) * a;
  EXPECT_EQ(b.order(), 3);
  EXPECT_THROW(inverse(LaurentSeries::zero(4)), ZeroLeadingCoefficient);
}

TEST(SeriesArithmetic, PochhammerExamples) {
  auto e = pochhammer<Rational>(Monomial::q_power(1), 1, std::nullopt, 12);
  EXPECT_EQ(e.truncated(12), poly({{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}, {12, -1}}, 12));
  EXPECT_EQ(pochhammer<Rational>(Monomial::q_power(3), 1, 0L, 10).truncated(10),
            LaurentSeries::one().truncated(10));
  EXPECT_EQ(pochhammer<Rational>(Monomial::q_power(1, -1), 2, 2L, 10),
            poly({{0, 1}, {1, 1}, {3, 1}, {4, 1}}, 10));
}

TEST(SeriesArithmetic, SubstituteExamples) {
  EXPECT_EQ(substitute_q_power(poly({{0, 1}, {1, 1}}), 2), poly({{0, 1}, {2, 1}}));
  auto a = poly({{-1, 2}, {3, 5}}, 7);
  EXPECT_EQ(substitute_q_power(a, 1), a);
  auto e = pochhammer<Rational>(Monomial::q_power(1), 1, std::nullopt, 30);
  auto e2 = pochhammer<Rational>(Monomial::q_power(2), 2, std::nullopt, 60);
  expect_same(substitute_q_power(e, 2), e2);
}

TEST(SeriesProperties, RandomizedRingAxiomsInverseSubstitutionTruncation) {
  RandomSeries gen(20240611u);
  for (int i = 0; i < 1000; ++i) {
    auto failure = qlab::testing::check_series_case(gen);
    EXPECT_FALSE(failure.has_value()) << "case " << i << ": " << *failure;
  }
}

TEST(SeriesProperties, UnitInversesAtOrderHundred) {
  RandomSeries gen(7u);
  for (int i = 0; i < 200; ++i) {
    std::vector<Rational> c;
    for (int k = 0; k < 6; ++k) c.push_back(gen.coeff());
    c[0] = gen.small(0, 1) ? 1 : -1;
    LaurentSeries a(c, 0, 100);
    auto prod = a * inverse(a);
    ASSERT_EQ(prod.order(), 100);
    EXPECT_EQ(prod, LaurentSeries::one().truncated(100));
  }
}

TEST(SeriesProperties, BivariateRing) {
  std::mt19937 rng(99u);
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 2);
  auto rand_series = [&] {
    std::map<long, ZetaPoly> t;
    for (long n = 0; n < 6; ++n) {
      std::map<int, Rational> z;
      for (int k = 0; k < 3; ++k) z[e(rng)] += c(rng);
      t[n] = ZetaPoly::from_map(z);
    }
    return BivariateSeries::from_map(t, 8);
  };
  for (int i = 0; i < 100; ++i) {
    auto a = rand_series(), b = rand_series(), d = rand_series();
    EXPECT_FALSE(first_mismatch(a * (b + d), a * b + a * d).has_value());
    EXPECT_FALSE(first_mismatch(collapse_zeta(a * b), collapse_zeta(a) * collapse_zeta(b)));
    EXPECT_FALSE(first_mismatch(reflect_zeta(reflect_zeta(a)), a));
  }
  BivariateSeries u({ZetaPoly(Rational(2), 1), ZetaPoly(3)}, 0, 10);
  EXPECT_FALSE(first_mismatch(u * inverse(u), BivariateSeries::one()));
  BivariateSeries bad({ZetaPoly(1) + ZetaPoly(Rational(1), 1)}, 0, 10);
  EXPECT_THROW(inverse(bad), NonUnitLeadingCoefficient);
}

TEST(ZetaPolynomial, Arithmetic) {
  ZetaPoly a = ZetaPoly::from_map({{-1, 1}, {0, 2}, {1, 1}});
  ZetaPoly b = ZetaPoly::from_map({{1, 1}});
  EXPECT_EQ((a * b).terms(), (std::map<int, Rational>{{0, 1}, {1, 2}, {2, 1}}));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.at_one(), 4);
  EXPECT_EQ(a.reflected(), a);
  EXPECT_EQ(b.inverse(), ZetaPoly::from_map({{-1, 1}}));
}

TEST(TermGenerators, KangSumIsOne) {
  auto g = shaped("kang", 0, [](long n) {
    Term t{qpow(n * (n + 1) / 2), {}, {poch(qpow(1, -1), 1, n + 1)}};
    return std::vector<Term>{t};
  });
  EXPECT_EQ(sum_terms<Rational>(g, 30), LaurentSeries::one().truncated(30));
}

TEST(TermGenerators, EmptyRangeIsZero) {
  auto g = shaped("empty", 3, [](long n) { return std::vector<Term>{Term{qpow(n)}}; }, false, 2L);
  EXPECT_TRUE(sum_terms<Rational>(g, 10).is_zero());
}

TEST(TermGenerators, SignedPentagonal) {
  auto s = build("false_pentagonal", 10);
  EXPECT_EQ(s, poly({{1, 1}, {2, -1}, {5, 1}, {7, -1}}, 10));
}

TEST(TermGenerators, ValuationViolationIsDetected) {
  // Declared bound says n, actual valuation is 0: must be caught.
  TermGenerator g;
  g.name = "liar";
  g.first = 0;
  g.terms = [](long) { return std::vector<Term>{Term{qpow(0)}}; };
  g.bound = [](long n, long) { return n; };
  EXPECT_THROW(sum_terms<Rational>(g, 5), ValuationViolation);
  EXPECT_THROW(term_valuation(Term{qpow(0), {}, {poch(qpow(0), 1, 2)}}), ValuationViolation);
}

TEST(TermGenerators, ZetaSpecialization) {
  // R(ζ;q) at ζ = 1 is the partition function.
  auto r = specialize_zeta(gen::rank(), ZetaSubstitution::to_q_power(0), 30);
  expect_same(r, build("P", 30));
  EXPECT_EQ(parse_zeta_spec("-q^-2").to_string(), ZetaSubstitution::to_q_power(-2, -1).to_string());
  EXPECT_THROW(parse_zeta_spec("i"), std::invalid_argument);
}
