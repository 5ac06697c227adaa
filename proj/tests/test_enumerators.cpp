#include <gtest/gtest.h>

#include <set>

#include "qlab/builders.hpp"
#include "qlab/enumerators.hpp"

using namespace qlab;

namespace {

std::set<std::string> objects(const std::string& family, long n) {
  auto e = enumerate(family, n);
  return {e.objects.begin(), e.objects.end()};
}

}  // namespace

TEST(Enumerators, PodFixtures) {
  auto e = enumerate("pod", 6);
  EXPECT_EQ(e.count, 7);
  EXPECT_EQ(objects("pod", 6),
            (std::set<std::string>{"6", "5+1", "5~+1", "4+2", "3+2+1", "3~+2+1", "2+2+2"}));
  EXPECT_EQ(e.refined, (std::map<long, long>{{0, 3}, {1, 3}, {2, 1}}));
  EXPECT_EQ(enumerate("pod", 0).count, 0);
}

TEST(Enumerators, PevFixtures) {
  auto e = enumerate("pev", 6);
  EXPECT_EQ(e.count, 8);
  EXPECT_EQ(e.refined, (std::map<long, long>{{1, 2}, {2, 4}, {3, 2}}));
  EXPECT_EQ(objects("pev", 1), (std::set<std::string>{"1"}));
}

TEST(Enumerators, Pod1Fixtures) {
  EXPECT_EQ(objects("pod1", 9), (std::set<std::string>{"7+2", "7~+2", "5+2+2", "5~+2+2"}));
  EXPECT_EQ(objects("pod1", 2), (std::set<std::string>{"2"}));
  EXPECT_EQ(enumerate("pod1", 1).count, 0);
}

TEST(Enumerators, VodFixtures) {
  auto e = enumerate("vod", 2);
  EXPECT_EQ(e.count, 6);
  EXPECT_EQ(e.refined, (std::map<long, long>{{-2, 1}, {-1, 1}, {0, 2}, {1, 1}, {2, 1}}));
  EXPECT_EQ(enumerate("vod", 0).count, 1);
  for (long n = 0; n <= 14; ++n) {
    auto v = enumerate("vod", n, false);
    long total = 0;
    for (auto [m, c] : v.refined) {
      total += c;
      auto it = v.refined.find(-m);
      EXPECT_TRUE(it != v.refined.end() && it->second == c) << "n=" << n << " m=" << m;
    }
    EXPECT_EQ(total, v.count);
  }
}

TEST(Enumerators, PartitionRanks) {
  EXPECT_EQ(enumerate("partitions", 4).count, 5);
  EXPECT_EQ(enumerate("rank_N", 4).refined,
            (std::map<long, long>{{-3, 1}, {-1, 1}, {0, 1}, {1, 1}, {3, 1}}));
  auto sigma = build("sigma", 20);
  for (long n = 0; n <= 20; ++n) {
    EXPECT_EQ(enumerate("distinct_rank_parity", n, false).count, sigma[n]) << n;
  }
}

TEST(Enumerators, Statistics) {
  Overpartition p{{{4, false}, {2, true}, {2, false}}};
  EXPECT_EQ(p.size(), 8);
  EXPECT_EQ(p.to_string(), "4+2~+2");
  EXPECT_EQ(rank(p), 4 - 3);
  EXPECT_EQ(m2_rank(p), 2 - 3);
  EXPECT_THROW(enumerate("nope", 3), UnknownFamily);
}

// Every family and refined cell against its generating function, n <= 25.
TEST(Enumerators, OracleEquivalence) {
  constexpr long N = 25;
  const std::pair<const char*, const char*> plain[] = {
      {"pod", "Pod"}, {"pev", "Pev"}, {"pod1", "Pod1"},          {"vod", "Vod"},
      {"concave", "V"}, {"unimodal", "U"}, {"partitions", "P"}, {"overpartitions", "Pbar"}};
  for (const auto& [family, series] : plain) {
    auto s = build(series, N);
    for (long n = 0; n <= N; ++n) {
      EXPECT_EQ(enumerate(family, n, false).count, s[n]) << family << " n=" << n;
    }
  }
  const std::pair<const char*, const char*> refined[] = {
      {"pod", "Pod_2var"}, {"pev", "Pev_2var"}, {"vod", "Vod_2var"},
      {"rank_N", "R"},     {"m2rank_N2", "R2"}};
  for (const auto& [family, series] : refined) {
    auto s = build_bivariate(series, N);
    for (long n = 0; n <= N; ++n) {
      std::map<long, long> cells;
      for (const auto& [m, c] : s[n].terms()) cells[m] = c.get_num().get_si();
      EXPECT_EQ(enumerate(family, n, false).refined, cells) << family << " n=" << n;
    }
  }
}

TEST(Enumerators, MonotoneCountsFromSeries) {
  auto pod = build("Pod", 60), pev = build("Pev", 60);
  for (long n = 0; n < 60; ++n) {
    EXPECT_LE(pod[n], pod[n + 1]) << n;
    EXPECT_LE(pev[n], pev[n + 1]) << n;
  }
}
