#include "qlab/enumerators.hpp"

#include <algorithm>
#include <functional>

namespace qlab {
namespace {

using PartFilter = std::function<bool(long)>;
using Visit = std::function<void(const std::vector<Part>&)>;

// Multisets of parts with sum n drawn from values ≤ max_value accepted by
// `allowed`, visited in descending order. With overlines, the first copy of
// each value may be overlined.
void each_multiset(long n, long max_value, const PartFilter& allowed, bool overlines,
                   std::vector<Part>& cur, const Visit& visit) {
  if (n == 0) {
    visit(cur);
    return;
  }
  for (long v = std::min(max_value, n); v >= 1; --v) {
    if (!allowed(v)) continue;
    for (long k = 1; k * v <= n; ++k) {
      for (int bar = 0; bar <= (overlines ? 1 : 0); ++bar) {
        std::size_t mark = cur.size();
        for (long i = 0; i < k; ++i) cur.push_back({v, bar == 1 && i == 0});
        each_multiset(n - k * v, v - 1, allowed, overlines, cur, visit);
        cur.resize(mark);
      }
    }
  }
}

std::vector<std::vector<Part>> multisets(long n, const PartFilter& allowed, bool overlines) {
  std::vector<std::vector<Part>> out;
  std::vector<Part> cur;
  each_multiset(n, n, allowed, overlines, cur, [&](const std::vector<Part>& p) {
    out.push_back(p);
  });
  return out;
}

bool any(long) { return true; }
bool odd(long v) { return v % 2 != 0; }

std::string join(const std::vector<Part>& parts) {
  if (parts.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(parts[i].value);
    if (parts[i].overlined) s += "~";
  }
  return s;
}

long total(const std::vector<Part>& parts) {
  long s = 0;
  for (const auto& p : parts) s += p.value;
  return s;
}

void check_size(long n) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
}

std::vector<Overpartition> filtered(long n, bool (*pred)(const Overpartition&)) {
  check_size(n);
  std::vector<Overpartition> out;
  for (auto& p : overpartitions_of(n)) {
    if (pred(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

long Overpartition::size() const { return total(parts); }

long Overpartition::multiplicity(long value) const {
  return std::count_if(parts.begin(), parts.end(), [&](const Part& p) { return p.value == value; });
}

std::string Overpartition::to_string() const { return join(parts); }

long ConcaveComposition::size() const { return total(left) + central + total(right); }

std::string ConcaveComposition::to_string() const {
  return join(left) + " | " + std::to_string(central) + " | " + join(right);
}

std::vector<Overpartition> overpartitions_of(long n, bool overlines) {
  check_size(n);
  std::vector<Overpartition> out;
  for (auto& parts : multisets(n, any, overlines)) out.push_back({std::move(parts)});
  return out;
}

bool is_pod(const Overpartition& p) {
  if (p.parts.empty()) return false;
  const long s = p.smallest();
  for (const auto& x : p.parts) {
    if (x.overlined && (x.value == s || x.value % 2 == 0)) return false;
  }
  return s % 2 == 0 || p.multiplicity(s) == 1;
}

bool is_pev(const Overpartition& p) {
  if (p.parts.empty()) return false;
  const long s = p.smallest();
  for (const auto& x : p.parts) {
    if (x.value % 2 != 0 && (x.overlined || p.multiplicity(x.value) > 1)) return false;
  }
  if (s % 2 == 0 && p.multiplicity(s) == 1 && p.parts.back().overlined) return false;
  return true;
}

bool is_pod1(const Overpartition& p) {
  if (p.parts.empty()) return false;
  const long s = p.smallest();
  if (s % 2 != 0) return false;
  for (const auto& x : p.parts) {
    if (x.value % 2 == 0 && x.overlined) return false;
    if (x.value % 2 != 0 && x.value - s < 3) return false;
  }
  return true;
}

long pod_statistic(const Overpartition& p) {
  long even = std::count_if(p.parts.begin(), p.parts.end(),
                            [](const Part& x) { return x.value % 2 == 0; });
  return (!p.parts.empty() && p.smallest() % 2 == 0) ? even - 1 : even;
}

long pev_statistic(const Overpartition& p) {
  return std::count_if(p.parts.begin(), p.parts.end(), [](const Part& x) {
    return x.value % 2 != 0 || !x.overlined;
  });
}

long vod_rank(const ConcaveComposition& c) {
  auto plain_odd = [](const std::vector<Part>& side) {
    return std::count_if(side.begin(), side.end(),
                         [](const Part& x) { return x.value % 2 != 0 && !x.overlined; });
  };
  return static_cast<long>(plain_odd(c.right) - plain_odd(c.left));
}

long rank(const Overpartition& p) { return p.largest() - static_cast<long>(p.parts.size()); }

long m2_rank(const Overpartition& p) {
  return (p.largest() + 1) / 2 - static_cast<long>(p.parts.size());
}

std::vector<Overpartition> enum_pod(long n) { return filtered(n, is_pod); }
std::vector<Overpartition> enum_pev(long n) { return filtered(n, is_pev); }
std::vector<Overpartition> enum_pod1(long n) { return filtered(n, is_pod1); }

std::vector<ConcaveComposition> enum_vod(long n) {
  check_size(n);
  std::vector<ConcaveComposition> out;
  for (long c = 0; c <= n; c += 2) {
    auto side = [c](long v) { return odd(v) && v > c; };
    for (long l = 0; l <= n - c; ++l) {
      auto lefts = multisets(l, side, true);
      if (lefts.empty()) continue;
      auto rights = multisets(n - c - l, side, false);
      for (const auto& a : lefts) {
        for (auto b : rights) {
          std::reverse(b.begin(), b.end());
          out.push_back({a, c, std::move(b)});
        }
      }
    }
  }
  return out;
}

std::vector<ConcaveComposition> enum_concave(long n) {
  check_size(n);
  std::vector<ConcaveComposition> out;
  for (long c = 0; c <= n; ++c) {
    auto side = [c](long v) { return v > c; };
    for (long l = 0; l <= n - c; ++l) {
      auto lefts = multisets(l, side, false);
      auto rights = multisets(n - c - l, side, false);
      for (const auto& a : lefts) {
        for (auto b : rights) {
          std::reverse(b.begin(), b.end());
          out.push_back({a, c, std::move(b)});
        }
      }
    }
  }
  return out;
}

std::vector<ConcaveComposition> enum_unimodal(long n) {
  check_size(n);
  if (n == 0) return {ConcaveComposition{}};
  std::vector<ConcaveComposition> out;
  for (long c = 1; c <= n; ++c) {
    auto side = [c](long v) { return v <= c; };
    for (long l = 0; l <= n - c; ++l) {
      auto lefts = multisets(l, side, false);
      auto rights = multisets(n - c - l, side, false);
      for (auto a : lefts) {
        std::reverse(a.begin(), a.end());
        for (const auto& b : rights) out.push_back({a, c, b});
      }
    }
  }
  return out;
}

const std::vector<std::string>& enumerator_families() {
  static const std::vector<std::string> names = {
      "pod",     "pev",      "pod1",   "vod",       "partitions",          "overpartitions",
      "concave", "unimodal", "rank_N", "m2rank_N2", "distinct_rank_parity"};
  return names;
}

Enumeration enumerate(std::string_view family, long n, bool with_objects) {
  check_size(n);
  Enumeration e;
  e.family = std::string(family);
  e.n = n;

  auto take = [&](const auto& objects, auto statistic) {
    e.count = static_cast<long>(objects.size());
    for (const auto& x : objects) {
      if (with_objects) e.objects.push_back(x.to_string());
      if constexpr (!std::is_same_v<decltype(statistic), std::nullptr_t>) ++e.refined[statistic(x)];
    }
  };

  if (family == "pod") {
    take(enum_pod(n), pod_statistic);
  } else if (family == "pev") {
    take(enum_pev(n), pev_statistic);
  } else if (family == "pod1") {
    take(enum_pod1(n), nullptr);
  } else if (family == "vod") {
    take(enum_vod(n), vod_rank);
  } else if (family == "partitions") {
    take(overpartitions_of(n, false), nullptr);
  } else if (family == "overpartitions") {
    take(overpartitions_of(n, true), nullptr);
  } else if (family == "concave") {
    take(enum_concave(n), nullptr);
  } else if (family == "unimodal") {
    take(enum_unimodal(n), nullptr);
  } else if (family == "rank_N") {
    take(overpartitions_of(n, false), rank);
  } else if (family == "m2rank_N2") {
    std::vector<Overpartition> ps;
    for (auto& parts : multisets(n, any, false)) {
      Overpartition p{std::move(parts)};
      bool repeated_odd = std::any_of(p.parts.begin(), p.parts.end(), [&](const Part& x) {
        return odd(x.value) && p.multiplicity(x.value) > 1;
      });
      if (!repeated_odd) ps.push_back(std::move(p));
    }
    take(ps, m2_rank);
  } else if (family == "distinct_rank_parity") {
    std::vector<Overpartition> ps;
    for (auto& p : overpartitions_of(n, false)) {
      bool distinct = std::adjacent_find(p.parts.begin(), p.parts.end()) == p.parts.end();
      if (distinct) ps.push_back(std::move(p));
    }
    take(ps, [](const Overpartition& p) { return ((rank(p) % 2) + 2) % 2; });
    e.count = e.refined[0] - e.refined[1];
  } else {
    throw UnknownFamily("unknown family '" + std::string(family) + "'");
  }
  return e;
}

}  // namespace qlab
