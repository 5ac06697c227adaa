#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlab {

struct Part {
  long value = 0;
  bool overlined = false;

  bool operator==(const Part&) const = default;
};

/// Parts in descending order; an overlined copy precedes the plain copies of
/// the same value.
struct Overpartition {
  std::vector<Part> parts;

  long size() const;
  long multiplicity(long value) const;
  long smallest() const { return parts.empty() ? 0 : parts.back().value; }
  long largest() const { return parts.empty() ? 0 : parts.front().value; }
  std::string to_string() const;
};

/// left + central + right, each side stored in reading order.
struct ConcaveComposition {
  std::vector<Part> left;
  long central = 0;
  std::vector<Part> right;

  long size() const;
  std::string to_string() const;
};

/// All overpartitions of n (plain partitions if overlines is false).
std::vector<Overpartition> overpartitions_of(long n, bool overlines = true);

bool is_pod(const Overpartition& p);
bool is_pev(const Overpartition& p);
bool is_pod1(const Overpartition& p);

/// Even parts, minus one when the smallest part is even.
long pod_statistic(const Overpartition& p);
/// Odd parts plus non-overlined even parts.
long pev_statistic(const Overpartition& p);
/// Non-overlined odd parts right of the centre minus those on the left.
long vod_rank(const ConcaveComposition& c);

std::vector<Overpartition> enum_pod(long n);
std::vector<Overpartition> enum_pev(long n);
std::vector<Overpartition> enum_pod1(long n);
std::vector<ConcaveComposition> enum_vod(long n);
std::vector<ConcaveComposition> enum_concave(long n);
std::vector<ConcaveComposition> enum_unimodal(long n);

long rank(const Overpartition& p);     // largest part minus number of parts
long m2_rank(const Overpartition& p);  // ceil(largest/2) minus number of parts

struct UnknownFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Result of enumerating one family at one size. `count` is signed because
/// distinct_rank_parity reports (#even rank) − (#odd rank).
struct Enumeration {
  std::string family;
  long n = 0;
  long count = 0;
  std::map<long, long> refined;       // statistic value -> count; empty if unrefined
  std::vector<std::string> objects;   // canonical text, in generation order
};

/// pod, pev, pod1, vod, partitions, overpartitions, concave, unimodal,
/// rank_N, m2rank_N2, distinct_rank_parity.
const std::vector<std::string>& enumerator_families();

Enumeration enumerate(std::string_view family, long n, bool with_objects = true);

}  // namespace qlab
