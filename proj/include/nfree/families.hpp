#pragma once

// Two- and three-level N-free families built from distance-4 constant-weight
// codes, plus the "every extension" family kept as a refuter.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfree/codes.hpp"
#include "nfree/setkit.hpp"

namespace nfree {

/// A code split around one fixed element: words missing the pivot gain it,
/// words containing it lose it.
struct PivotSplit {
  int universe_size = 0;
  int weight = 0;  // weight of the source code
  int pivot = 0;
  std::vector<SubsetWord> c_up;    // weight k+1, all contain the pivot
  std::vector<SubsetWord> c_down;  // weight k-1, none contain the pivot
  std::size_t source_size = 0;
};

namespace detail {

inline void require_pivot(int n, int pivot) {
  if (pivot < 1 || pivot > n)
    throw UsageError("pivot must lie in [1, " + std::to_string(n) + "], got " + std::to_string(pivot));
}

inline void require_sec(const ConstantWeightCode& code) {
  if (code.min_distance() < 4)
    throw UsageError("code must have minimum distance >= 4, got " + std::to_string(code.min_distance()));
}

}  // namespace detail

inline PivotSplit pivot_split(const ConstantWeightCode& code, int pivot) {
  const int n = code.universe_size();
  const int k = code.weight();
  detail::require_sec(code);
  detail::require_pivot(n, pivot);
  if (k < 1 || k > n - 1) throw UsageError("pivot split needs 1 <= k <= n-1, got k=" + std::to_string(k));

  PivotSplit split;
  split.universe_size = n;
  split.weight = k;
  split.pivot = pivot;
  split.source_size = code.size();
  for (const auto& c : code.words()) {
    if (c.contains(pivot))
      split.c_down.push_back(c.without(pivot));
    else
      split.c_up.push_back(c.with(pivot));
  }
  std::sort(split.c_up.begin(), split.c_up.end());
  std::sort(split.c_down.begin(), split.c_down.end());
  return split;
}

/// Outcome of checking both parts of a pivot split.
struct Claim1Report {
  DistanceCheck up;
  DistanceCheck down;
  // First (c_down, c_up) pair with c_down ⊆ c_up, if any.
  std::optional<std::pair<SubsetWord, SubsetWord>> containment;

  bool ok() const { return up.ok && down.ok && !containment; }
};

inline Claim1Report check_claim1(const PivotSplit& split) {
  Claim1Report report;
  report.up = verify_min_distance(split.c_up, 4);
  report.down = verify_min_distance(split.c_down, 4);
  for (const auto& lo : split.c_down)
    for (const auto& hi : split.c_up)
      if (is_subset(lo, hi)) {
        report.containment = std::make_pair(lo, hi);
        return report;
      }
  return report;
}

enum class Construction { KT, THREE_LEVEL, NAIVE_ALL_EXT, CUSTOM };

inline const char* to_string(Construction c) {
  switch (c) {
    case Construction::KT: return "kt";
    case Construction::THREE_LEVEL: return "three-level";
    case Construction::NAIVE_ALL_EXT: return "naive";
    case Construction::CUSTOM: return "custom";
  }
  return "custom";
}

struct ConstructedFamily {
  SetFamily family;
  Construction construction;
  int n;
  int k;
  std::optional<int> pivot;
  std::size_t code_size;
};

namespace detail {

inline void require_code(int n, int expected_weight, const ConstantWeightCode& code) {
  if (code.universe_size() != n)
    throw UsageError("code is over [" + std::to_string(code.universe_size()) + "], expected [" + std::to_string(n) + "]");
  if (code.weight() != expected_weight)
    throw UsageError("code weight " + std::to_string(code.weight()) + " but construction needs weight " +
                     std::to_string(expected_weight));
  require_sec(code);
}

inline void require_inner_level(int n, int k) {
  if (n < 2 || n > kMaxUniverse) throw UsageError("n must lie in [2, 64], got " + std::to_string(n));
  if (k < 1 || k > n - 1) throw UsageError("k must lie in [1, n-1], got " + std::to_string(k));
}

// Members ordered by weight, then colex.
inline SetFamily ordered_family(int n, std::vector<SubsetWord> sets) {
  std::sort(sets.begin(), sets.end(), [](const SubsetWord& a, const SubsetWord& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a.bits() < b.bits();
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return SetFamily(n, std::move(sets));
}

}  // namespace detail

/// Full level k together with both sides of the pivot split of a weight-k
/// code; size C(n,k) + |code|.
inline ConstructedFamily build_three_level(int n, int k, const ConstantWeightCode& code, int pivot = 1) {
  detail::require_inner_level(n, k);
  detail::require_code(n, k, code);
  auto split = pivot_split(code, pivot);
  auto sets = enumerate_level(n, k);
  sets.insert(sets.end(), split.c_up.begin(), split.c_up.end());
  sets.insert(sets.end(), split.c_down.begin(), split.c_down.end());
  return {detail::ordered_family(n, std::move(sets)), Construction::THREE_LEVEL, n, k, pivot, code.size()};
}

/// Full level k together with a weight-(k+1) code; size C(n,k) + |code|.
inline ConstructedFamily build_kt(int n, int k, const ConstantWeightCode& code) {
  if (n < 1 || n > kMaxUniverse) throw UsageError("n must lie in [1, 64], got " + std::to_string(n));
  if (k < 0 || k > n - 1) throw UsageError("k must lie in [0, n-1], got " + std::to_string(k));
  detail::require_code(n, k + 1, code);
  auto sets = enumerate_level(n, k);
  sets.insert(sets.end(), code.words().begin(), code.words().end());
  return {detail::ordered_family(n, std::move(sets)), Construction::KT, n, k, std::nullopt, code.size()};
}

/// Level k plus every one-element extension and every one-element reduction
/// of each codeword. Contains N in general; kept to show why a single pivot
/// is needed.
inline ConstructedFamily build_naive_all_extensions(int n, int k, const ConstantWeightCode& code) {
  detail::require_inner_level(n, k);
  detail::require_code(n, k, code);
  auto sets = enumerate_level(n, k);
  for (const auto& c : code.words()) {
    for (int i = 1; i <= n; ++i) sets.push_back(c.contains(i) ? c.without(i) : c.with(i));
  }
  return {detail::ordered_family(n, std::move(sets)), Construction::NAIVE_ALL_EXT, n, k, std::nullopt, code.size()};
}

}  // namespace nfree
