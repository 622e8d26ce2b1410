#pragma once

// Forbidden-subposet detection in set families, under weak-subposet
// semantics: only the relations of the pattern must be preserved.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nfree/setkit.hpp"

namespace nfree {

/// W ⊂ X, Y ⊂ X, Y ⊂ Z, all four distinct.
struct NWitness {
  SubsetWord w, x, y, z;

  bool valid() const {
    const bool distinct = w != x && w != y && w != z && x != y && x != z && y != z;
    return distinct && is_strict_subset(w, x) && is_strict_subset(y, x) && is_strict_subset(y, z);
  }
};

/// Y ⊂ X and Y ⊂ Z, all three distinct.
struct VWitness {
  SubsetWord x, y, z;

  bool valid() const {
    return x != z && is_strict_subset(y, x) && is_strict_subset(y, z);
  }
};

namespace detail {

struct ContainmentIndex {
  std::vector<std::vector<std::size_t>> up;    // strict supersets, ascending index
  std::vector<std::vector<std::size_t>> down;  // strict subsets, ascending index
};

inline ContainmentIndex index_containments(const SetFamily& family) {
  const auto& s = family.sets();
  ContainmentIndex idx;
  idx.up.resize(s.size());
  idx.down.resize(s.size());
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (a != b && (s[a].bits() & ~s[b].bits()) == 0) {
        idx.up[a].push_back(b);
        idx.down[b].push_back(a);
      }
  return idx;
}

}  // namespace detail

/// First N in scan order: X by family index, then Y ⊂ X, then Z ⊃ Y (Z ≠ X),
/// then W ⊂ X (W ≠ Y, W ≠ Z).
inline std::optional<NWitness> find_n_witness(const SetFamily& family) {
  const auto& s = family.sets();
  const auto idx = detail::index_containments(family);
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (idx.down[x].size() < 2) continue;
    for (std::size_t y : idx.down[x]) {
      for (std::size_t z : idx.up[y]) {
        if (z == x) continue;
        for (std::size_t w : idx.down[x]) {
          if (w == y || w == z) continue;
          return NWitness{s[w], s[x], s[y], s[z]};
        }
        // Only W = Z remained for this Z; another Z may still work.
      }
    }
  }
  return std::nullopt;
}

inline std::optional<VWitness> find_v_witness(const SetFamily& family) {
  const auto& s = family.sets();
  const auto idx = detail::index_containments(family);
  for (std::size_t y = 0; y < s.size(); ++y)
    if (idx.up[y].size() >= 2) return VWitness{s[idx.up[y][0]], s[y], s[idx.up[y][1]]};
  return std::nullopt;
}

/// First (lower, upper) pair with lower ⊂ upper, scanning upper by index.
inline std::optional<std::pair<SubsetWord, SubsetWord>> find_comparable_pair(const SetFamily& family) {
  const auto& s = family.sets();
  for (std::size_t hi = 0; hi < s.size(); ++hi)
    for (std::size_t lo = 0; lo < s.size(); ++lo)
      if (lo != hi && (s[lo].bits() & ~s[hi].bits()) == 0) return std::make_pair(s[lo], s[hi]);
  return std::nullopt;
}

inline bool is_antichain(const SetFamily& family) { return !find_comparable_pair(family).has_value(); }

// ---------------------------------------------------------------------------
// Generic embedding oracle
// ---------------------------------------------------------------------------

/// A poset on {0,...,m-1}, m <= 5, given by strict relations u < v.
class PosetSpec {
 public:
  static constexpr int kMaxElements = 5;

  PosetSpec(int element_count, std::vector<std::pair<int, int>> relations)
      : m_(element_count), relations_(std::move(relations)) {
    if (m_ < 1 || m_ > kMaxElements) throw UsageError("poset must have 1..5 elements, got " + std::to_string(m_));
    less_.assign(static_cast<std::size_t>(m_ * m_), false);
    for (auto [u, v] : relations_) {
      if (u < 0 || v < 0 || u >= m_ || v >= m_) throw UsageError("relation refers to a missing element");
      if (u == v) throw UsageError("relation must be irreflexive");
      at(u, v) = true;
    }
    for (int mid = 0; mid < m_; ++mid)
      for (int u = 0; u < m_; ++u)
        for (int v = 0; v < m_; ++v)
          if (at(u, mid) && at(mid, v)) at(u, v) = true;
    for (int u = 0; u < m_; ++u)
      if (at(u, u)) throw UsageError("relation must be acyclic");
  }

  /// Elements w=0, x=1, y=2, z=3 with w<x, y<x, y<z.
  static PosetSpec n_poset() { return PosetSpec(4, {{0, 1}, {2, 1}, {2, 3}}); }
  /// Elements x=0, y=1, z=2 with y<x, y<z.
  static PosetSpec v_poset() { return PosetSpec(3, {{1, 0}, {1, 2}}); }
  static PosetSpec chain(int length) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < length; ++i) rel.emplace_back(i, i + 1);
    return PosetSpec(length, std::move(rel));
  }

  int element_count() const noexcept { return m_; }
  const std::vector<std::pair<int, int>>& relations() const noexcept { return relations_; }
  /// u < v in the transitive closure.
  bool less(int u, int v) const { return less_[static_cast<std::size_t>(u * m_ + v)]; }

 private:
  std::vector<bool>::reference at(int u, int v) { return less_[static_cast<std::size_t>(u * m_ + v)]; }

  int m_;
  std::vector<std::pair<int, int>> relations_;
  std::vector<bool> less_;
};

class SearchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EmbedLimits {
  std::size_t max_family_size = 512;
  std::uint64_t max_nodes = 200'000'000;
};

namespace detail {

class Embedder {
 public:
  Embedder(const PosetSpec& spec, const SetFamily& family, EmbedLimits limits)
      : spec_(spec), sets_(family.sets()), limits_(limits), image_(static_cast<std::size_t>(spec.element_count())) {
    // Place elements so that each one (where possible) is related to an
    // already placed element; this keeps the candidate lists short.
    const int m = spec.element_count();
    std::vector<bool> placed(static_cast<std::size_t>(m), false);
    while (static_cast<int>(order_.size()) < m) {
      int pick = -1;
      for (int e = 0; e < m && pick < 0; ++e) {
        if (placed[static_cast<std::size_t>(e)]) continue;
        for (int p : order_)
          if (spec.less(e, p) || spec.less(p, e)) {
            pick = e;
            break;
          }
      }
      if (pick < 0)
        for (int e = 0; e < m; ++e)
          if (!placed[static_cast<std::size_t>(e)]) {
            pick = e;
            break;
          }
      placed[static_cast<std::size_t>(pick)] = true;
      order_.push_back(pick);
    }
  }

  bool run() { return place(0); }

 private:
  bool compatible(std::size_t depth, int element, std::size_t member) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const int other = order_[i];
      const std::size_t img = image_[static_cast<std::size_t>(other)];
      if (img == member) return false;
      const auto a = sets_[member].bits();
      const auto b = sets_[img].bits();
      if (spec_.less(element, other) && !((a & ~b) == 0 && a != b)) return false;
      if (spec_.less(other, element) && !((b & ~a) == 0 && a != b)) return false;
    }
    return true;
  }

  bool place(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (++nodes_ > limits_.max_nodes) throw SearchLimitError("poset embedding exceeded node limit");
    const int element = order_[depth];
    for (std::size_t member = 0; member < sets_.size(); ++member) {
      if (!compatible(depth, element, member)) continue;
      image_[static_cast<std::size_t>(element)] = member;
      if (place(depth + 1)) return true;
    }
    return false;
  }

  const PosetSpec& spec_;
  const std::vector<SubsetWord>& sets_;
  EmbedLimits limits_;
  std::vector<int> order_;
  std::vector<std::size_t> image_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// True iff some injection f from the poset into the family has u < v  =>
/// f(u) ⊂ f(v). Exhaustive backtracking; throws SearchLimitError rather than
/// guess when the family or search exceeds `limits`.
inline bool embeds_poset(const PosetSpec& spec, const SetFamily& family, EmbedLimits limits = {}) {
  if (family.size() > limits.max_family_size)
    throw SearchLimitError("family of " + std::to_string(family.size()) + " members exceeds embedding limit of " +
                           std::to_string(limits.max_family_size));
  if (family.size() < static_cast<std::size_t>(spec.element_count())) return false;
  return detail::Embedder(spec, family, limits).run();
}

}  // namespace nfree
