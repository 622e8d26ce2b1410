#pragma once

// Subsets of [n] = {1,...,n} packed into one machine word, plus the
// constant-weight code and set-family containers built on top of them.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace nfree {

/// Raised for bad parameters or inputs that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxUniverse = 64;

/// Exact binomial coefficient; every C(n,k) with n <= 64 fits in 64 bits.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 0; i < k; ++i) r = r * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
  return static_cast<std::uint64_t>(r);
}

/// Bit mask with the low n bits set.
inline constexpr std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A subset of [n]. Element i (1-based) lives in bit i-1.
class SubsetWord {
 public:
  SubsetWord() = default;

  SubsetWord(int universe_size, std::uint64_t bits) : n_(universe_size), bits_(bits) {
    if (universe_size < 1 || universe_size > kMaxUniverse)
      throw UsageError("universe size must lie in [1, 64], got " + std::to_string(universe_size));
    if ((bits & ~full_mask(universe_size)) != 0)
      throw UsageError("subset has members outside [1, " + std::to_string(universe_size) + "]");
  }

  static SubsetWord from_members(int universe_size, const std::vector<int>& members) {
    if (universe_size < 1 || universe_size > kMaxUniverse)
      throw UsageError("universe size must lie in [1, 64], got " + std::to_string(universe_size));
    std::uint64_t bits = 0;
    for (int m : members) {
      if (m < 1 || m > universe_size)
        throw UsageError("element " + std::to_string(m) + " outside [1, " + std::to_string(universe_size) + "]");
      bits |= std::uint64_t{1} << (m - 1);
    }
    return SubsetWord(universe_size, bits);
  }

  static SubsetWord from_members(int universe_size, std::initializer_list<int> members) {
    return from_members(universe_size, std::vector<int>(members));
  }

  int universe_size() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  int weight() const noexcept { return std::popcount(bits_); }
  bool empty() const noexcept { return bits_ == 0; }

  bool contains(int element) const noexcept {
    return element >= 1 && element <= n_ && ((bits_ >> (element - 1)) & 1U);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(weight()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  SubsetWord with(int element) const {
    return from_bits_checked(bits_ | element_bit(element));
  }
  SubsetWord without(int element) const {
    return from_bits_checked(bits_ & ~element_bit(element));
  }

  friend bool operator==(const SubsetWord&, const SubsetWord&) = default;
  // Colexicographic within a universe: compares the bitmask value.
  friend std::strong_ordering operator<=>(const SubsetWord& a, const SubsetWord& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t element_bit(int element) const {
    if (element < 1 || element > n_)
      throw UsageError("element " + std::to_string(element) + " outside [1, " + std::to_string(n_) + "]");
    return std::uint64_t{1} << (element - 1);
  }
  SubsetWord from_bits_checked(std::uint64_t bits) const {
    SubsetWord w;
    w.n_ = n_;
    w.bits_ = bits;
    return w;
  }

  int n_ = 1;
  std::uint64_t bits_ = 0;
};

struct SubsetWordHash {
  std::size_t operator()(const SubsetWord& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.bits() * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(w.universe_size()));
  }
};

inline void require_same_universe(const SubsetWord& a, const SubsetWord& b) {
  if (a.universe_size() != b.universe_size())
    throw UsageError("universe size mismatch: " + std::to_string(a.universe_size()) + " vs " +
                     std::to_string(b.universe_size()));
}

/// |a △ b|.
inline int hamming_distance(const SubsetWord& a, const SubsetWord& b) {
  require_same_universe(a, b);
  return std::popcount(a.bits() ^ b.bits());
}

inline bool is_subset(const SubsetWord& a, const SubsetWord& b) {
  require_same_universe(a, b);
  return (a.bits() & ~b.bits()) == 0;
}

/// a ⊆ b and a ≠ b.
inline bool is_strict_subset(const SubsetWord& a, const SubsetWord& b) {
  return is_subset(a, b) && a.bits() != b.bits();
}

inline SubsetWord complement(const SubsetWord& a) {
  return SubsetWord(a.universe_size(), ~a.bits() & full_mask(a.universe_size()));
}

/// All weight-k subsets of [n] in colexicographic (increasing bitmask) order.
inline std::vector<SubsetWord> enumerate_level(int n, int k) {
  if (n < 1 || n > kMaxUniverse) throw UsageError("n must lie in [1, 64], got " + std::to_string(n));
  if (k < 0 || k > n) throw UsageError("k must lie in [0, n], got " + std::to_string(k));
  const std::uint64_t count = binomial(n, k);
  std::vector<SubsetWord> out;
  out.reserve(static_cast<std::size_t>(count));
  std::uint64_t v = full_mask(k);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(n, v);
    if (i + 1 == count || v == 0) break;
    // Gosper's hack: next larger word with the same popcount.
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

/// Weight-k words over [n] with a claimed minimum pairwise distance.
///
/// Construction checks weights, universe and distinctness. The distance
/// claim is certified separately by verify_min_distance (codes.hpp), so a
/// code read from a file can be inspected even when the claim is false.
class ConstantWeightCode {
 public:
  ConstantWeightCode(int n, int k, int min_distance, std::vector<SubsetWord> words)
      : n_(n), k_(k), d_(min_distance), words_(std::move(words)) {
    if (n < 1 || n > kMaxUniverse) throw UsageError("n must lie in [1, 64], got " + std::to_string(n));
    if (k < 0 || k > n) throw UsageError("k must lie in [0, n], got " + std::to_string(k));
    if (min_distance < 2 || min_distance % 2 != 0)
      throw UsageError("minimum distance must be an even integer >= 2, got " + std::to_string(min_distance));
    std::unordered_set<SubsetWord, SubsetWordHash> seen;
    for (const auto& w : words_) {
      if (w.universe_size() != n) throw UsageError("code word has universe size " + std::to_string(w.universe_size()));
      if (w.weight() != k)
        throw UsageError("code word of weight " + std::to_string(w.weight()) + " in weight-" + std::to_string(k) +
                         " code");
      if (!seen.insert(w).second) throw UsageError("duplicate code word");
    }
  }

  int universe_size() const noexcept { return n_; }
  int weight() const noexcept { return k_; }
  int min_distance() const noexcept { return d_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<SubsetWord>& words() const noexcept { return words_; }

  friend bool operator==(const ConstantWeightCode&, const ConstantWeightCode&) = default;

 private:
  int n_;
  int k_;
  int d_;
  std::vector<SubsetWord> words_;
};

/// A collection of distinct subsets of [n], viewed as a subposet of B_n.
class SetFamily {
 public:
  explicit SetFamily(int n, std::vector<SubsetWord> sets = {}) : n_(n), sets_(std::move(sets)) {
    if (n < 1 || n > kMaxUniverse) throw UsageError("n must lie in [1, 64], got " + std::to_string(n));
    std::unordered_set<SubsetWord, SubsetWordHash> seen;
    for (const auto& s : sets_) {
      if (s.universe_size() != n) throw UsageError("family member has universe size " + std::to_string(s.universe_size()));
      if (!seen.insert(s).second) throw UsageError("duplicate family member");
    }
  }

  int universe_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return sets_.size(); }
  const std::vector<SubsetWord>& sets() const noexcept { return sets_; }
  const SubsetWord& operator[](std::size_t i) const { return sets_[i]; }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  int n_;
  std::vector<SubsetWord> sets_;
};

}  // namespace nfree
