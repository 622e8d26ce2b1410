#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfree/setkit.hpp"

namespace nfree {

// ---------------------------------------------------------------------------
// Distance certification
// ---------------------------------------------------------------------------

struct DistanceCheck {
  bool ok = true;
  std::optional<std::pair<SubsetWord, SubsetWord>> violation;  // first failing pair in word order

  explicit operator bool() const noexcept { return ok; }
};

inline DistanceCheck verify_min_distance(const std::vector<SubsetWord>& words, int min_distance) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (hamming_distance(words[i], words[j]) < min_distance) return {false, std::make_pair(words[i], words[j])};
  return {};
}

inline DistanceCheck verify_min_distance(const ConstantWeightCode& code) {
  return verify_min_distance(code.words(), code.min_distance());
}

// ---------------------------------------------------------------------------
// Graham–Sloane residue construction
// ---------------------------------------------------------------------------

/// Weight-k words of [n] bucketed by (sum of elements) mod n, in colex order.
inline std::vector<std::vector<SubsetWord>> residue_buckets(int n, int k) {
  std::vector<std::vector<SubsetWord>> buckets(static_cast<std::size_t>(n));
  for (const auto& w : enumerate_level(n, k)) {
    int sum = 0;
    for (int m : w.members()) sum += m;
    buckets[static_cast<std::size_t>(sum % n)].push_back(w);
  }
  return buckets;
}

/// Largest residue bucket (smallest residue on ties); a distance-4 code of
/// size at least ceil(C(n,k)/n).
inline ConstantWeightCode graham_sloane(int n, int k) {
  if (n < 1 || n > kMaxUniverse) throw UsageError("n must lie in [1, 64], got " + std::to_string(n));
  if (k < 0 || k > n) throw UsageError("k must lie in [0, n], got " + std::to_string(k));
  auto buckets = residue_buckets(n, k);
  std::size_t best = 0;
  for (std::size_t r = 1; r < buckets.size(); ++r)
    if (buckets[r].size() > buckets[best].size()) best = r;
  return ConstantWeightCode(n, k, 4, std::move(buckets[best]));
}

// ---------------------------------------------------------------------------
// Johnson bound and complements
// ---------------------------------------------------------------------------

/// Recursive Johnson bound for distance 4: U(n,k) = floor(n/k * U(n-1,k-1)),
/// U(m,0) = U(m,1) = 1.
inline std::uint64_t johnson_upper(int n, int k) {
  if (n < 0 || n > kMaxUniverse) throw UsageError("n must lie in [0, 64], got " + std::to_string(n));
  if (k < 0 || k > n) throw UsageError("k must lie in [0, n], got " + std::to_string(k));
  std::uint64_t u = 1;
  for (int j = 2; j <= k; ++j) {
    const int m = n - k + j;
    u = static_cast<std::uint64_t>((static_cast<unsigned __int128>(m) * u) / static_cast<unsigned>(j));
  }
  return u;
}

inline ConstantWeightCode complement_code(const ConstantWeightCode& code) {
  std::vector<SubsetWord> words;
  words.reserve(code.size());
  for (const auto& w : code.words()) words.push_back(complement(w));
  return ConstantWeightCode(code.universe_size(), code.universe_size() - code.weight(), code.min_distance(),
                            std::move(words));
}

// ---------------------------------------------------------------------------
// Exact maximum code search
// ---------------------------------------------------------------------------

enum class SolveStatus { PROVEN_OPTIMAL, BUDGET_EXHAUSTED };

inline const char* to_string(SolveStatus s) {
  return s == SolveStatus::PROVEN_OPTIMAL ? "PROVEN_OPTIMAL" : "BUDGET_EXHAUSTED";
}

/// Zero in either field means no limit on that resource.
struct SolveBudget {
  std::chrono::milliseconds time{0};
  std::uint64_t nodes = 0;

  static SolveBudget unlimited() { return {}; }
  static SolveBudget millis(std::int64_t ms) { return {std::chrono::milliseconds(ms), 0}; }
};

struct SolveOutcome {
  ConstantWeightCode code;
  SolveStatus status;
  std::uint64_t nodes_explored;
  std::chrono::milliseconds elapsed;
};

namespace detail {

/// Dense bitset over graph vertices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : blocks_((n + 63) / 64, 0) {}

  void set(std::size_t i) { blocks_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { blocks_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (blocks_[i / 64] >> (i % 64)) & 1U; }

  bool none() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](std::uint64_t b) { return b == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }
  // Index of the lowest set bit; caller guarantees non-empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(blocks_[i]));
    return blocks_.size() * 64;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }
  void subtract(const VertexSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
  }

 private:
  std::vector<std::uint64_t> blocks_;
};

/// Maximum clique by branch and bound with a greedy-colouring bound
/// (MCQ-style), vertices taken in their given order.
class MaxCliqueSearch {
 public:
  MaxCliqueSearch(std::vector<VertexSet> adjacency, SolveBudget budget)
      : adj_(std::move(adjacency)), budget_(budget), start_(std::chrono::steady_clock::now()) {}

  void seed(std::vector<std::size_t> clique) { best_ = std::move(clique); }

  /// Returns true when the search completed (best_ is optimal).
  bool run() {
    VertexSet all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all.set(v);
    std::vector<std::size_t> current;
    expand(all, current);
    return !aborted_;
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool out_of_budget() {
    if (budget_.nodes != 0 && nodes_ >= budget_.nodes) return true;
    if (budget_.time.count() != 0 && (nodes_ & 0x3FF) == 0 &&
        std::chrono::steady_clock::now() - start_ >= budget_.time)
      return true;
    return false;
  }

  // Greedy sequential colouring of `candidates`: order[i] gets colour bound[i],
  // non-decreasing in i.
  void colour(const VertexSet& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
    VertexSet uncoloured = candidates;
    std::size_t colour_index = 0;
    while (!uncoloured.none()) {
      ++colour_index;
      VertexSet available = uncoloured;
      while (!available.none()) {
        const std::size_t v = available.first();
        available.reset(v);
        available.subtract(adj_[v]);
        uncoloured.reset(v);
        order.push_back(v);
        bound.push_back(colour_index);
      }
    }
  }

  void expand(VertexSet candidates, std::vector<std::size_t>& current) {
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour(candidates, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      VertexSet next = candidates;
      next &= adj_[v];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(std::move(next), current);
      }
      current.pop_back();
      if (aborted_) return;
      candidates.reset(v);
    }
  }

  std::vector<VertexSet> adj_;
  SolveBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

/// Largest weight-k code over [n] with pairwise distance >= distance, found as
/// a maximum clique of the compatibility graph on enumerate_level(n, k).
/// On budget exhaustion the best code found so far is returned.
inline SolveOutcome exact_max_code(int n, int distance, int k, SolveBudget budget = SolveBudget::unlimited()) {
  if (n < 1 || n > kMaxUniverse) throw UsageError("n must lie in [1, 64], got " + std::to_string(n));
  if (k < 0 || k > n) throw UsageError("k must lie in [0, n], got " + std::to_string(k));
  if (distance < 2 || distance % 2 != 0)
    throw UsageError("distance must be an even integer >= 2, got " + std::to_string(distance));
  if (binomial(n, k) > 20000) throw UsageError("level C(n,k) too large for exact search");

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  };

  auto words = enumerate_level(n, k);
  if (k == 0 || k == n) return {ConstantWeightCode(n, k, distance, std::move(words)), SolveStatus::PROVEN_OPTIMAL, 0, elapsed()};

  const std::size_t count = words.size();
  std::vector<detail::VertexSet> adjacency(count, detail::VertexSet(count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (hamming_distance(words[i], words[j]) >= distance) {
        adjacency[i].set(j);
        adjacency[j].set(i);
      }

  // Greedy incumbent: first-fit in colex order.
  std::vector<std::size_t> greedy;
  for (std::size_t v = 0; v < count; ++v)
    if (std::all_of(greedy.begin(), greedy.end(), [&](std::size_t u) { return adjacency[u].test(v); }))
      greedy.push_back(v);

  detail::MaxCliqueSearch search(std::move(adjacency), budget);
  search.seed(greedy);
  const bool complete = search.run();

  std::vector<std::size_t> chosen = search.best();
  std::sort(chosen.begin(), chosen.end());
  std::vector<SubsetWord> code_words;
  code_words.reserve(chosen.size());
  for (auto v : chosen) code_words.push_back(words[v]);
  return {ConstantWeightCode(n, k, distance, std::move(code_words)),
          complete ? SolveStatus::PROVEN_OPTIMAL : SolveStatus::BUDGET_EXHAUSTED, search.nodes(), elapsed()};
}

}  // namespace nfree
