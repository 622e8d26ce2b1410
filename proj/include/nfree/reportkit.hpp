#pragma once

// Bound tables comparing the two-level and three-level constructions,
// reference envelopes, and unimodality scans of A(n,4,k).

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nfree/codes.hpp"
#include "nfree/setkit.hpp"

namespace nfree {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Provenance { GS, EXACT, FILE };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::GS: return "GS";
    case Provenance::EXACT: return "EXACT";
    case Provenance::FILE: return "FILE";
  }
  return "GS";
}

enum class Method { GS, EXACT };

/// A code for one (n, k) cell together with where it came from.
struct CodeCell {
  ConstantWeightCode code;
  Provenance provenance;
  bool optimal;  // proven by the solver, or meets the Johnson bound
};

struct BoundRecord {
  int n = 0;
  int k = 0;
  std::uint64_t binom = 0;
  std::size_t code_k = 0;
  Provenance prov_k = Provenance::GS;
  std::size_t code_k1 = 0;
  Provenance prov_k1 = Provenance::GS;
  std::uint64_t kt_bound = 0;
  std::uint64_t new_bound = 0;
  std::uint64_t johnson_k = 0;
  std::uint64_t johnson_k1 = 0;
  bool optimal_k = false;
  bool optimal_k1 = false;

  // The codes behind code_k and code_k1, so every row can be rebuilt as a family.
  std::optional<ConstantWeightCode> witness_k;
  std::optional<ConstantWeightCode> witness_k1;

  /// Summand identities and the provenance-implied inequalities.
  bool consistent() const {
    if (binom != nfree::binomial(n, k)) return false;
    if (kt_bound != binom + code_k1 || new_bound != binom + code_k) return false;
    if (code_k > johnson_k || code_k1 > johnson_k1) return false;
    auto gs_floor = [&](std::uint64_t level) { return (level + static_cast<std::uint64_t>(n) - 1) / static_cast<std::uint64_t>(n); };
    if (prov_k == Provenance::GS && code_k < gs_floor(binom)) return false;
    if (prov_k1 == Provenance::GS && code_k1 < gs_floor(nfree::binomial(n, k + 1))) return false;
    return true;
  }
};

struct TableOptions {
  Method method = Method::EXACT;
  SolveBudget budget = SolveBudget::millis(60'000);
  std::vector<ConstantWeightCode> imports;  // FILE cells; re-verified before use
  unsigned workers = 1;
};

/// Best available code for (n, k) under the FILE > EXACT > GS hierarchy.
/// An unfinished exact search keeps its incumbent only when it beats GS.
inline CodeCell best_code(int n, int k, const TableOptions& options) {
  const auto johnson = johnson_upper(n, k);
  for (const auto& imported : options.imports) {
    if (imported.universe_size() != n || imported.weight() != k) continue;
    if (imported.min_distance() < 4 || !verify_min_distance(imported))
      throw UsageError("imported code for n=" + std::to_string(n) + " k=" + std::to_string(k) +
                       " fails distance 4 verification");
    return {imported, Provenance::FILE, imported.size() == johnson};
  }
  auto gs = graham_sloane(n, k);
  if (options.method == Method::EXACT) {
    auto solved = exact_max_code(n, 4, k, options.budget);
    if (solved.status == SolveStatus::PROVEN_OPTIMAL) return {std::move(solved.code), Provenance::EXACT, true};
    if (solved.code.size() > gs.size())
      return {std::move(solved.code), Provenance::EXACT, solved.code.size() == johnson};
  }
  const bool meets_johnson = gs.size() == johnson;
  return {std::move(gs), Provenance::GS, meets_johnson};
}

inline BoundRecord make_bound_record(int n, const TableOptions& options) {
  if (n < 2 || n > kMaxUniverse) throw UsageError("table rows need 2 <= n <= 64, got " + std::to_string(n));
  const int k = n / 2;
  auto at_k = best_code(n, k, options);
  auto at_k1 = best_code(n, k + 1, options);
  BoundRecord r;
  r.n = n;
  r.k = k;
  r.binom = binomial(n, k);
  r.code_k = at_k.code.size();
  r.prov_k = at_k.provenance;
  r.code_k1 = at_k1.code.size();
  r.prov_k1 = at_k1.provenance;
  r.kt_bound = r.binom + r.code_k1;
  r.new_bound = r.binom + r.code_k;
  r.johnson_k = johnson_upper(n, k);
  r.johnson_k1 = johnson_upper(n, k + 1);
  r.optimal_k = at_k.optimal;
  r.optimal_k1 = at_k1.optimal;
  r.witness_k = std::move(at_k.code);
  r.witness_k1 = std::move(at_k1.code);
  return r;
}

/// One record per n, in the order given, with k = floor(n/2).
inline std::vector<BoundRecord> bound_table(const std::vector<int>& n_values, const TableOptions& options = {}) {
  std::vector<BoundRecord> rows(n_values.size());
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < n_values.size(); ++i) rows[i] = make_bound_record(n_values[i], options);
    return rows;
  }
  for (std::size_t start = 0; start < n_values.size(); start += workers) {
    std::vector<std::future<BoundRecord>> batch;
    const std::size_t stop = std::min(n_values.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(std::launch::async, make_bound_record, n_values[i], std::cref(options)));
    for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Reference envelope
// ---------------------------------------------------------------------------

/// Non-negative rational in lowest terms.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational of(std::uint64_t num, std::uint64_t den) {
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
  }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// Leading terms of the known asymptotic bounds on the largest N-free family:
/// C(n, n/2)(1 + 1/n) and C(n, n/2)(1 + 2/n). The second-order terms are
/// unknown, so these are reference columns, not bounds.
struct Envelope {
  int n = 0;
  Rational lower_ref;
  Rational upper_ref;
  bool second_order_terms_omitted = true;
};

inline Envelope theorem1_envelope(int n) {
  if (n < 2 || n > kMaxUniverse) throw UsageError("envelope needs 2 <= n <= 64, got " + std::to_string(n));
  const auto b = binomial(n, n / 2);
  const auto un = static_cast<std::uint64_t>(n);
  return {n, Rational::of(b * (un + 1), un), Rational::of(b * (un + 2), un), true};
}

// ---------------------------------------------------------------------------
// Unimodality scan
// ---------------------------------------------------------------------------

struct ScanEntry {
  int k = 0;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::optional<std::uint64_t> exact;
};

struct UnimodalityVerdict {
  int n = 0;
  std::vector<ScanEntry> entries;  // k ascending over [3, n-3]
  bool strictly_unimodal_on_exact_range = false;
  std::set<int> peak_positions;
};

/// Strictly up to the maximum, strictly down after it; the maximum may be
/// shared by two neighbouring positions. An empty sequence is not unimodal.
inline bool strictly_unimodal(const std::vector<std::uint64_t>& values) {
  if (values.empty()) return false;
  std::size_t i = 0;
  while (i + 1 < values.size() && values[i] < values[i + 1]) ++i;
  if (i + 1 < values.size() && values[i] == values[i + 1]) ++i;
  while (i + 1 < values.size() && values[i] > values[i + 1]) ++i;
  return i + 1 == values.size();
}

inline UnimodalityVerdict unimodality_scan(int n, SolveBudget budget = SolveBudget::millis(60'000)) {
  if (n < 6 || n > kMaxUniverse) throw UsageError("unimodality scan needs n >= 6, got " + std::to_string(n));
  UnimodalityVerdict verdict;
  verdict.n = n;
  std::vector<std::uint64_t> exact_values;
  std::vector<int> exact_ks;
  for (int k = 3; k <= n - 3; ++k) {
    ScanEntry e;
    e.k = k;
    e.lower = graham_sloane(n, k).size();
    e.upper = johnson_upper(n, k);
    if (binomial(n, k) <= 20000) {
      auto solved = exact_max_code(n, 4, k, budget);
      e.lower = std::max<std::uint64_t>(e.lower, solved.code.size());
      if (solved.status == SolveStatus::PROVEN_OPTIMAL) {
        e.exact = solved.code.size();
        e.upper = *e.exact;
      }
    }
    if (e.exact) {
      exact_values.push_back(*e.exact);
      exact_ks.push_back(k);
    }
    verdict.entries.push_back(e);
  }
  verdict.strictly_unimodal_on_exact_range = strictly_unimodal(exact_values);
  if (!exact_values.empty()) {
    const auto peak = *std::max_element(exact_values.begin(), exact_values.end());
    for (std::size_t i = 0; i < exact_values.size(); ++i)
      if (exact_values[i] == peak) verdict.peak_positions.insert(exact_ks[i]);
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline constexpr const char* kBoundCsvHeader =
    "n,k,binom,code_k,prov_k,code_k1,prov_k1,kt_bound,new_bound,johnson_k,johnson_k1,optimal_k,optimal_k1";

inline std::string bound_table_csv(const std::vector<BoundRecord>& rows) {
  std::string out = std::string(kBoundCsvHeader) + "\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.binom) + "," +
           std::to_string(r.code_k) + "," + to_string(r.prov_k) + "," + std::to_string(r.code_k1) + "," +
           to_string(r.prov_k1) + "," + std::to_string(r.kt_bound) + "," + std::to_string(r.new_bound) + "," +
           std::to_string(r.johnson_k) + "," + std::to_string(r.johnson_k1) + "," + b(r.optimal_k) + "," +
           b(r.optimal_k1) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json to_json(const BoundRecord& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"binom", r.binom},
          {"code_k", r.code_k},
          {"prov_k", to_string(r.prov_k)},
          {"code_k1", r.code_k1},
          {"prov_k1", to_string(r.prov_k1)},
          {"kt_bound", r.kt_bound},
          {"new_bound", r.new_bound},
          {"johnson_k", r.johnson_k},
          {"johnson_k1", r.johnson_k1},
          {"optimal_k", r.optimal_k},
          {"optimal_k1", r.optimal_k1}};
}

inline nlohmann::ordered_json to_json(const Envelope& e) {
  return {{"n", e.n},
          {"lower_ref", e.lower_ref.str()},
          {"upper_ref", e.upper_ref.str()},
          {"second_order_terms_omitted", e.second_order_terms_omitted}};
}

/// `records` plus `meta`; envelopes ride along as advisory reference columns.
inline std::string bound_table_json(const std::vector<BoundRecord>& rows, const TableOptions& options) {
  nlohmann::ordered_json doc;
  doc["meta"] = {{"tool", "nfree"},
                 {"version", kToolVersion},
                 {"method", options.method == Method::EXACT ? "exact" : "gs"},
                 {"budget_millis", options.budget.time.count()},
                 {"budget_nodes", options.budget.nodes}};
  doc["records"] = nlohmann::ordered_json::array();
  doc["envelopes"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc["records"].push_back(to_json(r));
    doc["envelopes"].push_back(to_json(theorem1_envelope(r.n)));
  }
  return doc.dump(2) + "\n";
}

inline nlohmann::ordered_json to_json(const SolveOutcome& s) {
  return {{"n", s.code.universe_size()},
          {"k", s.code.weight()},
          {"d", s.code.min_distance()},
          {"size", s.code.size()},
          {"status", to_string(s.status)},
          {"nodes", s.nodes_explored},
          {"millis", s.elapsed.count()}};
}

inline std::string solve_outcome_csv(const SolveOutcome& s) {
  return "n,k,d,size,status,nodes,millis\n" + std::to_string(s.code.universe_size()) + "," +
         std::to_string(s.code.weight()) + "," + std::to_string(s.code.min_distance()) + "," +
         std::to_string(s.code.size()) + "," + to_string(s.status) + "," + std::to_string(s.nodes_explored) + "," +
         std::to_string(s.elapsed.count()) + "\n";
}

inline nlohmann::ordered_json to_json(const UnimodalityVerdict& v) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : v.entries) {
    nlohmann::ordered_json j = {{"k", e.k}, {"lower", e.lower}, {"upper", e.upper}};
    j["exact"] = e.exact ? nlohmann::ordered_json(*e.exact) : nlohmann::ordered_json(nullptr);
    entries.push_back(std::move(j));
  }
  return {{"n", v.n},
          {"values", entries},
          {"strictly_unimodal_on_exact_range", v.strictly_unimodal_on_exact_range},
          {"peak_positions", std::vector<int>(v.peak_positions.begin(), v.peak_positions.end())}};
}

inline std::string unimodality_csv(const UnimodalityVerdict& v) {
  std::string out = "n,k,lower,upper,exact\n";
  for (const auto& e : v.entries)
    out += std::to_string(v.n) + "," + std::to_string(e.k) + "," + std::to_string(e.lower) + "," +
           std::to_string(e.upper) + "," + (e.exact ? std::to_string(*e.exact) : std::string("unknown")) + "\n";
  return out;
}

}  // namespace nfree
