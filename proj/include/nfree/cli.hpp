#pragma once

// Batch command-line front end. Exit codes: 0 computed, 1 a checked
// property is violated, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nfree/codes.hpp"
#include "nfree/families.hpp"
#include "nfree/fileio.hpp"
#include "nfree/posetcheck.hpp"
#include "nfree/reportkit.hpp"
#include "nfree/setkit.hpp"

namespace nfree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct CommandConfig {
  int n = 0;
  std::optional<int> k;
  int pivot = 1;
  bool all_pivots = false;
  int distance = 4;
  std::int64_t budget_millis = 60'000;
  std::string method = "exact";
  std::string kind;
  std::string in_path;
  std::string out_path;
  std::string code_path;
  std::string format = "structured";
  std::vector<int> n_list;
  std::vector<std::string> imports;
  unsigned workers = 1;

  int level() const { return k.value_or(n / 2); }
};

namespace detail {

/// Writes `text` to `path` via a temporary sibling and a rename, so a
/// failure never leaves a partial file behind. Empty path means `out`.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      throw UsageError("cannot write '" + path + "'");
    }
  }
  std::filesystem::rename(tmp, target);
}

inline void validate_n(int n) {
  if (n < 1 || n > kMaxUniverse) throw UsageError("--n must lie in [1, 64], got " + std::to_string(n));
}

inline ConstantWeightCode source_code(const CommandConfig& cfg, int weight, std::string& provenance) {
  if (!cfg.code_path.empty()) {
    auto code = to_code(read_set_file(cfg.code_path));
    if (auto check = verify_min_distance(code); !check)
      throw UsageError("code in '" + cfg.code_path + "' violates its minimum distance: " +
                       format_set(check.violation->first) + " vs " + format_set(check.violation->second));
    provenance = "FILE";
    return code;
  }
  if (cfg.method == "gs") {
    provenance = "GS";
    return graham_sloane(cfg.n, weight);
  }
  auto solved = exact_max_code(cfg.n, 4, weight, SolveBudget::millis(cfg.budget_millis));
  provenance = std::string("EXACT status=") + to_string(solved.status);
  return std::move(solved.code);
}

inline std::string family_file(const ConstructedFamily& built, const std::string& provenance) {
  std::string params = " n=" + std::to_string(built.n) + " k=" + std::to_string(built.k);
  if (built.pivot) params += " pivot=" + std::to_string(*built.pivot);
  params += " code_size=" + std::to_string(built.code_size);
  return write_family(built.family, {std::string(" construction=") + to_string(built.construction), params,
                                     " code=" + provenance});
}

inline std::string labelled(const char* label, const SubsetWord& w) {
  return std::string(label) + " " + format_set(w) + "\n";
}

inline int run_gs(const CommandConfig& cfg, std::ostream& out) {
  validate_n(cfg.n);
  auto code = graham_sloane(cfg.n, cfg.level());
  emit(cfg.out_path, write_code(code, {" construction=graham-sloane"}), out);
  return kExitOk;
}

inline int run_exact(const CommandConfig& cfg, std::ostream& out) {
  validate_n(cfg.n);
  auto solved = exact_max_code(cfg.n, cfg.distance, cfg.level(), SolveBudget::millis(cfg.budget_millis));
  std::string text;
  if (cfg.format == "csv")
    text = solve_outcome_csv(solved);
  else if (cfg.format == "family-file")
    text = write_code(solved.code, {std::string(" status=") + to_string(solved.status)});
  else
    text = to_json(solved).dump(2) + "\n";
  emit(cfg.out_path, text, out);
  return kExitOk;
}

inline int run_build(const CommandConfig& cfg, std::ostream& out) {
  validate_n(cfg.n);
  const int k = cfg.level();
  std::string provenance;
  std::optional<ConstructedFamily> built;
  if (cfg.kind == "kt") {
    built = build_kt(cfg.n, k, source_code(cfg, k + 1, provenance));
  } else if (cfg.kind == "three-level") {
    built = build_three_level(cfg.n, k, source_code(cfg, k, provenance), cfg.pivot);
  } else {
    built = build_naive_all_extensions(cfg.n, k, source_code(cfg, k, provenance));
  }
  emit(cfg.out_path, family_file(*built, provenance), out);
  return kExitOk;
}

inline int run_check(const CommandConfig& cfg, std::ostream& out) {
  const auto file = read_set_file(cfg.in_path);
  if (cfg.kind == "claim1") {
    auto code = to_code(file);
    out << "code size: " << code.size() << "\n";
    if (auto check = verify_min_distance(code); !check) {
      out << "code distance " << code.min_distance() << ": false\n"
          << labelled("A:", check.violation->first) << labelled("B:", check.violation->second);
      return kExitViolation;
    }
    out << "code distance " << code.min_distance() << ": true\n";
    int status = kExitOk;
    std::vector<int> pivots;
    if (cfg.all_pivots)
      for (int i = 1; i <= code.universe_size(); ++i) pivots.push_back(i);
    else
      pivots.push_back(cfg.pivot);
    for (int pivot : pivots) {
      const auto report = check_claim1(pivot_split(code, pivot));
      out << "pivot " << pivot << ": c_up SEC: " << (report.up.ok ? "true" : "false")
          << ", c_down SEC: " << (report.down.ok ? "true" : "false")
          << ", c_down below c_up: " << (report.containment ? "found" : "none") << "\n";
      if (!report.up.ok) out << labelled("up A:", report.up.violation->first) << labelled("up B:", report.up.violation->second);
      if (!report.down.ok)
        out << labelled("down A:", report.down.violation->first) << labelled("down B:", report.down.violation->second);
      if (report.containment)
        out << labelled("c_down:", report.containment->first) << labelled("c_up:", report.containment->second);
      if (!report.ok()) status = kExitViolation;
    }
    out << "claim1: " << (status == kExitOk ? "true" : "false") << "\n";
    return status;
  }

  const auto family = to_family(file);
  out << "family size: " << family.size() << "\n";
  if (cfg.kind == "n") {
    auto witness = find_n_witness(family);
    out << "N-free: " << (witness ? "false" : "true") << "\n";
    if (!witness) return kExitOk;
    out << labelled("W:", witness->w) << labelled("X:", witness->x) << labelled("Y:", witness->y)
        << labelled("Z:", witness->z);
    return kExitViolation;
  }
  if (cfg.kind == "v") {
    auto witness = find_v_witness(family);
    out << "V-free: " << (witness ? "false" : "true") << "\n";
    if (!witness) return kExitOk;
    out << labelled("X:", witness->x) << labelled("Y:", witness->y) << labelled("Z:", witness->z);
    return kExitViolation;
  }
  auto pair = find_comparable_pair(family);
  out << "antichain: " << (pair ? "false" : "true") << "\n";
  if (!pair) return kExitOk;
  out << labelled("lower:", pair->first) << labelled("upper:", pair->second);
  return kExitViolation;
}

inline int run_table(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.n_list.empty()) throw UsageError("--n-list needs at least one value");
  TableOptions options;
  options.method = cfg.method == "gs" ? Method::GS : Method::EXACT;
  options.budget = SolveBudget::millis(cfg.budget_millis);
  options.workers = cfg.workers;
  for (const auto& path : cfg.imports) options.imports.push_back(to_code(read_set_file(path)));
  auto rows = bound_table(cfg.n_list, options);
  emit(cfg.out_path, cfg.format == "csv" ? bound_table_csv(rows) : bound_table_json(rows, options), out);
  return kExitOk;
}

inline int run_scan(const CommandConfig& cfg, std::ostream& out) {
  auto verdict = unimodality_scan(cfg.n, SolveBudget::millis(cfg.budget_millis));
  emit(cfg.out_path, cfg.format == "csv" ? unimodality_csv(verdict) : to_json(verdict).dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CommandConfig cfg;
  CLI::App app{"Constant-weight codes and N-free families in the Boolean lattice", "nfree"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", cfg.workers, "Worker threads for table generation")->check(CLI::Range(1u, 256u));

  const auto budget_help = "Solver time budget per instance in milliseconds (0 = unlimited)";
  const auto formats = CLI::IsMember({"structured", "csv", "family-file"});

  auto* gs = app.add_subcommand("gs", "Graham-Sloane residue code");
  gs->add_option("--n", cfg.n, "Universe size")->required();
  gs->add_option("--k", cfg.k, "Weight (default n/2)");
  gs->add_option("--out", cfg.out_path, "Output file (default stdout)");

  auto* exact = app.add_subcommand("exact", "Exact maximum constant-weight code");
  exact->add_option("--n", cfg.n, "Universe size")->required();
  exact->add_option("--k", cfg.k, "Weight (default n/2)");
  exact->add_option("--d", cfg.distance, "Minimum distance (even)");
  exact->add_option("--budget", cfg.budget_millis, budget_help)->check(CLI::NonNegativeNumber);
  exact->add_option("--format", cfg.format)->check(formats);
  exact->add_option("--out", cfg.out_path);

  auto* build = app.add_subcommand("build", "Build a family: kt, three-level or naive");
  build->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"kt", "three-level", "naive"}));
  build->add_option("--n", cfg.n, "Universe size")->required();
  build->add_option("--k", cfg.k, "Middle level (default n/2)");
  build->add_option("--pivot", cfg.pivot, "Pivot element for three-level");
  build->add_option("--code", cfg.code_path, "Code file to build from");
  build->add_option("--method", cfg.method, "Code source when --code is absent")->check(CLI::IsMember({"gs", "exact"}));
  build->add_option("--budget", cfg.budget_millis, budget_help)->check(CLI::NonNegativeNumber);
  build->add_option("--out", cfg.out_path);

  auto* check = app.add_subcommand("check", "Check n, v, antichain or claim1 on a file");
  check->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"n", "v", "antichain", "claim1"}));
  check->add_option("--in", cfg.in_path, "Family or code file")->required();
  check->add_option("--pivot", cfg.pivot, "Pivot for claim1");
  check->add_flag("--all-pivots", cfg.all_pivots, "Check claim1 for every pivot");

  auto* table = app.add_subcommand("table", "Bound table for k = n/2");
  table->add_option("--n-list", cfg.n_list, "Comma-separated n values")->required()->delimiter(',');
  table->add_option("--method", cfg.method)->check(CLI::IsMember({"gs", "exact"}));
  table->add_option("--budget", cfg.budget_millis, budget_help)->check(CLI::NonNegativeNumber);
  table->add_option("--import", cfg.imports, "Code files overriding computed cells");
  table->add_option("--format", cfg.format)->check(CLI::IsMember({"structured", "csv"}));
  table->add_option("--out", cfg.out_path);

  auto* scan = app.add_subcommand("scan", "Unimodality scan of A(n,4,k) over 3 <= k <= n-3");
  scan->add_option("--n", cfg.n, "Universe size")->required();
  scan->add_option("--budget", cfg.budget_millis, budget_help)->check(CLI::NonNegativeNumber);
  scan->add_option("--format", cfg.format)->check(CLI::IsMember({"structured", "csv"}));
  scan->add_option("--out", cfg.out_path);

  std::vector<const char*> argv{"nfree"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (gs->parsed()) return detail::run_gs(cfg, out);
    if (exact->parsed()) return detail::run_exact(cfg, out);
    if (build->parsed()) return detail::run_build(cfg, out);
    if (check->parsed()) return detail::run_check(cfg, out);
    if (table->parsed()) return detail::run_table(cfg, out);
    if (scan->parsed()) return detail::run_scan(cfg, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nfree::cli
