#pragma once

// Text format shared by codes and families:
//
//   n=6 k=3 d=4        <- header; families carry only n=<n>
//   # comment
//   1,2,3              <- one set per line, ascending 1-based elements
//   -                  <- the empty set

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nfree/setkit.hpp"

namespace nfree {

/// Malformed file content. what() names the offending line.
class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& message, const std::string& source = "")
      : std::runtime_error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}
  int line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
};

inline std::string format_set(const SubsetWord& w) {
  if (w.empty()) return "-";
  std::string out;
  for (int m : w.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(m);
  }
  return out;
}

/// Parsed contents of a family or code file.
struct SetFile {
  int n = 0;
  std::optional<int> k;
  std::optional<int> d;
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<SubsetWord> sets;

  bool is_code() const { return k.has_value() && d.has_value(); }
};

namespace detail {

inline std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline void parse_header(std::string_view line, int lineno, SetFile& out) {
  std::istringstream fields{std::string(line)};
  std::string tok;
  bool have_n = false;
  while (fields >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw FormatError(lineno, "expected key=value in header, got '" + tok + "'");
    auto key = std::string_view(tok).substr(0, eq);
    auto value = parse_int(std::string_view(tok).substr(eq + 1));
    if (!value) throw FormatError(lineno, "non-integer value in header field '" + tok + "'");
    if (key == "n" && !have_n) {
      out.n = *value;
      have_n = true;
    } else if (key == "k" && !out.k) {
      out.k = *value;
    } else if (key == "d" && !out.d) {
      out.d = *value;
    } else {
      throw FormatError(lineno, "unexpected header field '" + tok + "'");
    }
  }
  if (!have_n) throw FormatError(lineno, "header must start with n=<n>");
  if (out.n < 1 || out.n > kMaxUniverse) throw FormatError(lineno, "n must lie in [1, 64]");
  if (out.k.has_value() != out.d.has_value()) throw FormatError(lineno, "code header needs both k= and d=");
}

inline SubsetWord parse_set(std::string_view line, int lineno, int n) {
  if (line == "-") return SubsetWord(n, 0);
  std::vector<int> members;
  int previous = 0;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    auto piece = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    auto value = parse_int(piece);
    if (!value) throw FormatError(lineno, "bad element '" + std::string(piece) + "'");
    if (*value < 1 || *value > n)
      throw FormatError(lineno, "element " + std::to_string(*value) + " outside [1, " + std::to_string(n) + "]");
    if (*value <= previous) throw FormatError(lineno, "elements must be strictly ascending");
    previous = *value;
    members.push_back(*value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return SubsetWord::from_members(n, members);
}

}  // namespace detail

inline SetFile parse_set_file(std::istream& in) {
  SetFile out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  std::unordered_set<SubsetWord, SubsetWordHash> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') {
      out.comments.push_back(line.substr(1));
      continue;
    }
    if (line.empty()) throw FormatError(lineno, "empty line (write the empty set as '-')");
    if (!header_seen) {
      detail::parse_header(line, lineno, out);
      header_seen = true;
      continue;
    }
    auto set = detail::parse_set(line, lineno, out.n);
    if (out.k && set.weight() != *out.k)
      throw FormatError(lineno, "set of weight " + std::to_string(set.weight()) + " in a weight-" +
                                    std::to_string(*out.k) + " code");
    if (!seen.insert(set).second) throw FormatError(lineno, "duplicate set");
    out.sets.push_back(set);
  }
  if (!header_seen) throw FormatError(lineno + 1, "missing header line");
  return out;
}

inline SetFile parse_set_file(const std::string& text) {
  std::istringstream in(text);
  return parse_set_file(in);
}

inline SetFile read_set_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path.string() + "'");
  try {
    return parse_set_file(in);
  } catch (const FormatError& e) {
    throw FormatError(e.line(), e.message(), path.string());
  }
}

/// Any set file viewed as a family.
inline SetFamily to_family(const SetFile& file) { return SetFamily(file.n, file.sets); }

inline ConstantWeightCode to_code(const SetFile& file) {
  if (!file.is_code()) throw UsageError("file header lacks k= and d=; not a code file");
  return ConstantWeightCode(file.n, *file.k, *file.d, file.sets);
}

inline std::string write_code(const ConstantWeightCode& code, const std::vector<std::string>& comments = {}) {
  std::string out = "n=" + std::to_string(code.universe_size()) + " k=" + std::to_string(code.weight()) +
                    " d=" + std::to_string(code.min_distance()) + "\n";
  for (const auto& c : comments) out += "#" + c + "\n";
  for (const auto& w : code.words()) out += format_set(w) + "\n";
  return out;
}

inline std::string write_family(const SetFamily& family, const std::vector<std::string>& comments = {}) {
  std::string out = "n=" + std::to_string(family.universe_size()) + "\n";
  for (const auto& c : comments) out += "#" + c + "\n";
  for (const auto& s : family.sets()) out += format_set(s) + "\n";
  return out;
}

}  // namespace nfree
