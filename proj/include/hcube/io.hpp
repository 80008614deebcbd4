#pragma once

// Text formats for set families and cube-function bundles.
//
// Family file:
//   # comment            '#' starts a comment anywhere on a line
//   m=5                  optional header; otherwise m = largest element seen
//   1,3                  one set per line, 1-based elements
//   -                    the empty set
//
// Function file:
//   m=<int> count=<n>    header
//   then n blocks of 2^m decimal values in mask-index order, where the index
//   of a set is sum over its elements i of 2^{i-1}.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hcube/core.hpp"

namespace hcube {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

template <class Int>
bool parse_int(std::string_view s, Int& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// "key=<int>" for a fixed key.
inline bool parse_assignment(std::string_view token, std::string_view key, long long& out) {
  token = trim(token);
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=') return false;
  return parse_int(token.substr(key.size() + 1), out);
}

}  // namespace detail

inline SetFamily parse_family(std::istream& in) {
  std::string raw;
  int line_no = 0;
  long long header_m = -1;
  bool seen_content = false;
  int max_element = 0;
  std::vector<std::pair<std::uint64_t, int>> sets;  // mask, line

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.starts_with("m=")) {
      if (seen_content) throw ParseError(line_no, "header must precede all sets");
      if (!detail::parse_assignment(line, "m", header_m) || header_m < 0 || header_m > kMaxWordBits)
        throw ParseError(line_no, "malformed header (expected m=<0..64>)");
      seen_content = true;
      continue;
    }
    seen_content = true;
    std::uint64_t mask = 0;
    if (line != "-") {
      std::string_view rest = line;
      while (true) {
        const auto comma = rest.find(',');
        const std::string_view tok = rest.substr(0, comma);
        int element = 0;
        if (!detail::parse_int(tok, element)) throw ParseError(line_no, "bad element '" + std::string(detail::trim(tok)) + "'");
        if (element < 1 || element > kMaxWordBits) throw ParseError(line_no, "element " + std::to_string(element) + " out of range");
        if (header_m >= 0 && element > header_m)
          throw ParseError(line_no, "element " + std::to_string(element) + " exceeds m=" + std::to_string(header_m));
        const std::uint64_t bit = std::uint64_t{1} << (element - 1);
        if (mask & bit) throw ParseError(line_no, "duplicate element " + std::to_string(element));
        mask |= bit;
        max_element = std::max(max_element, element);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    }
    sets.emplace_back(mask, line_no);
  }

  int m = 0;
  if (header_m >= 0) {
    m = static_cast<int>(header_m);
  } else {
    if (max_element == 0) throw ParseError(0, "cannot infer m: no header and no nonempty set");
    m = max_element;
  }
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> members;
  for (const auto& [mask, at] : sets) {
    if (!seen.insert(mask).second) throw ParseError(at, "duplicate set");
    members.push_back(mask);
  }
  return SetFamily(m, std::move(members));
}

inline SetFamily parse_family(const std::string& text) {
  std::istringstream in(text);
  return parse_family(in);
}

inline std::string serialize_family(const SetFamily& family) {
  std::string out = "m=" + std::to_string(family.m()) + "\n";
  for (std::uint64_t mask : family.members()) {
    if (mask == 0) {
      out += "-\n";
      continue;
    }
    bool first = true;
    for (int i = 0; i < family.m(); ++i)
      if ((mask >> i) & 1U) {
        if (!first) out += ',';
        out += std::to_string(i + 1);
        first = false;
      }
    out += '\n';
  }
  return out;
}

struct FunctionBundle {
  int m = 0;
  std::vector<RealFunction> functions;
};

inline FunctionBundle parse_function_file(std::istream& in) {
  std::string raw;
  int line_no = 0;
  long long m = -1;
  long long count = -1;
  std::vector<double> values;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (m < 0) {
      const auto space = line.find_first_of(" \t");
      if (space == std::string_view::npos || !detail::parse_assignment(line.substr(0, space), "m", m) ||
          !detail::parse_assignment(line.substr(space + 1), "count", count))
        throw ParseError(line_no, "expected header 'm=<int> count=<n>'");
      if (m < 0 || m > kMaxDenseRealM) throw ParseError(line_no, "m out of range [0, 24]");
      if (count < 1) throw ParseError(line_no, "count must be >= 1");
      continue;
    }
    std::string_view rest = line;
    while (!rest.empty()) {
      const auto end = rest.find_first_of(" \t");
      const std::string_view tok = rest.substr(0, end);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "bad value '" + std::string(tok) + "'");
      values.push_back(v);
      rest = end == std::string_view::npos ? std::string_view{} : detail::trim(rest.substr(end));
    }
  }
  if (m < 0) throw ParseError(0, "missing header");
  const std::size_t block = std::size_t{1} << m;
  if (values.size() != block * static_cast<std::size_t>(count))
    throw ParseError(0, "expected " + std::to_string(block * static_cast<std::size_t>(count)) + " values, got " +
                            std::to_string(values.size()));
  FunctionBundle out;
  out.m = static_cast<int>(m);
  for (long long j = 0; j < count; ++j)
    out.functions.emplace_back(out.m, std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(j * block),
                                                          values.begin() + static_cast<std::ptrdiff_t>((j + 1) * block)));
  return out;
}

inline FunctionBundle parse_function_file(const std::string& text) {
  std::istringstream in(text);
  return parse_function_file(in);
}

inline std::string serialize_function_file(const std::vector<RealFunction>& fs) {
  if (fs.empty()) throw UsageError("serialize_function_file needs at least one function");
  require_same_ground(fs);
  std::string out = "m=" + std::to_string(fs.front().m()) + " count=" + std::to_string(fs.size()) + "\n";
  char buf[32];
  for (const auto& f : fs) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", f[i]);
      out += buf;
      out += i + 1 == f.size() ? '\n' : ' ';
    }
  }
  return out;
}

}  // namespace hcube
