#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "psybracket/algebra.hpp"
#include "psybracket/error.hpp"

namespace psy {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Text form:
///
///     psybracket n=3
///     [c]
///     1 3 2        <- block a=1, row b=1, columns c=1..n
///     ...
///     [p]
///     ...
///
/// Blocks are separated by blank lines. Lines starting with '#' are ignored.
inline PsyBracket parse_psybracket(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int n = 0;
  enum { Header, WantC, InC, InP } state = Header;
  std::vector<Element> c_vals, p_vals;
  int last_line = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    last_line = lineno;
    if (state == Header) {
      std::istringstream ls(line);
      std::string word, size;
      ls >> word >> size;
      if (word != "psybracket" || size.rfind("n=", 0) != 0)
        throw ParseError(lineno, "expected header 'psybracket n=<N>'");
      try {
        std::size_t used = 0;
        n = std::stoi(size.substr(2), &used);
        if (used != size.size() - 2) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad size '" + size.substr(2) + "'");
      }
      if (n < 1 || n > 255) throw ParseError(lineno, "size must be in 1..255");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "unexpected token '" + extra + "'");
      state = WantC;
      continue;
    }
    if (line == "[c]") {
      if (state != WantC) throw ParseError(lineno, "unexpected section [c]");
      state = InC;
      continue;
    }
    if (line == "[p]") {
      if (state != InC || c_vals.size() != static_cast<std::size_t>(n) * n * n)
        throw ParseError(lineno, "section [p] must follow a complete [c] section");
      state = InP;
      continue;
    }
    if (state == WantC) throw ParseError(lineno, "expected section [c]");

    auto& vals = state == InC ? c_vals : p_vals;
    std::istringstream ls(line);
    std::string tok;
    int count = 0;
    while (ls >> tok) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "not an integer: '" + tok + "'");
      }
      if (v < 1 || v > n)
        throw ParseError(lineno, "entry " + tok + " outside 1.." + std::to_string(n));
      vals.push_back(v);
      ++count;
    }
    if (count != n)
      throw ParseError(lineno, "row has " + std::to_string(count) + " entries, expected " +
                                   std::to_string(n));
    if (vals.size() > static_cast<std::size_t>(n) * n * n)
      throw ParseError(lineno, "too many rows in section");
  }

  const std::size_t need = static_cast<std::size_t>(n) * n * n;
  if (state == Header) throw ParseError(lineno + 1, "missing header");
  if (state != InP) throw ParseError(last_line + 1, "missing section [p]");
  if (p_vals.size() != need) throw ParseError(last_line + 1, "section [p] is incomplete");
  return {TernaryTensor::from_entries(n, c_vals), TernaryTensor::from_entries(n, p_vals)};
}

inline std::string serialize_psybracket(const PsyBracket& x) {
  const int n = x.size();
  std::ostringstream out;
  out << "psybracket n=" << n << '\n';
  auto section = [&](const char* name, const TernaryTensor& t) {
    out << name << '\n';
    for (Element a = 1; a <= n; ++a) {
      if (a > 1) out << '\n';
      for (Element b = 1; b <= n; ++b) {
        for (Element c = 1; c <= n; ++c) out << (c > 1 ? " " : "") << t(a, b, c);
        out << '\n';
      }
    }
  };
  section("[c]", x.classical);
  section("[p]", x.pre);
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline PsyBracket load_psybracket(const std::string& path) {
  return parse_psybracket(read_text_file(path));
}

}  // namespace psy
