#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "psybracket/diagram.hpp"
#include "psybracket/error.hpp"
#include "psybracket/psy_format.hpp"

namespace psy {

namespace detail {

inline int parse_int(const std::string& tok, int line, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
}

}  // namespace detail

/// Line-oriented diagram format:
///
///     pseudodiagram trefoil
///     loops 0
///     crossing 1 +
///     edge 1.2 2.0
///
/// Crossing kinds are `+`, `-` and `#` (precrossing). A line whose first token
/// starts with `#` is a comment, as is anything after a `#` token that follows
/// a complete directive.
inline Diagram parse_diagram(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_header = false, have_loops = false;
  Diagram d;
  struct RawEdge {
    int tail_id, tail_slot, head_id, head_slot, line;
  };
  std::vector<RawEdge> raw_edges;

  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    auto expect = [&](std::size_t required) {
      if (tok.size() < required)
        throw ParseError(lineno, "'" + tok[0] + "' needs " + std::to_string(required - 1) + " arguments");
      if (tok.size() > required && tok[required][0] != '#')
        throw ParseError(lineno, "unexpected token '" + tok[required] + "'");
    };

    const std::string& kw = tok[0];
    if (kw == "pseudodiagram") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      expect(2);
      d.name = tok[1];
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "expected 'pseudodiagram <name>' first");
    if (kw == "loops") {
      if (have_loops) throw ParseError(lineno, "duplicate loops line");
      expect(2);
      d.free_loops = detail::parse_int(tok[1], lineno, "loop count");
      if (d.free_loops < 0) throw ParseError(lineno, "loop count must be nonnegative");
      have_loops = true;
    } else if (kw == "crossing") {
      expect(3);
      const int id = detail::parse_int(tok[1], lineno, "crossing id");
      if (d.index_of(id)) throw ParseError(lineno, "duplicate crossing id " + tok[1]);
      CrossingKind kind;
      if (tok[2] == "+") kind = CrossingKind::Positive;
      else if (tok[2] == "-") kind = CrossingKind::Negative;
      else if (tok[2] == "#") kind = CrossingKind::Pre;
      else throw ParseError(lineno, "crossing kind must be +, - or #, got '" + tok[2] + "'");
      d.crossings.push_back({id, kind});
    } else if (kw == "edge") {
      expect(3);
      auto port = [&](const std::string& s, const char* which) {
        const auto dot = s.find('.');
        if (dot == std::string::npos)
          throw ParseError(lineno, std::string(which) + " port must be <crossing>.<slot>, got '" + s + "'");
        return std::pair{detail::parse_int(s.substr(0, dot), lineno, "crossing id"),
                         detail::parse_int(s.substr(dot + 1), lineno, "slot")};
      };
      const auto [tc, ts] = port(tok[1], "tail");
      const auto [hc, hs] = port(tok[2], "head");
      if (ts != 2 && ts != 3) throw ParseError(lineno, "tail slot must be 2 or 3, got " + std::to_string(ts));
      if (hs != 0 && hs != 1) throw ParseError(lineno, "head slot must be 0 or 1, got " + std::to_string(hs));
      raw_edges.push_back({tc, ts, hc, hs, lineno});
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!have_header) throw ParseError(lineno + 1, "missing 'pseudodiagram' header");

  for (const auto& e : raw_edges) {
    const auto t = d.index_of(e.tail_id);
    const auto h = d.index_of(e.head_id);
    if (!t) throw ParseError(e.line, "unknown crossing " + std::to_string(e.tail_id));
    if (!h) throw ParseError(e.line, "unknown crossing " + std::to_string(e.head_id));
    d.edges.push_back({Port{*t, e.tail_slot}, Port{*h, e.head_slot}});
  }
  canonicalize(d);
  return d;
}

inline std::string serialize_diagram(const Diagram& d) {
  std::ostringstream out;
  out << "pseudodiagram " << d.name << '\n';
  if (d.free_loops != 0) out << "loops " << d.free_loops << '\n';
  for (const auto& c : d.crossings) out << "crossing " << c.id << ' ' << kind_symbol(c.kind) << '\n';
  std::vector<Edge> edges = d.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges)
    out << "edge " << d.crossings.at(e.tail.crossing).id << '.' << e.tail.slot << ' '
        << d.crossings.at(e.head.crossing).id << '.' << e.head.slot << '\n';
  return out.str();
}

inline Diagram load_diagram(const std::string& path) { return parse_diagram(read_text_file(path)); }

}  // namespace psy
