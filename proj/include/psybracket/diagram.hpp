#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "psybracket/error.hpp"

namespace psy {

enum class CrossingKind { Positive, Negative, Pre };

inline char kind_symbol(CrossingKind k) {
  switch (k) {
    case CrossingKind::Positive: return '+';
    case CrossingKind::Negative: return '-';
    case CrossingKind::Pre: return '#';
  }
  return '?';
}

inline bool is_classical(CrossingKind k) { return k != CrossingKind::Pre; }

/// One of the four dart slots of a crossing. `crossing` is a position in
/// Diagram::crossings, not an id.
struct Port {
  int crossing = -1;
  int slot = 0;

  friend bool operator==(const Port&, const Port&) = default;
  friend auto operator<=>(const Port&, const Port&) = default;
};

inline bool is_incoming_slot(int slot) { return slot == 0 || slot == 1; }

/// Slot reached by passing straight through the crossing.
inline int opposite_slot(int slot) { return (slot + 2) % 4; }

struct Crossing {
  int id = 0;
  CrossingKind kind = CrossingKind::Positive;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct Edge {
  Port tail;  // outgoing slot (2 or 3)
  Port head;  // incoming slot (0 or 1)

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Oriented 4-valent map. Around each crossing the slots run 0,1,2,3 clockwise
/// with 0,1 incoming; the strand entering slot s leaves by slot s+2. Positive
/// means the strand through slots 0 and 2 passes over.
struct Diagram {
  std::string name = "diagram";
  std::vector<Crossing> crossings;
  std::vector<Edge> edges;
  int free_loops = 0;

  int crossing_count() const { return static_cast<int>(crossings.size()); }

  int precrossing_count() const {
    return static_cast<int>(std::count_if(crossings.begin(), crossings.end(), [](const Crossing& c) {
      return c.kind == CrossingKind::Pre;
    }));
  }

  std::optional<int> index_of(int id) const {
    for (int i = 0; i < crossing_count(); ++i)
      if (crossings[i].id == id) return i;
    return std::nullopt;
  }

  int next_id() const {
    int m = 0;
    for (const auto& c : crossings) m = std::max(m, c.id + 1);
    return m;
  }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// Sorts edges by tail so that equal maps compare equal.
inline void canonicalize(Diagram& d) { std::sort(d.edges.begin(), d.edges.end()); }

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  int face_count = 0;
};

/// Partner of every port; requires every slot to be used exactly once.
using LinkTable = std::vector<std::array<Port, 4>>;

namespace detail {

inline std::string port_name(const Diagram& d, Port p) {
  const std::string id = p.crossing >= 0 && p.crossing < d.crossing_count()
                             ? std::to_string(d.crossings[p.crossing].id)
                             : "?" + std::to_string(p.crossing);
  return id + "." + std::to_string(p.slot);
}

// Fills link tables; returns error messages for malformed edge sets.
inline std::vector<std::string> build_links(const Diagram& d, LinkTable& link) {
  std::vector<std::string> errors;
  const int v = d.crossing_count();
  link.assign(v, {Port{}, Port{}, Port{}, Port{}});
  std::vector<std::array<int, 4>> uses(v, {0, 0, 0, 0});
  for (const auto& e : d.edges) {
    bool ok = true;
    for (Port p : {e.tail, e.head})
      if (p.crossing < 0 || p.crossing >= v || p.slot < 0 || p.slot > 3) {
        errors.push_back("edge references nonexistent port " + port_name(d, p));
        ok = false;
      }
    if (!ok) continue;
    if (is_incoming_slot(e.tail.slot)) {
      errors.push_back("edge tail " + port_name(d, e.tail) + " is an incoming slot");
      ok = false;
    }
    if (!is_incoming_slot(e.head.slot)) {
      errors.push_back("edge head " + port_name(d, e.head) + " is an outgoing slot");
      ok = false;
    }
    if (!ok) continue;
    ++uses[e.tail.crossing][e.tail.slot];
    ++uses[e.head.crossing][e.head.slot];
    link[e.tail.crossing][e.tail.slot] = e.head;
    link[e.head.crossing][e.head.slot] = e.tail;
  }
  for (int c = 0; c < v; ++c)
    for (int s = 0; s < 4; ++s) {
      if (uses[c][s] == 0) errors.push_back("dangling slot " + port_name(d, Port{c, s}));
      if (uses[c][s] > 1) errors.push_back("slot " + port_name(d, Port{c, s}) + " used by " +
                                           std::to_string(uses[c][s]) + " edges");
    }
  return errors;
}

inline bool map_connected(const LinkTable& link) {
  const int v = static_cast<int>(link.size());
  if (v == 0) return true;
  std::vector<char> seen(v, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (Port p : link[c])
      if (!seen[p.crossing]) {
        seen[p.crossing] = 1;
        ++reached;
        stack.push_back(p.crossing);
      }
  }
  return reached == v;
}

}  // namespace detail

inline LinkTable links(const Diagram& d) {
  LinkTable link;
  const auto errors = detail::build_links(d, link);
  if (!errors.empty()) throw InputError("ill-formed diagram: " + errors.front());
  return link;
}

// ---------------------------------------------------------------------------
// Faces

/// Corner k of a crossing lies between slots k and k+1.
struct Corner {
  int crossing = 0;
  int index = 0;

  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Region {
  int id = 0;
  std::vector<Corner> corners;  // empty for regions touching no crossing
};

/// The corner following (c,k) along the boundary of its face.
inline Corner next_corner(const LinkTable& link, Corner k) {
  const Port p = link[k.crossing][(k.index + 1) % 4];
  return {p.crossing, p.slot};
}

/// Faces of the map, numbered in order of their least corner; then one region
/// per free loop. A crossingless diagram has one base region.
inline std::vector<Region> faces(const Diagram& d) {
  const LinkTable link = links(d);
  const int v = d.crossing_count();
  std::vector<Region> out;
  std::vector<std::array<char, 4>> seen(v, {0, 0, 0, 0});
  for (int c = 0; c < v; ++c)
    for (int k = 0; k < 4; ++k) {
      if (seen[c][k]) continue;
      Region r;
      r.id = static_cast<int>(out.size());
      Corner cur{c, k};
      while (!seen[cur.crossing][cur.index]) {
        seen[cur.crossing][cur.index] = 1;
        r.corners.push_back(cur);
        cur = next_corner(link, cur);
      }
      out.push_back(std::move(r));
    }
  const int extra = (v == 0 ? 1 : 0) + d.free_loops;
  for (int i = 0; i < extra; ++i) out.push_back(Region{static_cast<int>(out.size()), {}});
  return out;
}

/// region id of every corner: table[c][k].
inline std::vector<std::array<int, 4>> corner_regions(const Diagram& d,
                                                      const std::vector<Region>& regions) {
  std::vector<std::array<int, 4>> table(d.crossing_count(), {-1, -1, -1, -1});
  for (const auto& r : regions)
    for (Corner k : r.corners) table[k.crossing][k.index] = r.id;
  return table;
}

inline ValidationReport validate(const Diagram& d) {
  ValidationReport rep;
  std::set<int> ids;
  for (const auto& c : d.crossings)
    if (!ids.insert(c.id).second) rep.errors.push_back("duplicate crossing id " + std::to_string(c.id));
  if (d.free_loops < 0) rep.errors.push_back("negative free loop count");
  LinkTable link;
  auto link_errors = detail::build_links(d, link);
  rep.errors.insert(rep.errors.end(), link_errors.begin(), link_errors.end());
  if (rep.errors.empty()) {
    const int v = d.crossing_count();
    if (!detail::map_connected(link))
      rep.errors.push_back("map is disconnected (split diagrams must be joined)");
    const auto fs = faces(d);
    rep.face_count = static_cast<int>(fs.size());
    const int base = rep.face_count - d.free_loops - (v == 0 ? 1 : 0);
    if (v > 0 && base != v + 2) rep.errors.push_back("non-spherical or ill-formed map");
  }
  rep.ok = rep.errors.empty();
  return rep;
}

inline void require_valid(const Diagram& d) {
  const auto rep = validate(d);
  if (!rep.ok) throw InputError("invalid diagram '" + d.name + "': " + rep.errors.front());
}

// ---------------------------------------------------------------------------
// Derived diagrams

/// Precrossing id -> classical kind.
using Resolution = std::map<int, CrossingKind>;

inline Diagram resolve(const Diagram& d, const Resolution& r) {
  Diagram out = d;
  for (auto& c : out.crossings) {
    if (c.kind != CrossingKind::Pre) {
      if (r.count(c.id))
        throw InputError("resolution names classical crossing " + std::to_string(c.id));
      continue;
    }
    auto it = r.find(c.id);
    if (it == r.end())
      throw InputError("resolution does not cover precrossing " + std::to_string(c.id));
    if (it->second == CrossingKind::Pre)
      throw InputError("precrossing " + std::to_string(c.id) + " resolved to a precrossing");
    c.kind = it->second;
  }
  for (const auto& [id, kind] : r)
    if (!d.index_of(id)) throw InputError("resolution names unknown crossing " + std::to_string(id));
  return out;
}

/// Reverses every strand. Slots rotate by two, which keeps each crossing's kind.
inline Diagram reversed(const Diagram& d) {
  Diagram out = d;
  for (auto& e : out.edges) {
    const Port t{e.head.crossing, opposite_slot(e.head.slot)};
    const Port h{e.tail.crossing, opposite_slot(e.tail.slot)};
    e = {t, h};
  }
  canonicalize(out);
  return out;
}

/// Given which of four cyclically ordered darts are incoming, the rotation r
/// such that relabeling slot i as (i - r) mod 4 puts the incoming darts at 0,1.
/// Absent unless exactly two adjacent darts are incoming.
inline std::optional<int> canonical_rotation(const std::array<bool, 4>& incoming) {
  std::optional<int> found;
  for (int r = 0; r < 4; ++r) {
    const bool ok = incoming[r] && incoming[(r + 1) % 4] && !incoming[(r + 2) % 4] &&
                    !incoming[(r + 3) % 4];
    if (ok) {
      if (found) return std::nullopt;
      found = r;
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Components and linking numbers

struct ComponentInfo {
  int count = 0;                                // strand cycles plus free loops
  std::vector<std::array<int, 4>> slot_component;  // component of the strand at each slot
};

inline ComponentInfo components(const Diagram& d) {
  const LinkTable link = links(d);
  const int v = d.crossing_count();
  ComponentInfo info;
  info.slot_component.assign(v, {-1, -1, -1, -1});
  for (int c = 0; c < v; ++c)
    for (int s = 0; s < 2; ++s) {
      if (info.slot_component[c][s] >= 0) continue;
      const int comp = info.count++;
      Port p{c, s};
      while (info.slot_component[p.crossing][p.slot] < 0) {
        info.slot_component[p.crossing][p.slot] = comp;
        info.slot_component[p.crossing][opposite_slot(p.slot)] = comp;
        p = link[p.crossing][opposite_slot(p.slot)];
      }
    }
  info.count += d.free_loops;
  return info;
}

/// Sorted linking numbers of all component pairs. Precrossings contribute 0.
inline std::vector<int> linking_numbers(const Diagram& d) {
  const auto info = components(d);
  const int m = info.count;
  std::vector<int> twice(static_cast<std::size_t>(m) * m, 0);
  for (int c = 0; c < d.crossing_count(); ++c) {
    const int a = info.slot_component[c][0];
    const int b = info.slot_component[c][1];
    if (a == b) continue;
    int sign = 0;
    if (d.crossings[c].kind == CrossingKind::Positive) sign = 1;
    if (d.crossings[c].kind == CrossingKind::Negative) sign = -1;
    twice[std::min(a, b) * m + std::max(a, b)] += sign;
  }
  std::vector<int> out;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) out.push_back(twice[a * m + b] / 2);
  std::sort(out.begin(), out.end());
  return out;
}

/// Equality as labeled maps up to renaming crossings (kinds and slots preserved).
inline bool isomorphic(const Diagram& x, const Diagram& y) {
  if (x.crossing_count() != y.crossing_count() || x.free_loops != y.free_loops) return false;
  const int v = x.crossing_count();
  if (v == 0) return true;
  const LinkTable lx = links(x), ly = links(y);
  for (int start = 0; start < v; ++start) {
    std::vector<int> fwd(v, -1), bwd(v, -1);
    std::vector<int> stack{0};
    fwd[0] = start;
    bwd[start] = 0;
    bool ok = true;
    while (ok && !stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      if (x.crossings[c].kind != y.crossings[fwd[c]].kind) {
        ok = false;
        break;
      }
      for (int s = 0; s < 4 && ok; ++s) {
        const Port px = lx[c][s], py = ly[fwd[c]][s];
        if (px.slot != py.slot) {
          ok = false;
        } else if (fwd[px.crossing] < 0 && bwd[py.crossing] < 0) {
          fwd[px.crossing] = py.crossing;
          bwd[py.crossing] = px.crossing;
          stack.push_back(px.crossing);
        } else if (fwd[px.crossing] != py.crossing) {
          ok = false;
        }
      }
    }
    if (ok && std::find(fwd.begin(), fwd.end(), -1) == fwd.end()) return true;
  }
  return false;
}

}  // namespace psy
