#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "psybracket/diagram.hpp"
#include "psybracket/error.hpp"

namespace psy {

enum class EquivalenceMode { Pseudo, Singular };

enum class MoveFamily {
  R1Insert,
  R1Remove,
  R2Insert,
  R2Remove,
  R3,
  PIInsert,
  PIRemove,
  PII,
  PIII,
  PIIIPrime,
};

inline const char* family_name(MoveFamily f) {
  switch (f) {
    case MoveFamily::R1Insert: return "R1+insert";
    case MoveFamily::R1Remove: return "R1-remove";
    case MoveFamily::R2Insert: return "R2-insert";
    case MoveFamily::R2Remove: return "R2-remove";
    case MoveFamily::R3: return "R3";
    case MoveFamily::PIInsert: return "PI-insert";
    case MoveFamily::PIRemove: return "PI-remove";
    case MoveFamily::PII: return "PII";
    case MoveFamily::PIII: return "PIII";
    case MoveFamily::PIIIPrime: return "PIII'";
  }
  return "?";
}

/// Families allowed under each equivalence. Singular equivalence has no PI.
inline std::vector<MoveFamily> legal_moves(EquivalenceMode mode) {
  std::vector<MoveFamily> out = {MoveFamily::R1Insert, MoveFamily::R1Remove, MoveFamily::R2Insert,
                                 MoveFamily::R2Remove, MoveFamily::R3,       MoveFamily::PII,
                                 MoveFamily::PIII,     MoveFamily::PIIIPrime};
  if (mode == EquivalenceMode::Pseudo) {
    out.push_back(MoveFamily::PIInsert);
    out.push_back(MoveFamily::PIRemove);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A move together with its site.
///
/// - kink insertions (R1Insert, PIInsert): `edge` is the tail port of the edge
///   to kink (crossing -1 selects a free loop of a crossingless diagram),
///   `loop_corner` (1 or 3) is the side of the kink, `kind` the new crossing.
/// - kink removals: `crossing` is the kinked crossing.
/// - R2Insert: two corners of one face; the edges leaving them are pushed
///   across each other, with strand `over` (1 or 2) on top.
/// - R2Remove, PII: the two corners of a bigon face.
/// - R3, PIII, PIIIPrime: the three corners of a triangular face in boundary order.
struct Move {
  MoveFamily family = MoveFamily::R1Insert;
  Port edge{};
  int loop_corner = 1;
  CrossingKind kind = CrossingKind::Positive;
  int crossing = -1;
  std::vector<Corner> corners{};
  int over = 1;

  friend bool operator==(const Move&, const Move&) = default;
};

inline std::string describe(const Move& m) {
  std::string s = family_name(m.family);
  if (m.crossing >= 0) s += " at crossing #" + std::to_string(m.crossing);
  if (m.family == MoveFamily::R1Insert || m.family == MoveFamily::PIInsert)
    s += " on edge from " + std::to_string(m.edge.crossing) + "." + std::to_string(m.edge.slot) +
         " corner " + std::to_string(m.loop_corner) + " kind " + kind_symbol(m.kind);
  for (auto c : m.corners) s += " (" + std::to_string(c.crossing) + "," + std::to_string(c.index) + ")";
  return s;
}

namespace detail {

// Compass directions, counterclockwise from east.
enum Dir { E = 0, NE = 1, N = 2, NW = 3, W = 4, SW = 5, S = 6, SE = 7 };

struct Arm {
  int dir;
  int strand;
  bool out;
};

// A crossing of a replacement tangle. Either its arms carry compass directions
// (slots are derived from the planar picture) or `fixed_slots` gives the slot
// of every arm directly.
struct NewCrossing {
  int id;
  std::array<Arm, 4> arms;
  bool pre = false;
  int over_strand = -1;
  std::optional<std::array<int, 4>> fixed_slots{};
  CrossingKind fixed_kind = CrossingKind::Positive;
};

struct ArmRef {
  int crossing;  // position in the list of new crossings
  int arm;
};

using End = std::variant<Port, ArmRef>;

// Slots run clockwise, i.e. by decreasing direction; slot 0 is the incoming
// arm followed clockwise by the other incoming arm.
inline std::pair<std::array<int, 4>, CrossingKind> place(const NewCrossing& x) {
  if (x.fixed_slots) return {*x.fixed_slots, x.fixed_kind};
  std::array<int, 4> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return x.arms[i].dir > x.arms[j].dir; });
  int start = -1;
  for (int i = 0; i < 4; ++i)
    if (!x.arms[order[i]].out && !x.arms[order[(i + 1) % 4]].out) start = i;
  if (start < 0) throw std::logic_error("tangle crossing has no adjacent incoming arms");
  std::array<int, 4> slot{};
  for (int i = 0; i < 4; ++i) slot[order[(start + i) % 4]] = i;
  for (int i = 0; i < 4; ++i) {
    if (x.arms[i].out != (slot[i] >= 2)) throw std::logic_error("tangle crossing is not transversal");
    for (int j = 0; j < 4; ++j)
      if (j != i && (slot[j] + 2) % 4 == slot[i] && x.arms[j].strand != x.arms[i].strand)
        throw std::logic_error("tangle strand does not pass straight through");
  }
  if (x.pre) return {slot, CrossingKind::Pre};
  int over_slot = -1;
  for (int i = 0; i < 4; ++i)
    if (x.arms[i].strand == x.over_strand) over_slot = slot[i];
  if (over_slot < 0) throw std::logic_error("over strand missing from tangle crossing");
  return {slot, over_slot % 2 == 0 ? CrossingKind::Positive : CrossingKind::Negative};
}

// Removes crossings, deletes cut edges, adds new crossings and connections.
inline Diagram rewrite(const Diagram& d, const std::set<int>& removed, const std::set<Edge>& cut,
                       const std::vector<NewCrossing>& fresh,
                       const std::vector<std::pair<End, End>>& connections, int loop_delta) {
  Diagram out;
  out.name = d.name;
  out.free_loops = d.free_loops + loop_delta;
  std::vector<int> remap(d.crossing_count(), -1);
  for (int c = 0; c < d.crossing_count(); ++c)
    if (!removed.count(c)) {
      remap[c] = out.crossing_count();
      out.crossings.push_back(d.crossings[c]);
    }
  std::vector<std::array<int, 4>> slots;
  std::vector<int> base;
  for (const auto& x : fresh) {
    auto [slot, kind] = place(x);
    slots.push_back(slot);
    base.push_back(out.crossing_count());
    out.crossings.push_back({x.id, kind});
  }
  for (const auto& e : d.edges) {
    if (cut.count(e) || removed.count(e.tail.crossing) || removed.count(e.head.crossing)) continue;
    out.edges.push_back({Port{remap[e.tail.crossing], e.tail.slot}, Port{remap[e.head.crossing], e.head.slot}});
  }
  auto resolve_end = [&](const End& end) -> Port {
    if (const Port* p = std::get_if<Port>(&end)) {
      if (removed.count(p->crossing)) throw std::logic_error("connection to removed crossing");
      return {remap[p->crossing], p->slot};
    }
    const auto& a = std::get<ArmRef>(end);
    return {base[a.crossing], slots[a.crossing][a.arm]};
  };
  for (const auto& [x, y] : connections) {
    Port p = resolve_end(x), q = resolve_end(y);
    if (is_incoming_slot(p.slot)) std::swap(p, q);
    if (is_incoming_slot(p.slot) || !is_incoming_slot(q.slot))
      throw std::logic_error("connection does not join an outgoing to an incoming slot");
    out.edges.push_back({p, q});
  }
  canonicalize(out);
  return out;
}

// Deletes crossings and joins the strands that passed through them. Strands
// lying entirely inside the deleted set become free loops.
inline Diagram smooth_out(const Diagram& d, const std::set<int>& removed) {
  const LinkTable link = links(d);
  std::vector<std::pair<End, End>> connections;
  std::set<Port> visited;
  for (int c = 0; c < d.crossing_count(); ++c) {
    if (removed.count(c)) continue;
    for (int s = 2; s < 4; ++s) {
      Port q = link[c][s];
      if (!removed.count(q.crossing)) continue;
      while (removed.count(q.crossing)) {
        visited.insert(q);
        q = link[q.crossing][opposite_slot(q.slot)];
      }
      connections.push_back({Port{c, s}, q});
    }
  }
  int loops = 0;
  for (int c : removed)
    for (int s = 0; s < 2; ++s) {
      Port q{c, s};
      if (visited.count(q)) continue;
      ++loops;
      while (!visited.count(q)) {
        visited.insert(q);
        q = link[q.crossing][opposite_slot(q.slot)];
      }
    }
  return rewrite(d, removed, {}, {}, connections, loops);
}

inline bool is_face(const LinkTable& link, const std::vector<Corner>& corners) {
  const std::size_t m = corners.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Corner c = corners[i];
    if (c.crossing < 0 || c.crossing >= static_cast<int>(link.size()) || c.index < 0 || c.index > 3)
      return false;
    if (next_corner(link, c) != corners[(i + 1) % m]) return false;
  }
  return true;
}

// Whether the strand occupying `slot` passes over at a classical crossing.
inline bool strand_over(CrossingKind kind, int slot) {
  return (slot % 2 == 0) == (kind == CrossingKind::Positive);
}

inline Edge edge_at(const Diagram& d, Port tail) {
  for (const auto& e : d.edges)
    if (e.tail == tail) return e;
  throw PatternMismatch("no edge leaves port " + std::to_string(tail.crossing) + "." +
                        std::to_string(tail.slot));
}

inline Edge edge_through(const LinkTable& link, Port p) {
  const Port q = link[p.crossing][p.slot];
  return is_incoming_slot(p.slot) ? Edge{q, p} : Edge{p, q};
}

inline Diagram kink_insert(const Diagram& d, const Move& m) {
  const bool pre = m.family == MoveFamily::PIInsert;
  if (pre != (m.kind == CrossingKind::Pre))
    throw PatternMismatch(std::string(family_name(m.family)) +
                          (pre ? " inserts a precrossing" : " inserts a classical crossing"));
  if (m.loop_corner != 1 && m.loop_corner != 3)
    throw PatternMismatch("kink side must be corner 1 or 3");
  NewCrossing x{d.next_id(), {}, false, -1, std::array<int, 4>{0, 1, 2, 3}, m.kind};
  for (int s = 0; s < 4; ++s) x.arms[s] = {0, 0, s >= 2};
  const ArmRef a0{0, 0}, a1{0, 1}, a2{0, 2}, a3{0, 3};
  if (m.edge.crossing < 0) {
    if (d.crossing_count() != 0 || d.free_loops < 1)
      throw PatternMismatch("kink on a free loop needs a crossingless diagram with a loop");
    return rewrite(d, {}, {}, {x}, {{a2, a1}, {a3, a0}}, -1);
  }
  const Edge e = edge_at(d, m.edge);
  if (m.loop_corner == 1) return rewrite(d, {}, {e}, {x}, {{e.tail, a0}, {a2, a1}, {a3, e.head}}, 0);
  return rewrite(d, {}, {e}, {x}, {{e.tail, a1}, {a3, a0}, {a2, e.head}}, 0);
}

inline bool has_kink(const LinkTable& link, int c) {
  return link[c][2] == Port{c, 1} || link[c][3] == Port{c, 0};
}

inline Diagram kink_remove(const Diagram& d, const Move& m) {
  if (m.crossing < 0 || m.crossing >= d.crossing_count())
    throw PatternMismatch("kink removal needs an existing crossing");
  const LinkTable link = links(d);
  if (!has_kink(link, m.crossing))
    throw PatternMismatch("expected a kinked crossing (a monogon face)");
  const bool pre = d.crossings[m.crossing].kind == CrossingKind::Pre;
  if (pre != (m.family == MoveFamily::PIRemove))
    throw PatternMismatch(m.family == MoveFamily::PIRemove ? "expected a kinked precrossing"
                                                           : "expected a kinked classical crossing");
  return smooth_out(d, {m.crossing});
}

inline Diagram r2_insert(const Diagram& d, const Move& m) {
  if (m.corners.size() != 2) throw PatternMismatch("R2 insertion needs two corners of one face");
  if (m.over != 1 && m.over != 2) throw PatternMismatch("R2 over strand must be 1 or 2");
  if (d.crossing_count() == 0) throw PatternMismatch("R2 insertion needs a crossing");
  const LinkTable link = links(d);
  const Corner f1 = m.corners[0], f2 = m.corners[1];
  for (Corner f : {f1, f2})
    if (f.crossing < 0 || f.crossing >= d.crossing_count() || f.index < 0 || f.index > 3)
      throw PatternMismatch("R2 corner out of range");
  if (f1 == f2) throw PatternMismatch("R2 insertion needs two distinct corners");
  bool same_face = false;
  for (Corner c = next_corner(link, f1); !same_face; c = next_corner(link, c)) {
    if (c == f2) same_face = true;
    if (c == f1) break;
  }
  if (!same_face) throw PatternMismatch("R2 corners must lie on a common face");

  const Port u1{f1.crossing, (f1.index + 1) % 4}, u2{f2.crossing, (f2.index + 1) % 4};
  const Port v1 = link[u1.crossing][u1.slot], v2 = link[u2.crossing][u2.slot];
  const bool fwd1 = !is_incoming_slot(u1.slot), fwd2 = !is_incoming_slot(u2.slot);
  const int id = d.next_id();
  // Strand 1 runs east along the bottom and bulges up through strand 2, which
  // runs west along the top. X is the western crossing, Y the eastern one.
  NewCrossing X{id, {}, false, m.over}, Y{id + 1, {}, false, m.over};
  X.arms = {Arm{S, 1, !fwd1}, Arm{N, 1, fwd1}, Arm{E, 2, !fwd2}, Arm{W, 2, fwd2}};
  Y.arms = {Arm{N, 1, !fwd1}, Arm{S, 1, fwd1}, Arm{E, 2, !fwd2}, Arm{W, 2, fwd2}};
  const ArmRef xs{0, 0}, xn{0, 1}, xe{0, 2}, xw{0, 3}, yn{1, 0}, ys{1, 1}, ye{1, 2}, yw{1, 3};
  const std::set<Edge> cut = {edge_through(link, u1), edge_through(link, u2)};
  return rewrite(d, {}, cut, {X, Y},
                 {{u1, xs}, {xn, yn}, {ys, v1}, {u2, ye}, {yw, xe}, {xw, v2}}, 0);
}

struct Bigon {
  Corner c1, c2;
};

inline Bigon require_bigon(const Diagram& d, const Move& m, const LinkTable& link) {
  if (m.corners.size() != 2 || !is_face(link, m.corners))
    throw PatternMismatch("expected the two corners of a bigon face");
  const Bigon b{m.corners[0], m.corners[1]};
  if (b.c1.crossing == b.c2.crossing) throw PatternMismatch("bigon must join two distinct crossings");
  (void)d;
  return b;
}

inline Diagram r2_remove(const Diagram& d, const Move& m) {
  const LinkTable link = links(d);
  const Bigon b = require_bigon(d, m, link);
  const CrossingKind k1 = d.crossings[b.c1.crossing].kind, k2 = d.crossings[b.c2.crossing].kind;
  if (!is_classical(k1) || !is_classical(k2))
    throw PatternMismatch("R2 removal needs two classical crossings");
  // One bigon side is the strand through slot k1+1 of the first crossing and
  // slot k2 of the second.
  if (strand_over(k1, (b.c1.index + 1) % 4) != strand_over(k2, b.c2.index))
    throw PatternMismatch("R2 removal needs the same strand over at both crossings");
  Diagram out = smooth_out(d, {b.c1.crossing, b.c2.crossing});
  if (out.crossing_count() > 0 && !detail::map_connected(links(out)))
    throw PatternMismatch("R2 removal here would disconnect the diagram");
  return out;
}

inline Diagram pii(const Diagram& d, const Move& m) {
  const LinkTable link = links(d);
  const Bigon b = require_bigon(d, m, link);
  const bool parallel = (b.c1.index == 2 && b.c2.index == 0) || (b.c1.index == 0 && b.c2.index == 2);
  if (!parallel) throw PatternMismatch("PII needs a bigon whose strands run the same way");
  Diagram out = d;
  auto& x = out.crossings[b.c1.crossing];
  auto& y = out.crossings[b.c2.crossing];
  if ((x.kind == CrossingKind::Pre) == (y.kind == CrossingKind::Pre))
    throw PatternMismatch("PII needs one precrossing and one classical crossing");
  std::swap(x.kind, y.kind);
  return out;
}

struct Triangle {
  std::array<int, 3> c;  // crossings
  std::array<int, 3> k;  // corner indices
};

// Strand a runs through crossings 0,1; b through 1,2; c through 2,0.
// Returns the strand (0,1,2) that can slide, requiring it to meet two
// classical crossings and lie on the same level at both.
inline std::optional<int> sliding_strand(const Diagram& d, const Triangle& t, bool& over) {
  const auto kind = [&](int i) { return d.crossings[t.c[i]].kind; };
  // (crossing, slot) pairs for each strand
  const std::array<std::array<std::pair<int, int>, 2>, 3> at = {{
      {{{0, (t.k[0] + 1) % 4}, {1, t.k[1]}}},
      {{{1, (t.k[1] + 1) % 4}, {2, t.k[2]}}},
      {{{2, (t.k[2] + 1) % 4}, {0, t.k[0]}}},
  }};
  for (int s = 0; s < 3; ++s) {
    const auto [i, si] = at[s][0];
    const auto [j, sj] = at[s][1];
    if (!is_classical(kind(i)) || !is_classical(kind(j))) continue;
    const bool oi = strand_over(kind(i), si), oj = strand_over(kind(j), sj);
    if (oi == oj) {
      over = oi;
      return s;
    }
  }
  return std::nullopt;
}

inline Diagram triangle_move(const Diagram& d, const Move& m) {
  const LinkTable link = links(d);
  if (m.corners.size() != 3 || !is_face(link, m.corners))
    throw PatternMismatch("expected the three corners of a triangular face");
  Triangle t;
  for (int i = 0; i < 3; ++i) {
    t.c[i] = m.corners[i].crossing;
    t.k[i] = m.corners[i].index;
  }
  if (t.c[0] == t.c[1] || t.c[1] == t.c[2] || t.c[0] == t.c[2])
    throw PatternMismatch("triangle must have three distinct crossings");
  int pre = 0;
  for (int i = 0; i < 3; ++i) pre += d.crossings[t.c[i]].kind == CrossingKind::Pre;
  bool over = false;
  const auto strand = sliding_strand(d, t, over);
  if (pre > 1) throw PatternMismatch("triangle has more than one precrossing");
  if (!strand) throw PatternMismatch("no strand lies over (or under) both of its crossings");
  const MoveFamily expected = pre == 0 ? MoveFamily::R3 : over ? MoveFamily::PIII : MoveFamily::PIIIPrime;
  if (m.family != expected)
    throw PatternMismatch(std::string("triangle carries a ") + family_name(expected) + " pattern, not " +
                          family_name(m.family));

  // Planar frame: crossing 0 bottom-left, 1 bottom-right, 2 top. Strand a is
  // the bottom side (west to east), b runs from 1 up to 2, c from 2 down to 0.
  const int k1 = t.k[0], k2 = t.k[1], k3 = t.k[2];
  const std::array<std::array<int, 4>, 3> dir_of_slot = [&] {
    std::array<std::array<int, 4>, 3> r{};
    const std::array<int, 4> d1 = {NE, E, SW, W}, d2 = {W, NW, E, SE}, d3 = {SE, SW, NW, NE};
    for (int i = 0; i < 4; ++i) {
      r[0][(k1 + i) % 4] = d1[i];
      r[1][(k2 + i) % 4] = d2[i];
      r[2][(k3 + i) % 4] = d3[i];
    }
    return r;
  }();
  auto slot_at = [&](int i, int dir) {
    for (int s = 0; s < 4; ++s)
      if (dir_of_slot[i][s] == dir) return s;
    throw std::logic_error("direction missing");
  };
  // strand orientation along the walk
  const bool fa = !is_incoming_slot((k1 + 1) % 4);
  const bool fb = !is_incoming_slot((k2 + 1) % 4);
  const bool fc = !is_incoming_slot((k3 + 1) % 4);
  enum { A = 0, B = 1, C = 2 };
  auto over_strand = [&](int old, int s1, int s2) {
    const auto& x = d.crossings[t.c[old]];
    if (x.kind == CrossingKind::Pre) return -1;
    const int probe = old == 0 ? (k1 + 1) % 4 : old == 1 ? k2 : k3;  // slot of the first listed strand
    return strand_over(x.kind, probe) ? s1 : s2;
  };
  // old crossing 0 meets a (first) and c; 1 meets a and b; 2 meets b and c.
  NewCrossing D1{d.crossings[t.c[1]].id, {}, d.crossings[t.c[1]].kind == CrossingKind::Pre, over_strand(1, A, B)};
  NewCrossing D2{d.crossings[t.c[0]].id, {}, d.crossings[t.c[0]].kind == CrossingKind::Pre, over_strand(0, A, C)};
  NewCrossing D3{d.crossings[t.c[2]].id, {}, d.crossings[t.c[2]].kind == CrossingKind::Pre, over_strand(2, B, C)};
  D1.arms = {Arm{W, A, !fa}, Arm{E, A, fa}, Arm{SE, B, !fb}, Arm{NW, B, fb}};
  D2.arms = {Arm{W, A, !fa}, Arm{E, A, fa}, Arm{NE, C, !fc}, Arm{SW, C, fc}};
  D3.arms = {Arm{SE, B, !fb}, Arm{NW, B, fb}, Arm{NE, C, !fc}, Arm{SW, C, fc}};

  // External arms keep their old partners; arms joined to another replaced
  // crossing are matched through the same table.
  std::map<Port, ArmRef> moved = {
      {Port{t.c[0], slot_at(0, W)}, ArmRef{0, 0}},  {Port{t.c[1], slot_at(1, E)}, ArmRef{1, 1}},
      {Port{t.c[1], slot_at(1, SE)}, ArmRef{2, 0}}, {Port{t.c[2], slot_at(2, NW)}, ArmRef{0, 3}},
      {Port{t.c[2], slot_at(2, NE)}, ArmRef{1, 2}}, {Port{t.c[0], slot_at(0, SW)}, ArmRef{2, 3}},
  };
  std::vector<std::pair<End, End>> conn = {
      {ArmRef{0, 1}, ArmRef{1, 0}},  // a: D1.E - D2.W
      {ArmRef{2, 1}, ArmRef{0, 2}},  // b: D3.NW - D1.SE
      {ArmRef{1, 3}, ArmRef{2, 2}},  // c: D2.SW - D3.NE
  };
  for (const auto& [port, arm] : moved) {
    const Port partner = link[port.crossing][port.slot];
    const auto it = moved.find(partner);
    if (it == moved.end()) {
      conn.push_back({arm, partner});
    } else if (port < partner) {
      conn.push_back({arm, it->second});
    }
  }
  const std::set<int> removed(t.c.begin(), t.c.end());
  Diagram out = rewrite(d, removed, {}, {D1, D2, D3}, conn, 0);
  // each classical crossing keeps its kind
  for (const NewCrossing* x : {&D1, &D2, &D3}) {
    const auto before = d.crossings[*d.index_of(x->id)].kind;
    const auto after = out.crossings[*out.index_of(x->id)].kind;
    if (before != after) throw std::logic_error("triangle move changed a crossing sign");
  }
  return out;
}

}  // namespace detail

/// Applies a move at its site; throws PatternMismatch if the site does not
/// carry the move's local picture.
inline Diagram apply(const Diagram& d, const Move& m) {
  require_valid(d);
  switch (m.family) {
    case MoveFamily::R1Insert:
    case MoveFamily::PIInsert: return detail::kink_insert(d, m);
    case MoveFamily::R1Remove:
    case MoveFamily::PIRemove: return detail::kink_remove(d, m);
    case MoveFamily::R2Insert: return detail::r2_insert(d, m);
    case MoveFamily::R2Remove: return detail::r2_remove(d, m);
    case MoveFamily::PII: return detail::pii(d, m);
    case MoveFamily::R3:
    case MoveFamily::PIII:
    case MoveFamily::PIIIPrime: return detail::triangle_move(d, m);
  }
  throw std::logic_error("unknown move family");
}

/// Every site at which a legal move of `mode` applies, in a fixed order.
inline std::vector<Move> applicable_moves(const Diagram& d, EquivalenceMode mode) {
  require_valid(d);
  const auto legal = legal_moves(mode);
  const auto allowed = [&](MoveFamily f) {
    return std::find(legal.begin(), legal.end(), f) != legal.end();
  };
  std::vector<Move> out;
  const int v = d.crossing_count();

  // kink insertions
  std::vector<Port> sites;
  if (v == 0 && d.free_loops > 0) sites.push_back(Port{-1, 0});
  std::vector<Edge> edges = d.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) sites.push_back(e.tail);
  for (Port p : sites)
    for (int corner : {1, 3}) {
      for (CrossingKind k : {CrossingKind::Positive, CrossingKind::Negative})
        out.push_back(Move{MoveFamily::R1Insert, p, corner, k});
      if (allowed(MoveFamily::PIInsert))
        out.push_back(Move{MoveFamily::PIInsert, p, corner, CrossingKind::Pre});
    }
  if (v == 0) return out;

  const LinkTable link = links(d);
  for (int c = 0; c < v; ++c)
    if (detail::has_kink(link, c)) {
      const bool pre = d.crossings[c].kind == CrossingKind::Pre;
      if (pre && !allowed(MoveFamily::PIRemove)) continue;
      Move m;
      m.family = pre ? MoveFamily::PIRemove : MoveFamily::R1Remove;
      m.crossing = c;
      out.push_back(m);
    }

  const auto regions = faces(d);
  for (const auto& r : regions) {
    const auto& cs = r.corners;
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j)
        for (int over : {1, 2}) {
          Move m;
          m.family = MoveFamily::R2Insert;
          m.corners = {cs[i], cs[j]};
          m.over = over;
          out.push_back(m);
        }
    if (cs.size() == 2) {
      for (MoveFamily f : {MoveFamily::R2Remove, MoveFamily::PII}) {
        Move m;
        m.family = f;
        m.corners = cs;
        try {
          (void)apply(d, m);
          out.push_back(m);
        } catch (const PatternMismatch&) {
        }
      }
    }
    if (cs.size() == 3) {
      for (MoveFamily f : {MoveFamily::R3, MoveFamily::PIII, MoveFamily::PIIIPrime}) {
        Move m;
        m.family = f;
        m.corners = cs;
        try {
          (void)apply(d, m);
          out.push_back(m);
        } catch (const PatternMismatch&) {
        }
      }
    }
  }
  return out;
}

/// Applies `length` random legal moves. Each step picks a family uniformly among
/// those with at least one applicable site, then a site uniformly.
inline Diagram random_move_sequence(const Diagram& d, EquivalenceMode mode, int length,
                                    std::uint64_t seed, std::vector<Move>* trace = nullptr) {
  if (length < 0) throw InputError("sequence length must be nonnegative");
  std::mt19937_64 rng(seed);
  Diagram cur = d;
  for (int step = 0; step < length; ++step) {
    std::map<MoveFamily, std::vector<Move>> by_family;
    for (auto& m : applicable_moves(cur, mode)) by_family[m.family].push_back(std::move(m));
    if (by_family.empty()) break;
    auto it = by_family.begin();
    std::advance(it, static_cast<long>(rng() % by_family.size()));
    const auto& sites = it->second;
    const Move& m = sites[rng() % sites.size()];
    cur = apply(cur, m);
    if (trace) trace->push_back(m);
  }
  return cur;
}

}  // namespace psy
