#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "psybracket/algebra.hpp"
#include "psybracket/diagram.hpp"
#include "psybracket/error.hpp"

namespace psy {

/// Positive: T = <L,B,R>_c.  Negative: B = <L,T,R>_c.  Pre: T = <L,B,R>_p.
inline bool crossing_constraint(CrossingKind kind, const PsyBracket& x, Element L, Element B,
                                Element R, Element T) {
  switch (kind) {
    case CrossingKind::Positive: return x.classical.eval(L, B, R) == T;
    case CrossingKind::Negative: return x.classical.eval(L, T, R) == B;
    case CrossingKind::Pre: return x.pre.eval(L, B, R) == T;
  }
  return false;
}

/// Region roles at a crossing, as corner indices.
enum Role { kB = 0, kL = 1, kT = 2, kR = 3 };

/// A coloring lists one element per region, indexed by region id.
using Coloring = std::vector<Element>;

namespace detail {

class ColoringSolver {
 public:
  ColoringSolver(const Diagram& d, const PsyBracket& x) : x_(x), n_(x.size()) {
    if (x.classical.size() != x.pre.size()) throw InputError("psybracket operation sizes differ");
    require_valid(d);
    regions_ = faces(d);
    const auto table = corner_regions(d, regions_);
    kinds_.reserve(d.crossing_count());
    for (const auto& c : d.crossings) kinds_.push_back(c.kind);
    roles_ = table;
    at_region_.assign(regions_.size(), {});
    for (int c = 0; c < d.crossing_count(); ++c)
      for (int k = 0; k < 4; ++k) {
        auto& v = at_region_[table[c][k]];
        if (v.empty() || v.back() != c) v.push_back(c);
      }
    for (const auto& r : regions_) (r.corners.empty() ? free_ : order_).push_back(r.id);
    build_inverses();
  }

  std::uint64_t count() {
    val_.assign(regions_.size(), 0);
    std::uint64_t total = 0;
    search(0, [&] { ++total; });
    std::uint64_t factor = 1;
    for (std::size_t i = 0; i < free_.size(); ++i) factor *= static_cast<std::uint64_t>(n_);
    return total * factor;
  }

  std::vector<Coloring> enumerate() {
    val_.assign(regions_.size(), 0);
    std::vector<Coloring> out;
    search(0, [&] {
      Coloring base = val_;
      // expand unconstrained regions lexicographically
      std::vector<Element> free_vals(free_.size(), 1);
      while (true) {
        for (std::size_t i = 0; i < free_.size(); ++i) base[free_[i]] = free_vals[i];
        out.push_back(base);
        std::size_t i = free_.size();
        while (i > 0 && free_vals[i - 1] == n_) free_vals[--i] = 1;
        if (i == 0) break;
        ++free_vals[i - 1];
      }
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::vector<Region>& regions() const { return regions_; }

 private:
  // inverse_[slot][(k1*n+k2)*n+target] = unique solution or 0
  void build_inverses() {
    const auto& t = x_.classical;
    const std::size_t sz = static_cast<std::size_t>(n_ + 1) * (n_ + 1) * (n_ + 1);
    for (auto& inv : inverse_) inv.assign(sz, 0);
    for (int s = 0; s < 3; ++s)
      for (Element k1 = 1; k1 <= n_; ++k1)
        for (Element k2 = 1; k2 <= n_; ++k2) {
          std::vector<int> hits(n_ + 1, 0), sol(n_ + 1, 0);
          for (Element w = 1; w <= n_; ++w) {
            const Element v = eval_with(t, static_cast<Slot>(s), k1, k2, w);
            ++hits[v];
            sol[v] = w;
          }
          for (Element target = 1; target <= n_; ++target)
            if (hits[target] == 1) inverse_[s][idx(k1, k2, target)] = sol[target];
        }
  }

  std::size_t idx(Element a, Element b, Element c) const {
    return (static_cast<std::size_t>(a) * (n_ + 1) + b) * (n_ + 1) + c;
  }

  // Checks crossing c; if exactly one role is unknown and that role is
  // solvable, writes the forced value into (region, value). Returns false on
  // contradiction.
  bool examine(int c, int& forced_region, Element& forced_value) const {
    forced_region = -1;
    const auto& r = roles_[c];
    std::array<Element, 4> v{};
    int unknown_role = -1, unknown_roles = 0;
    for (int k = 0; k < 4; ++k) {
      v[k] = val_[r[k]];
      if (v[k] == 0) {
        unknown_role = k;
        ++unknown_roles;
      }
    }
    if (unknown_roles == 0)
      return crossing_constraint(kinds_[c], x_, v[kL], v[kB], v[kR], v[kT]);
    if (unknown_roles > 1) return true;

    const CrossingKind kind = kinds_[c];
    Element w = 0;
    if (kind == CrossingKind::Pre) {
      if (unknown_role != kT) return true;
      w = x_.pre(v[kL], v[kB], v[kR]);
    } else {
      // positive: T = <L,B,R>; negative: B = <L,T,R>
      const int out_role = kind == CrossingKind::Positive ? kT : kB;
      const int mid_role = kind == CrossingKind::Positive ? kB : kT;
      if (unknown_role == out_role) {
        w = x_.classical(v[kL], v[mid_role], v[kR]);
      } else if (unknown_role == kL) {
        w = inverse_[0][idx(v[mid_role], v[kR], v[out_role])];
      } else if (unknown_role == mid_role) {
        w = inverse_[1][idx(v[kL], v[kR], v[out_role])];
      } else {
        w = inverse_[2][idx(v[kL], v[mid_role], v[out_role])];
      }
      if (w == 0) return true;  // slot not uniquely solvable; checked later
    }
    forced_region = r[unknown_role];
    forced_value = w;
    return true;
  }

  // Assigns and propagates; records assigned regions on the trail.
  bool assign(int region, Element value, std::vector<int>& trail) {
    std::vector<std::pair<int, Element>> queue{{region, value}};
    while (!queue.empty()) {
      auto [reg, v] = queue.back();
      queue.pop_back();
      if (val_[reg] != 0) {
        if (val_[reg] != v) return false;
        continue;
      }
      val_[reg] = v;
      trail.push_back(reg);
      for (int c : at_region_[reg]) {
        int fr;
        Element fv;
        if (!examine(c, fr, fv)) return false;
        if (fr >= 0) queue.push_back({fr, fv});
      }
    }
    return true;
  }

  template <class Emit>
  void search(std::size_t pos, Emit&& emit) {
    while (pos < order_.size() && val_[order_[pos]] != 0) ++pos;
    if (pos == order_.size()) {
      emit();
      return;
    }
    const int region = order_[pos];
    for (Element v = 1; v <= n_; ++v) {
      std::vector<int> trail;
      if (assign(region, v, trail)) search(pos + 1, emit);
      for (int r : trail) val_[r] = 0;
    }
  }

  const PsyBracket& x_;
  int n_;
  std::vector<Region> regions_;
  std::vector<CrossingKind> kinds_;
  std::vector<std::array<int, 4>> roles_;
  std::vector<std::vector<int>> at_region_;
  std::vector<int> order_, free_;
  std::array<std::vector<Element>, 3> inverse_;
  std::vector<Element> val_;
};

}  // namespace detail

/// Number of colorings of the regions of d by x.
inline std::uint64_t count_colorings(const Diagram& d, const PsyBracket& x) {
  return detail::ColoringSolver(d, x).count();
}

/// All colorings, sorted; entry i of each is the color of region i.
inline std::vector<Coloring> enumerate_colorings(const Diagram& d, const PsyBracket& x) {
  return detail::ColoringSolver(d, x).enumerate();
}

// ---------------------------------------------------------------------------
// Weighted resolution sets

inline constexpr int kDefaultWeresetBound = 20;

struct Fingerprint {
  std::vector<std::uint64_t> phi;
  std::vector<int> linking;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

inline Fraction reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

struct WeresetGroup {
  Fraction weight;
  Fingerprint fingerprint;
  Resolution sample;
};

/// Fingerprint of a diagram without precrossings.
inline Fingerprint fingerprint(const Diagram& d, const std::vector<PsyBracket>& battery) {
  Fingerprint f;
  for (const auto& x : battery) f.phi.push_back(count_colorings(d, x));
  f.linking = linking_numbers(d);
  return f;
}

/// Groups the 2^k resolutions of d by fingerprint. Groups are listed in
/// fingerprint order; each sample is the first resolution (in mask order) of
/// its group, where bit i set resolves the i-th precrossing negatively.
inline std::vector<WeresetGroup> wereset(const Diagram& d, const std::vector<TernaryTensor>& battery,
                                         int bound = kDefaultWeresetBound) {
  std::vector<PsyBracket> promoted;
  for (const auto& t : battery) {
    if (!is_tribracket(t)) throw InputError("battery entry is not a tribracket");
    promoted.push_back(promote_positive(t));
  }
  std::vector<int> pre_ids;
  for (const auto& c : d.crossings)
    if (c.kind == CrossingKind::Pre) pre_ids.push_back(c.id);
  const int k = static_cast<int>(pre_ids.size());
  if (k > bound)
    throw InputError("refusing wereset over " + std::to_string(k) + " precrossings (bound " +
                     std::to_string(bound) + ")");
  require_valid(d);

  std::map<Fingerprint, std::pair<std::uint64_t, Resolution>> groups;
  const std::uint64_t masks = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    Resolution r;
    for (int i = 0; i < k; ++i)
      r[pre_ids[i]] = (mask >> i & 1) ? CrossingKind::Negative : CrossingKind::Positive;
    auto fp = fingerprint(resolve(d, r), promoted);
    auto [it, fresh] = groups.try_emplace(std::move(fp), 0, r);
    ++it->second.first;
  }
  std::vector<WeresetGroup> out;
  for (auto& [fp, entry] : groups) out.push_back({reduced(entry.first, masks), fp, entry.second});
  return out;
}

}  // namespace psy
