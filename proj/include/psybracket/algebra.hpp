#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psybracket/error.hpp"
#include "psybracket/tensor.hpp"

namespace psy {

/// A classical operation together with a precrossing operation on {1..n}.
struct PsyBracket {
  TernaryTensor classical;
  TernaryTensor pre;

  int size() const noexcept { return classical.size(); }

  friend bool operator==(const PsyBracket&, const PsyBracket&) = default;
  friend auto operator<=>(const PsyBracket&, const PsyBracket&) = default;
};

enum class Axiom { I1, I2, I3, I4, I5, II, III1, III2, III3, III4, III5, III6 };

inline constexpr std::array<Axiom, 12> kAllAxioms = {
    Axiom::I1,   Axiom::I2,   Axiom::I3,   Axiom::I4,   Axiom::I5,   Axiom::II,
    Axiom::III1, Axiom::III2, Axiom::III3, Axiom::III4, Axiom::III5, Axiom::III6};

inline std::string_view axiom_tag(Axiom a) {
  switch (a) {
    case Axiom::I1: return "i.i";
    case Axiom::I2: return "i.ii";
    case Axiom::I3: return "i.iii";
    case Axiom::I4: return "i.iv";
    case Axiom::I5: return "i.v";
    case Axiom::II: return "ii";
    case Axiom::III1: return "iii.i";
    case Axiom::III2: return "iii.ii";
    case Axiom::III3: return "iii.iii";
    case Axiom::III4: return "iii.iv";
    case Axiom::III5: return "iii.v";
    case Axiom::III6: return "iii.vi";
  }
  return "?";
}

struct AxiomFailure {
  Axiom axiom;
  std::vector<Element> witness;

  friend bool operator==(const AxiomFailure&, const AxiomFailure&) = default;
};

struct AxiomReport {
  bool passed = true;
  std::vector<AxiomFailure> failures;

  bool failed(Axiom a) const {
    return std::any_of(failures.begin(), failures.end(),
                       [a](const AxiomFailure& f) { return f.axiom == a; });
  }
};

namespace detail {

inline int count_solutions(const TernaryTensor& t, Slot slot, Element k1, Element k2,
                           Element target) {
  int count = 0;
  for (Element w = 1; w <= t.size(); ++w)
    if (eval_with(t, slot, k1, k2, w) == target) ++count;
  return count;
}

// The equations of the axiom system with every quantifier already bound.
// Each returns true when the instance holds.
struct Equations {
  const TernaryTensor& c;
  const TernaryTensor& p;

  bool ii(Element a, Element b, Element x) const {
    return p(a, c(a, b, x), x) == c(a, p(a, b, x), x);
  }
  bool iii1(Element a, Element b, Element x, Element d) const {
    const Element e = c(b, x, d);
    return c(c(a, b, x), x, d) == c(c(a, b, e), e, d);
  }
  bool iii2(Element a, Element b, Element x, Element d) const {
    const Element e = p(b, x, d);
    return c(c(a, b, x), x, d) == c(c(a, b, e), e, d);
  }
  bool iii3(Element a, Element b, Element x, Element d) const {
    const Element e = c(b, x, d);
    return c(p(a, b, x), x, d) == p(c(a, b, e), e, d);
  }
  bool iii4(Element a, Element b, Element x, Element d) const {
    const Element f = c(a, b, x);
    return c(a, b, c(b, x, d)) == c(a, f, c(f, x, d));
  }
  bool iii5(Element a, Element b, Element x, Element d) const {
    const Element f = p(a, b, x);
    return c(a, b, c(b, x, d)) == c(a, f, c(f, x, d));
  }
  bool iii6(Element a, Element b, Element x, Element d) const {
    const Element f = c(a, b, x);
    return c(a, b, p(b, x, d)) == p(a, f, c(f, x, d));
  }
};

}  // namespace detail

/// Exhaustively checks all twelve axioms. Each violated axiom is reported once,
/// with its lexicographically smallest violating tuple.
inline AxiomReport check_axioms(const TernaryTensor& tc, const TernaryTensor& tp) {
  if (tc.size() != tp.size())
    throw InputError("operation sizes differ: " + std::to_string(tc.size()) + " vs " +
                     std::to_string(tp.size()));
  const int n = tc.size();
  AxiomReport report;
  auto fail = [&](Axiom ax, std::vector<Element> w) {
    report.failures.push_back({ax, std::move(w)});
  };

  // (i.i)-(i.iii): the classical operation is invertible in every slot.
  const std::array<std::pair<Axiom, Slot>, 3> inv = {
      {{Axiom::I1, Slot::Last}, {Axiom::I2, Slot::Middle}, {Axiom::I3, Slot::First}}};
  for (auto [ax, slot] : inv) {
    bool done = false;
    for (Element a = 1; a <= n && !done; ++a)
      for (Element b = 1; b <= n && !done; ++b)
        for (Element x = 1; x <= n && !done; ++x)
          if (detail::count_solutions(tc, slot, a, b, x) != 1) {
            fail(ax, {a, b, x});
            done = true;
          }
  }

  // (i.iv): unique u with <u,b,c>_p = b.  (i.v): unique v with <a,b,v>_p = b.
  {
    bool done = false;
    for (Element b = 1; b <= n && !done; ++b)
      for (Element x = 1; x <= n && !done; ++x)
        if (detail::count_solutions(tp, Slot::First, b, x, b) != 1) {
          fail(Axiom::I4, {b, x});
          done = true;
        }
  }
  {
    bool done = false;
    for (Element a = 1; a <= n && !done; ++a)
      for (Element b = 1; b <= n && !done; ++b)
        if (detail::count_solutions(tp, Slot::Last, a, b, b) != 1) {
          fail(Axiom::I5, {a, b});
          done = true;
        }
  }

  const detail::Equations eq{tc, tp};
  {
    bool done = false;
    for (Element a = 1; a <= n && !done; ++a)
      for (Element b = 1; b <= n && !done; ++b)
        for (Element x = 1; x <= n && !done; ++x)
          if (!eq.ii(a, b, x)) {
            fail(Axiom::II, {a, b, x});
            done = true;
          }
  }

  using Quad = bool (detail::Equations::*)(Element, Element, Element, Element) const;
  const std::array<std::pair<Axiom, Quad>, 6> quads = {{{Axiom::III1, &detail::Equations::iii1},
                                                        {Axiom::III2, &detail::Equations::iii2},
                                                        {Axiom::III3, &detail::Equations::iii3},
                                                        {Axiom::III4, &detail::Equations::iii4},
                                                        {Axiom::III5, &detail::Equations::iii5},
                                                        {Axiom::III6, &detail::Equations::iii6}}};
  for (auto [ax, fn] : quads) {
    bool done = false;
    for (Element a = 1; a <= n && !done; ++a)
      for (Element b = 1; b <= n && !done; ++b)
        for (Element x = 1; x <= n && !done; ++x)
          for (Element d = 1; d <= n && !done; ++d)
            if (!(eq.*fn)(a, b, x, d)) {
              fail(ax, {a, b, x, d});
              done = true;
            }
  }

  report.passed = report.failures.empty();
  return report;
}

inline AxiomReport check_axioms(const PsyBracket& x) { return check_axioms(x.classical, x.pre); }

/// Early-exit form of check_axioms(...).passed.
inline bool satisfies_axioms(const TernaryTensor& tc, const TernaryTensor& tp) {
  if (tc.size() != tp.size()) return false;
  const int n = tc.size();
  if (!is_latin_cube(tc)) return false;
  for (Element b = 1; b <= n; ++b)
    for (Element x = 1; x <= n; ++x) {
      if (detail::count_solutions(tp, Slot::First, b, x, b) != 1) return false;
      if (detail::count_solutions(tp, Slot::Last, b, x, x) != 1) return false;
    }
  const detail::Equations eq{tc, tp};
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element x = 1; x <= n; ++x) {
        if (!eq.ii(a, b, x)) return false;
        for (Element d = 1; d <= n; ++d)
          if (!eq.iii1(a, b, x, d) || !eq.iii2(a, b, x, d) || !eq.iii3(a, b, x, d) ||
              !eq.iii4(a, b, x, d) || !eq.iii5(a, b, x, d) || !eq.iii6(a, b, x, d))
            return false;
      }
  return true;
}

/// Vertical tribracket test: a ternary quasigroup satisfying (iii.i) and (iii.iv)
/// with every bracket read as the classical operation.
inline bool is_tribracket(const TernaryTensor& t) {
  if (!is_latin_cube(t)) return false;
  const detail::Equations eq{t, t};
  const int n = t.size();
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element x = 1; x <= n; ++x)
        for (Element d = 1; d <= n; ++d)
          if (!eq.iii1(a, b, x, d) || !eq.iii4(a, b, x, d)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Groups and the standard constructions

/// Multiplication table of a finite group on {1..n}: table[a-1][b-1] = a*b.
using GroupTable = std::vector<std::vector<Element>>;

/// Z_n written on {1..n}, with n standing for the class of zero.
inline GroupTable cyclic_group(int n) {
  if (n < 1) throw InputError("group order must be positive");
  GroupTable g(n, std::vector<Element>(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      int s = (a + b) % n;
      g[a - 1][b - 1] = s == 0 ? n : s;
    }
  return g;
}

/// Checks the group axioms; returns (identity, inverse table).
inline std::pair<Element, std::vector<Element>> validate_group(const GroupTable& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) throw InputError("group table is empty");
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != n) throw InputError("group table is not square");
    for (Element v : row)
      if (v < 1 || v > n) throw InputError("group table not closed: entry " + std::to_string(v));
  }
  auto mul = [&](Element a, Element b) { return g[a - 1][b - 1]; };
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element c = 1; c <= n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw InputError("group table fails associativity at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
  Element identity = 0;
  for (Element e = 1; e <= n && identity == 0; ++e) {
    bool ok = true;
    for (Element a = 1; a <= n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity = e;
  }
  if (identity == 0) throw InputError("group table fails identity: no two-sided identity");
  std::vector<Element> inverse(n + 1, 0);
  for (Element a = 1; a <= n; ++a) {
    for (Element b = 1; b <= n; ++b)
      if (mul(a, b) == identity && mul(b, a) == identity) inverse[a] = b;
    if (inverse[a] == 0)
      throw InputError("group table fails inverses: " + std::to_string(a) + " has no inverse");
  }
  return {identity, inverse};
}

/// <a,b,c> = a b^{-1} c.
inline TernaryTensor dehn_tribracket(const GroupTable& g) {
  const auto [identity, inverse] = validate_group(g);
  (void)identity;
  auto mul = [&](Element a, Element b) { return g[a - 1][b - 1]; };
  const int n = static_cast<int>(g.size());
  return TernaryTensor::from_function(
      n, [&](Element a, Element b, Element c) { return mul(mul(a, inverse[b]), c); });
}

/// Pre operation equal to the classical one (precrossings read as positive crossings).
inline PsyBracket promote_positive(const TernaryTensor& tc) {
  if (!is_tribracket(tc)) throw InputError("promote_positive: operation is not a tribracket");
  return {tc, tc};
}

/// Pre operation <a,b,c>_p = d where <a,d,c>_c = b (precrossings read as negative crossings).
inline PsyBracket promote_negative(const TernaryTensor& tc) {
  if (!is_tribracket(tc)) throw InputError("promote_negative: operation is not a tribracket");
  const auto tp = TernaryTensor::from_function(tc.size(), [&](Element a, Element b, Element c) {
    return solve(tc, Slot::Middle, a, c, b);
  });
  return {tc, tp};
}

// ---------------------------------------------------------------------------
// Relabelings

/// sigma[a-1] is the image of a.
using Permutation = std::vector<Element>;

inline Permutation identity_permutation(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

inline void require_bijection(const Permutation& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n)
    throw InputError("permutation has " + std::to_string(sigma.size()) + " entries, expected " +
                     std::to_string(n));
  std::vector<char> hit(n + 1, 0);
  for (Element v : sigma) {
    if (v < 1 || v > n || hit[v]) throw InputError("map is not a bijection of 1.." + std::to_string(n));
    hit[v] = 1;
  }
}

inline TernaryTensor apply_permutation(const TernaryTensor& t, const Permutation& sigma) {
  const int n = t.size();
  require_bijection(sigma, n);
  TernaryTensor out(n);
  auto s = [&](Element x) { return sigma[x - 1]; };
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element c = 1; c <= n; ++c) out.set(s(a), s(b), s(c), s(t(a, b, c)));
  return out;
}

inline PsyBracket apply_permutation(const PsyBracket& x, const Permutation& sigma) {
  return {apply_permutation(x.classical, sigma), apply_permutation(x.pre, sigma)};
}

/// Searches all n! relabelings for one carrying x onto y.
inline std::optional<Permutation> is_isomorphic(const PsyBracket& x, const PsyBracket& y) {
  if (x.size() != y.size()) return std::nullopt;
  Permutation sigma = identity_permutation(x.size());
  do {
    if (apply_permutation(x, sigma) == y) return sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

/// f[a-1] = f(a); both operations must be preserved.
inline bool is_homomorphism(const std::vector<Element>& f, const PsyBracket& x,
                            const PsyBracket& y) {
  const int n = x.size();
  const int m = y.size();
  if (static_cast<int>(f.size()) != n) return false;
  for (Element v : f)
    if (v < 1 || v > m) return false;
  auto F = [&](Element a) { return f[a - 1]; };
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element c = 1; c <= n; ++c) {
        if (y.classical(F(a), F(b), F(c)) != F(x.classical(a, b, c))) return false;
        if (y.pre(F(a), F(b), F(c)) != F(x.pre(a, b, c))) return false;
      }
  return true;
}

}  // namespace psy
