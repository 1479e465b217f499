#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psybracket/algebra.hpp"
#include "psybracket/error.hpp"

namespace psy {

inline constexpr int kDefaultEnumerationBound = 4;

struct EnumerationResult {
  int n = 0;
  std::size_t total = 0;
  std::vector<PsyBracket> representatives;
  std::vector<std::size_t> class_sizes;
};

namespace detail {

inline void check_bound(int n, int bound) {
  if (n < 1) throw InputError("carrier size must be positive");
  if (n > bound)
    throw InputError("refusing to enumerate n=" + std::to_string(n) + " (bound is " +
                     std::to_string(bound) + "; raise it explicitly)");
}

// Partially filled table; 0 marks an unknown entry.
struct Partial {
  int n;
  std::vector<Element> v;

  explicit Partial(int size) : n(size), v(static_cast<std::size_t>(size) * size * size, 0) {}
  Element& at(Element a, Element b, Element c) {
    return v[(static_cast<std::size_t>(a - 1) * n + (b - 1)) * n + (c - 1)];
  }
  Element get(Element a, Element b, Element c) const {
    if (a == 0 || b == 0 || c == 0) return 0;
    return v[(static_cast<std::size_t>(a - 1) * n + (b - 1)) * n + (c - 1)];
  }
};

// (iii.i) and (iii.iv) on every instance whose entries are already known.
inline bool tribracket_consistent(const Partial& t) {
  const int n = t.n;
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element x = 1; x <= n; ++x) {
        const Element f = t.get(a, b, x);
        if (f == 0) continue;
        for (Element d = 1; d <= n; ++d) {
          const Element e = t.get(b, x, d);
          if (e == 0) continue;
          const Element l1 = t.get(f, x, d), r1 = t.get(t.get(a, b, e), e, d);
          if (l1 && r1 && l1 != r1) return false;
          const Element l4 = t.get(a, b, e), r4 = t.get(a, f, t.get(f, x, d));
          if (l4 && r4 && l4 != r4) return false;
        }
      }
  return true;
}

// Every pre-operation axiom on instances whose entries are known; tc is total.
inline bool pre_consistent(const TernaryTensor& c, const Partial& p) {
  const int n = c.size();
  for (Element b = 1; b <= n; ++b)
    for (Element x = 1; x <= n; ++x) {
      int hits_u = 0, hits_v = 0;
      bool open_u = false, open_v = false;
      for (Element w = 1; w <= n; ++w) {
        const Element pu = p.get(w, b, x);
        if (pu == 0) open_u = true;
        else if (pu == b) ++hits_u;
        const Element pv = p.get(b, x, w);
        if (pv == 0) open_v = true;
        else if (pv == x) ++hits_v;
      }
      if (hits_u > 1 || (!open_u && hits_u != 1)) return false;
      if (hits_v > 1 || (!open_v && hits_v != 1)) return false;
    }
  for (Element a = 1; a <= n; ++a)
    for (Element b = 1; b <= n; ++b)
      for (Element x = 1; x <= n; ++x) {
        const Element pab = p.get(a, b, x);
        {
          const Element l = p.get(a, c(a, b, x), x);
          if (l && pab && l != c(a, pab, x)) return false;
        }
        const Element f = c(a, b, x);
        for (Element d = 1; d <= n; ++d) {
          const Element ec = c(b, x, d);
          const Element ep = p.get(b, x, d);
          const Element lhs = c(f, x, d);
          if (ep && lhs != c(c(a, b, ep), ep, d)) return false;
          if (pab) {
            const Element r = p.get(c(a, b, ec), ec, d);
            if (r && c(pab, x, d) != r) return false;
            if (c(a, b, ec) != c(a, pab, c(pab, x, d))) return false;
          }
          if (ep) {
            const Element r = p.get(a, f, c(f, x, d));
            if (r && c(a, b, ep) != r) return false;
          }
        }
      }
  return true;
}

}  // namespace detail

/// All tribrackets on {1..n}, sorted by flattened entries.
inline std::vector<TernaryTensor> enumerate_tribrackets(int n, int bound = kDefaultEnumerationBound) {
  detail::check_bound(n, bound);
  std::vector<TernaryTensor> out;
  detail::Partial t(n);
  const std::size_t cells = static_cast<std::size_t>(n) * n * n;
  const std::size_t layer = static_cast<std::size_t>(n) * n;

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == cells) {
      auto tensor = TernaryTensor::from_entries(n, t.v);
      if (is_tribracket(tensor)) out.push_back(std::move(tensor));
      return;
    }
    const Element a = static_cast<Element>(i / layer) + 1;
    const Element b = static_cast<Element>(i / n % n) + 1;
    const Element c = static_cast<Element>(i % n) + 1;
    for (Element v = 1; v <= n; ++v) {
      bool clash = false;
      for (Element w = 1; w <= n && !clash; ++w)
        clash = (w != c && t.get(a, b, w) == v) || (w != b && t.get(a, w, c) == v) ||
                (w != a && t.get(w, b, c) == v);
      if (clash) continue;
      t.at(a, b, c) = v;
      if (c < n || b < n || detail::tribracket_consistent(t)) self(self, i + 1);
      t.at(a, b, c) = 0;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Every pre operation completing tc to a psybracket, sorted.
inline std::vector<TernaryTensor> compatible_pre_operations(const TernaryTensor& tc) {
  const int n = tc.size();
  std::vector<TernaryTensor> out;
  detail::Partial p(n);
  const std::size_t cells = static_cast<std::size_t>(n) * n * n;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == cells) {
      auto tp = TernaryTensor::from_entries(n, p.v);
      if (satisfies_axioms(tc, tp)) out.push_back(std::move(tp));
      return;
    }
    for (Element v = 1; v <= n; ++v) {
      p.v[i] = v;
      if (detail::pre_consistent(tc, p)) self(self, i + 1);
    }
    p.v[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Least member of the relabeling orbit of x.
inline PsyBracket canonical_form(const PsyBracket& x) {
  Permutation sigma = identity_permutation(x.size());
  PsyBracket best = x;
  do {
    PsyBracket y = apply_permutation(x, sigma);
    if (y < best) best = std::move(y);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

/// Groups a set of psybrackets into isomorphism classes. Representatives are the
/// least member of each class, listed in increasing order.
inline EnumerationResult classify(int n, const std::vector<PsyBracket>& all) {
  std::map<PsyBracket, std::size_t> classes;
  for (const auto& x : all) ++classes[canonical_form(x)];
  EnumerationResult r;
  r.n = n;
  r.total = all.size();
  for (auto& [rep, count] : classes) {
    r.representatives.push_back(rep);
    r.class_sizes.push_back(count);
  }
  return r;
}

inline std::vector<PsyBracket> all_psybrackets(int n, int bound = kDefaultEnumerationBound) {
  std::vector<PsyBracket> all;
  for (const auto& tc : enumerate_tribrackets(n, bound))
    for (auto& tp : compatible_pre_operations(tc)) all.push_back({tc, std::move(tp)});
  return all;
}

inline EnumerationResult enumerate_psybrackets(int n, int bound = kDefaultEnumerationBound) {
  return classify(n, all_psybrackets(n, bound));
}

}  // namespace psy
