#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "psybracket/error.hpp"

namespace psy {

/// Carrier elements are the integers 1..n.
using Element = int;

/// Argument position of a ternary operation.
enum class Slot { First, Middle, Last };

inline const char* slot_name(Slot s) {
  switch (s) {
    case Slot::First: return "first";
    case Slot::Middle: return "middle";
    case Slot::Last: return "last";
  }
  return "?";
}

/// A total map {1..n}^3 -> {1..n}, stored densely. Entry (a,b,c) is the value
/// in matrix a, row b, column c of the operation 3-tensor.
class TernaryTensor {
 public:
  TernaryTensor() = default;

  explicit TernaryTensor(int n, Element fill = 1) : n_(n) {
    if (n < 1 || n > 255) throw InputError("tensor size must be in 1..255, got " + std::to_string(n));
    if (fill < 1 || fill > n) throw InputError("fill value out of range");
    entries_.assign(static_cast<std::size_t>(n) * n * n, static_cast<std::uint8_t>(fill));
  }

  /// Builds a tensor from n^3 values in (a,b,c) lexicographic order.
  static TernaryTensor from_entries(int n, std::span<const Element> values) {
    TernaryTensor t(n);
    if (values.size() != t.entries_.size())
      throw InputError("expected " + std::to_string(t.entries_.size()) + " entries, got " +
                       std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 1 || values[i] > n)
        throw InputError("entry " + std::to_string(values[i]) + " outside 1.." + std::to_string(n));
      t.entries_[i] = static_cast<std::uint8_t>(values[i]);
    }
    return t;
  }

  template <class F>
  static TernaryTensor from_function(int n, F&& f) {
    TernaryTensor t(n);
    for (Element a = 1; a <= n; ++a)
      for (Element b = 1; b <= n; ++b)
        for (Element c = 1; c <= n; ++c) t.set(a, b, c, f(a, b, c));
    return t;
  }

  int size() const noexcept { return n_; }

  /// Unchecked lookup; arguments must lie in 1..n.
  Element operator()(Element a, Element b, Element c) const noexcept {
    return entries_[index(a, b, c)];
  }

  Element eval(Element a, Element b, Element c) const {
    check_element(a);
    check_element(b);
    check_element(c);
    return (*this)(a, b, c);
  }

  void set(Element a, Element b, Element c, Element value) {
    check_element(a);
    check_element(b);
    check_element(c);
    check_element(value);
    entries_[index(a, b, c)] = static_cast<std::uint8_t>(value);
  }

  std::span<const std::uint8_t> entries() const noexcept { return entries_; }

  friend bool operator==(const TernaryTensor&, const TernaryTensor&) = default;
  friend auto operator<=>(const TernaryTensor& x, const TernaryTensor& y) {
    if (auto c = x.n_ <=> y.n_; c != 0) return c;
    return x.entries_ <=> y.entries_;
  }

 private:
  std::size_t index(Element a, Element b, Element c) const noexcept {
    return (static_cast<std::size_t>(a - 1) * n_ + static_cast<std::size_t>(b - 1)) * n_ +
           static_cast<std::size_t>(c - 1);
  }

  void check_element(Element x) const {
    if (x < 1 || x > n_)
      throw InputError("element " + std::to_string(x) + " outside 1.." + std::to_string(n_));
  }

  int n_ = 0;
  std::vector<std::uint8_t> entries_;
};

/// Thrown when a slot of a tensor cannot be uniquely solved for a target.
class NotInvertible : public InputError {
 public:
  NotInvertible(Slot slot, Element known1, Element known2, Element target, int solutions)
      : InputError(std::string("no unique solution in ") + slot_name(slot) + " slot for knowns (" +
                   std::to_string(known1) + "," + std::to_string(known2) + ") and target " +
                   std::to_string(target) + " (" + std::to_string(solutions) + " solutions)"),
        slot_(slot), known1_(known1), known2_(known2), target_(target), solutions_(solutions) {}

  Slot slot() const noexcept { return slot_; }
  Element known1() const noexcept { return known1_; }
  Element known2() const noexcept { return known2_; }
  Element target() const noexcept { return target_; }
  int solutions() const noexcept { return solutions_; }

 private:
  Slot slot_;
  Element known1_, known2_, target_;
  int solutions_;
};

/// Evaluates t with w placed in `slot` and known1, known2 filling the other
/// two positions in order.
inline Element eval_with(const TernaryTensor& t, Slot slot, Element known1, Element known2,
                         Element w) noexcept {
  switch (slot) {
    case Slot::First: return t(w, known1, known2);
    case Slot::Middle: return t(known1, w, known2);
    case Slot::Last: return t(known1, known2, w);
  }
  return 0;
}

/// Returns the unique w with eval_with(t, slot, known1, known2, w) == target.
inline Element solve(const TernaryTensor& t, Slot slot, Element known1, Element known2,
                     Element target) {
  const int n = t.size();
  for (Element x : {known1, known2, target})
    if (x < 1 || x > n) throw InputError("element " + std::to_string(x) + " out of range");
  Element found = 0;
  int count = 0;
  for (Element w = 1; w <= n; ++w) {
    if (eval_with(t, slot, known1, known2, w) == target) {
      found = w;
      ++count;
    }
  }
  if (count != 1) throw NotInvertible(slot, known1, known2, target, count);
  return found;
}

/// True when every slot-fixing of t is a Latin square (t is a ternary quasigroup).
inline bool is_latin_cube(const TernaryTensor& t) {
  const int n = t.size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1);
  for (Slot slot : {Slot::First, Slot::Middle, Slot::Last})
    for (Element x = 1; x <= n; ++x)
      for (Element y = 1; y <= n; ++y) {
        std::fill(seen.begin(), seen.end(), 0);
        for (Element w = 1; w <= n; ++w) {
          Element v = eval_with(t, slot, x, y, w);
          if (seen[v]) return false;
          seen[v] = 1;
        }
      }
  return true;
}

}  // namespace psy
