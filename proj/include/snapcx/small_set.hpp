#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

namespace snapcx {

using ProcessId = int;

/// Finite set of small nonnegative integers (0..63) stored as a bit mask.
///
/// Used both for process sets and for round-index sets (traces). Iteration
/// visits elements in increasing order.
class SmallSet {
 public:
  static constexpr int kCapacity = 64;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr SmallSet() = default;
  SmallSet(std::initializer_list<int> elements);

  static constexpr SmallSet from_bits(std::uint64_t bits) {
    SmallSet s;
    s.bits_ = bits;
    return s;
  }
  /// {0, ..., n-1}
  static SmallSet range(int n);
  static SmallSet singleton(int x);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  bool contains(int x) const;
  int min() const;
  int max() const;

  void insert(int x);
  void erase(int x);

  constexpr bool subset_of(SmallSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool proper_subset_of(SmallSet other) const {
    return subset_of(other) && bits_ != other.bits_;
  }
  constexpr bool intersects(SmallSet other) const {
    return (bits_ & other.bits_) != 0;
  }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const;
  /// "{0,2}"
  std::string to_string() const;
  /// Accepts "{0,2}", "0,2", "{}" and "" (empty).
  static SmallSet parse(std::string_view text);

  friend constexpr SmallSet operator|(SmallSet a, SmallSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr SmallSet operator&(SmallSet a, SmallSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  /// Set difference.
  friend constexpr SmallSet operator-(SmallSet a, SmallSet b) {
    return from_bits(a.bits_ & ~b.bits_);
  }
  SmallSet& operator|=(SmallSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  SmallSet& operator&=(SmallSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  SmallSet& operator-=(SmallSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  friend constexpr bool operator==(SmallSet, SmallSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

using ProcessSet = SmallSet;
using LevelSet = SmallSet;

/// Lexicographic order on the increasing element sequences, e.g.
/// {0,1} < {0,2} < {1}. Used wherever output order must be stable.
bool lex_less(SmallSet a, SmallSet b);

/// All subsets of `s`, sorted by size and then lexicographically.
std::vector<SmallSet> subsets_of(SmallSet s);

/// Calls f(sub) for every subset of s (including empty and s itself).
template <typename F>
void for_each_subset(SmallSet s, F&& f) {
  const std::uint64_t mask = s.bits();
  std::uint64_t sub = 0;
  while (true) {
    f(SmallSet::from_bits(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace snapcx

template <>
struct std::hash<snapcx::SmallSet> {
  std::size_t operator()(snapcx::SmallSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
