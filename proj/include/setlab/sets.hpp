#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "setlab/errors.hpp"

namespace setlab {

inline constexpr int kMaxGroundSize = 64;

/// One subset of the ground set {1,...,n}, stored as a bitmask.
/// Element e occupies bit e-1. Values are immutable once built.
class ElementSet {
 public:
  explicit ElementSet(int ground_size) : n_(checked_n(ground_size)), bits_(0) {}

  ElementSet(int ground_size, std::initializer_list<int> elements)
      : ElementSet(ground_size) {
    for (int e : elements) bits_ |= bit(e);
  }

  static ElementSet from_mask(int ground_size, std::uint64_t mask) {
    ElementSet s(ground_size);
    if (ground_size < kMaxGroundSize && (mask >> ground_size) != 0)
      throw ArgumentError("set mask contains elements beyond the ground set");
    s.bits_ = mask;
    return s;
  }

  static ElementSet from_elements(int ground_size, std::span<const int> elements) {
    ElementSet s(ground_size);
    for (int e : elements) s.bits_ |= s.bit(e);
    return s;
  }

  int ground_size() const { return n_; }
  std::uint64_t mask() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  bool contains(int e) const { return e >= 1 && e <= n_ && (bits_ >> (e - 1)) & 1u; }

  ElementSet with(int e) const {
    ElementSet s = *this;
    s.bits_ |= bit(e);
    return s;
  }

  ElementSet without(int e) const {
    ElementSet s = *this;
    s.bits_ &= ~bit(e);
    return s;
  }

  ElementSet complement() const {
    ElementSet s = *this;
    s.bits_ = ~bits_ & ground_mask(n_);
    return s;
  }

  bool subset_of(const ElementSet& o) const {
    require_same_ground(o);
    return (bits_ & ~o.bits_) == 0;
  }

  bool intersects(const ElementSet& o) const {
    require_same_ground(o);
    return (bits_ & o.bits_) != 0;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = bits_; m != 0; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) out += ',';
      out += std::to_string(e);
      first = false;
    }
    out += '}';
    return out;
  }

  friend ElementSet operator|(const ElementSet& a, const ElementSet& b) {
    a.require_same_ground(b);
    return from_mask(a.n_, a.bits_ | b.bits_);
  }

  friend ElementSet operator&(const ElementSet& a, const ElementSet& b) {
    a.require_same_ground(b);
    return from_mask(a.n_, a.bits_ & b.bits_);
  }

  /// Set difference.
  friend ElementSet operator-(const ElementSet& a, const ElementSet& b) {
    a.require_same_ground(b);
    return from_mask(a.n_, a.bits_ & ~b.bits_);
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

  friend bool operator!=(const ElementSet& a, const ElementSet& b) { return !(a == b); }

  /// Canonical member order: by cardinality, then by mask value.
  friend bool operator<(const ElementSet& a, const ElementSet& b) {
    a.require_same_ground(b);
    int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.bits_ < b.bits_;
  }

  static std::uint64_t ground_mask(int n) {
    return n == kMaxGroundSize ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

 private:
  static int checked_n(int n) {
    if (n < 1 || n > kMaxGroundSize)
      throw ArgumentError("ground size must be between 1 and 64, got " + std::to_string(n));
    return n;
  }

  std::uint64_t bit(int e) const {
    if (e < 1 || e > n_)
      throw ArgumentError("element " + std::to_string(e) + " outside ground set of size " +
                          std::to_string(n_));
    return std::uint64_t{1} << (e - 1);
  }

  void require_same_ground(const ElementSet& o) const {
    if (n_ != o.n_) throw ArgumentError("sets live over different ground sizes");
  }

  int n_;
  std::uint64_t bits_;
};

/// Replace `from` by `to` in a copy of `a`; `a` must contain `from` and not `to`.
inline ElementSet swapped(const ElementSet& a, int from, int to) {
  if (!a.contains(from) || a.contains(to))
    throw ArgumentError("swap requires the departing element present and the arriving one absent");
  return a.without(from).with(to);
}

/// An ordered pair (i,j) naming the shift that moves element j down to i.
struct ShiftPair {
  int i;
  int j;

  ShiftPair(int i_, int j_) : i(i_), j(j_) {
    if (i < 1 || j < 1) throw ArgumentError("shift pair elements must be positive");
    if (i == j) throw ArgumentError("shift pair elements must differ");
  }

  friend bool operator==(const ShiftPair& a, const ShiftPair& b) {
    return a.i == b.i && a.j == b.j;
  }
};

int union_size(std::span<const ElementSet> sets);
int intersection_size(std::span<const ElementSet> sets);
ElementSet union_of(std::span<const ElementSet> sets);
ElementSet intersection_of(std::span<const ElementSet> sets);

}  // namespace setlab
