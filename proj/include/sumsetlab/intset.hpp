#pragma once

// Finite nonempty subsets of Z and the arithmetic the 3k-4 machinery needs:
// sumsets, affine gcds, dilates, arithmetic-progression covers and the
// translate/scale/reflect normalization used to deduplicate enumerations.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sumsetlab/detail/bits.hpp"

namespace sumsetlab {

using Int = std::int64_t;

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::range_error("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("integer overflow in multiplication");
  return r;
}

// Largest max - min an IntSet may span; the dense representation costs one
// bit per integer in the hull.
inline constexpr Int kMaxDiameter = Int{1} << 28;

}  // namespace detail

/// A finite, nonempty subset of Z stored as `min + dense bit vector`.
///
/// Values are immutable once built. Membership is O(1); sumsets cost
/// O(min(|A|, |B|) * words) via shift-or.
class IntSet {
 public:
  /// Builds from any list of integers; duplicates collapse. Throws
  /// std::invalid_argument on an empty list and std::range_error when the
  /// hull is wider than the dense representation allows.
  static IntSet from_elements(std::span<const Int> xs) {
    if (xs.empty()) throw std::invalid_argument("IntSet must be nonempty");
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    const Int diam = detail::checked_sub(*hi, *lo);
    if (diam > detail::kMaxDiameter) throw std::range_error("IntSet diameter exceeds supported range");
    detail::Words w(detail::words_for(static_cast<std::size_t>(diam) + 1), 0);
    for (Int x : xs) detail::set_bit(detail::view(w), static_cast<std::size_t>(x - *lo));
    return IntSet(*lo, std::move(w));
  }

  IntSet(std::initializer_list<Int> xs) : IntSet(from_elements(std::span<const Int>(xs.begin(), xs.size()))) {}

  /// Bits relative to `min`; bit 0 must be set.
  static IntSet from_bits(Int min, detail::Words bits) {
    if (detail::none(detail::view(bits)) || !detail::test_bit(detail::view(bits), 0))
      throw std::invalid_argument("IntSet bit vector must have bit 0 set");
    return IntSet(min, std::move(bits));
  }

  Int min() const noexcept { return min_; }
  Int max() const noexcept { return max_; }
  Int diameter() const noexcept { return max_ - min_; }
  std::size_t size() const noexcept { return size_; }

  bool contains(Int x) const noexcept {
    if (x < min_ || x > max_) return false;
    return detail::test_bit(detail::view(bits_), static_cast<std::size_t>(x - min_));
  }

  template <typename F>
  void for_each(F&& f) const {
    detail::for_each_bit(detail::view(bits_), [&](std::size_t i) { f(min_ + static_cast<Int>(i)); });
  }

  std::vector<Int> elements() const {
    std::vector<Int> out;
    out.reserve(size_);
    for_each([&](Int x) { out.push_back(x); });
    return out;
  }

  std::span<const detail::Word> bits() const noexcept { return detail::view(bits_); }

  /// Number of bits in use: diameter + 1.
  std::size_t span_bits() const noexcept { return static_cast<std::size_t>(max_ - min_) + 1; }

  friend bool operator==(const IntSet& a, const IntSet& b) noexcept {
    return a.min_ == b.min_ && a.max_ == b.max_ && a.size_ == b.size_ &&
           std::equal(a.bits_.begin(), a.bits_.end(), b.bits_.begin(), b.bits_.end());
  }

  /// Lexicographic order on the ascending element sequences.
  friend std::strong_ordering operator<=>(const IntSet& a, const IntSet& b) {
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

 private:
  IntSet(Int min, detail::Words bits) : min_(min), bits_(std::move(bits)) {
    const std::size_t last = detail::last_bit(detail::view(bits_));
    max_ = min_ + static_cast<Int>(last);
    bits_.resize(detail::words_for(last + 1));
    size_ = detail::popcount(detail::view(bits_));
  }

  Int min_ = 0;
  Int max_ = 0;
  std::size_t size_ = 0;
  detail::Words bits_;
};

inline std::ostream& operator<<(std::ostream& os, const IntSet& s) {
  os << '{';
  bool first = true;
  s.for_each([&](Int x) {
    if (!first) os << ',';
    os << x;
    first = false;
  });
  return os << '}';
}

/// {start, start + diff, ..., start + (len - 1) diff}. A length-one
/// progression carries diff 1.
struct ArithProgression {
  Int start = 0;
  Int diff = 1;
  Int len = 1;

  Int last() const { return detail::checked_add(start, detail::checked_mul(diff, len - 1)); }

  bool contains(Int x) const noexcept {
    if (x < start) return false;
    const Int off = x - start;
    return off % diff == 0 && off / diff < len;
  }

  bool contains(const IntSet& s) const {
    bool ok = true;
    s.for_each([&](Int x) { ok = ok && contains(x); });
    return ok;
  }

  IntSet to_set() const {
    std::vector<Int> xs;
    xs.reserve(static_cast<std::size_t>(len));
    for (Int i = 0; i < len; ++i) xs.push_back(start + i * diff);
    return IntSet::from_elements(xs);
  }

  friend bool operator==(const ArithProgression&, const ArithProgression&) = default;
};

/// {a + b : a in A, b in B}.
inline IntSet sumset(const IntSet& a, const IntSet& b) {
  const Int lo = detail::checked_add(a.min(), b.min());
  detail::checked_add(a.max(), b.max());
  const std::size_t bits = a.span_bits() + b.span_bits() - 1;
  if (bits - 1 > static_cast<std::size_t>(detail::kMaxDiameter))
    throw std::range_error("sumset diameter exceeds supported range");
  // Iterate the sparser operand, shift the other.
  const IntSet& iter = a.size() <= b.size() ? a : b;
  const IntSet& shifted = a.size() <= b.size() ? b : a;
  detail::Words out(detail::words_for(bits), 0);
  detail::for_each_bit(iter.bits(), [&](std::size_t i) { detail::or_shift_left(detail::view(out), shifted.bits(), i); });
  return IntSet::from_bits(lo, std::move(out));
}

inline IntSet translate(const IntSet& a, Int t) {
  const Int lo = detail::checked_add(a.min(), t);
  detail::checked_add(a.max(), t);
  return IntSet::from_bits(lo, detail::Words(a.bits().begin(), a.bits().end()));
}

/// [x, y]_d = {xd, (x+1)d, ..., yd}.
inline IntSet interval_d(Int x, Int y, Int d) {
  if (x > y) throw std::invalid_argument("interval_d requires x <= y");
  if (d <= 0) throw std::invalid_argument("interval_d requires a positive difference");
  const Int lo = detail::checked_mul(x, d);
  const Int hi = detail::checked_mul(y, d);
  if (detail::checked_sub(hi, lo) > detail::kMaxDiameter) throw std::range_error("interval_d exceeds supported range");
  detail::Words w(detail::words_for(static_cast<std::size_t>(hi - lo) + 1), 0);
  for (Int v = lo; v <= hi; v += d) detail::set_bit(detail::view(w), static_cast<std::size_t>(v - lo));
  return IntSet::from_bits(lo, std::move(w));
}

/// gcd(X - X); zero exactly for singletons.
inline Int gcd_star(const IntSet& s) {
  Int g = 0;
  const Int lo = s.min();
  s.for_each([&](Int x) { g = std::gcd(g, x - lo); });
  return g;
}

/// k . A = {kx : x in A}; k = 0 is rejected.
inline IntSet dilate(Int k, const IntSet& a) {
  if (k == 0) throw std::invalid_argument("dilate requires a nonzero factor");
  std::vector<Int> xs;
  xs.reserve(a.size());
  a.for_each([&](Int x) { xs.push_back(detail::checked_mul(k, x)); });
  return IntSet::from_elements(xs);
}

/// Exact division of every element by `d` (which must divide them all); the
/// inverse of dilate(d, .).
inline IntSet div_exact(Int d, const IntSet& a) {
  if (d == 0) throw std::invalid_argument("div_exact requires a nonzero divisor");
  std::vector<Int> xs;
  xs.reserve(a.size());
  a.for_each([&](Int x) {
    if (x % d != 0) throw std::invalid_argument("div_exact: element not divisible");
    xs.push_back(x / d);
  });
  return IntSet::from_elements(xs);
}

/// Shortest arithmetic progression containing `b`.
inline ArithProgression ap_cover(const IntSet& b) {
  if (b.size() == 1) return {b.min(), 1, 1};
  const Int d = gcd_star(b);
  return {b.min(), d, b.diameter() / d + 1};
}

/// Cover of `x` by a progression of a prescribed difference `d` (which must
/// divide every difference of x).
inline ArithProgression ap_cover_with_difference(const IntSet& x, Int d) {
  if (d <= 0) throw std::invalid_argument("progression difference must be positive");
  if (x.diameter() % d != 0 || gcd_star(x) % d != 0)
    throw std::invalid_argument("difference does not divide the set's affine gcd");
  return {x.min(), d, x.diameter() / d + 1};
}

/// |A + B| - |A| - |B|.
inline Int doubling_r(const IntSet& a, const IntSet& b) {
  return static_cast<Int>(sumset(a, b).size()) - static_cast<Int>(a.size()) - static_cast<Int>(b.size());
}

/// Undo record for normalize_pair/canonical_pair. A normalized element x'
/// maps back to shift + scale * (reflected ? reflect_about - x' : x').
struct AffineRecord {
  Int shift_a = 0;
  Int shift_b = 0;
  Int scale = 1;
  bool reflected = false;
  Int reflect_a = 0;
  Int reflect_b = 0;

  friend bool operator==(const AffineRecord&, const AffineRecord&) = default;
};

struct NormalizedPair {
  IntSet a;
  IntSet b;
  AffineRecord record;
};

/// Translates so min A = min B = 0 and divides by the joint affine gcd.
inline NormalizedPair normalize_pair(const IntSet& a, const IntSet& b) {
  Int g = std::gcd(gcd_star(a), gcd_star(b));
  if (g == 0) g = 1;
  std::vector<Int> xs;
  a.for_each([&](Int x) { xs.push_back((x - a.min()) / g); });
  std::vector<Int> ys;
  b.for_each([&](Int y) { ys.push_back((y - b.min()) / g); });
  AffineRecord rec{a.min(), b.min(), g, false, 0, 0};
  return {IntSet::from_elements(xs), IntSet::from_elements(ys), rec};
}

/// (max A - A, max B - B); min stays at zero when the input is normalized.
inline std::pair<IntSet, IntSet> reflect_pair(const IntSet& a, const IntSet& b) {
  return {translate(dilate(-1, a), a.max()), translate(dilate(-1, b), b.max())};
}

/// normalize_pair followed by the lexicographically smaller of the pair and
/// its reflection (pairs compare by A first, then B).
inline NormalizedPair canonical_pair(const IntSet& a, const IntSet& b) {
  NormalizedPair n = normalize_pair(a, b);
  auto [ra, rb] = reflect_pair(n.a, n.b);
  const auto cmp_a = ra <=> n.a;
  if (cmp_a < 0 || (cmp_a == 0 && (rb <=> n.b) < 0)) {
    n.record.reflected = true;
    n.record.reflect_a = n.a.max();
    n.record.reflect_b = n.b.max();
    n.a = std::move(ra);
    n.b = std::move(rb);
  }
  return n;
}

/// Maps a normalized pair back through its record.
inline std::pair<IntSet, IntSet> restore_pair(const IntSet& a, const IntSet& b, const AffineRecord& rec) {
  auto back = [&](const IntSet& s, Int shift, Int about) {
    std::vector<Int> xs;
    s.for_each([&](Int x) {
      const Int y = rec.reflected ? about - x : x;
      xs.push_back(detail::checked_add(shift, detail::checked_mul(rec.scale, y)));
    });
    return IntSet::from_elements(xs);
  };
  return {back(a, rec.shift_a, rec.reflect_a), back(b, rec.shift_b, rec.reflect_b)};
}

}  // namespace sumsetlab
