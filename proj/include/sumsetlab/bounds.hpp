#pragma once

// Scalar thresholds of the single-set 3k-4 bound, all decided in exact
// arithmetic. The bucket parameter s satisfies
//
//   (s-1) s (b/2 - 1) + s - 1 < a <= s (s+1) (b/2 - 1) + s,
//
// and the threshold is (a/s + b/2 - 1)(s + 1). Multiplying through by 2
// keeps every comparison in integers.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumsetlab/intset.hpp"

namespace sumsetlab {

/// Reduced fraction with positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

using Wide = __int128;

// 2 * lower(s) and 2 * upper(s) for the bucket inequality.
inline Wide twice_lower(Wide s, Wide b) { return (s - 1) * s * (b - 2) + 2 * (s - 1); }
inline Wide twice_upper(Wide s, Wide b) { return s * (s + 1) * (b - 2) + 2 * s; }

inline bool in_bucket(Wide s, Wide a, Wide b) { return twice_lower(s, b) < 2 * a && 2 * a <= twice_upper(s, b); }

inline Int ceil_div(Wide num, Wide den) {
  Wide q = num / den;
  if (q * den < num) ++q;
  return static_cast<Int>(q);
}

}  // namespace detail

/// The unique s >= 1 whose bucket contains a. Requires a >= 1, b >= 3.
inline Int compute_s(Int a, Int b) {
  if (b < 3) throw std::invalid_argument("compute_s requires b >= 3");
  if (a < 1) throw std::invalid_argument("compute_s requires a >= 1");
  // upper(s) ~ s^2 (b/2 - 1); start just below the estimate and walk.
  const double est = std::sqrt(2.0 * static_cast<double>(a) / static_cast<double>(b - 2));
  detail::Wide s = std::max<detail::Wide>(1, static_cast<detail::Wide>(est) - 2);
  while (s > 1 && detail::twice_lower(s, b) >= 2 * static_cast<detail::Wide>(a)) --s;
  while (detail::twice_upper(s, b) < 2 * static_cast<detail::Wide>(a)) ++s;
  if (!detail::in_bucket(s, a, b) || (s > 1 && detail::in_bucket(s - 1, a, b)) || detail::in_bucket(s + 1, a, b))
    throw std::logic_error("compute_s: bucket is not unique");
  return static_cast<Int>(s);
}

/// (a/s + b/2 - 1)(s + 1) = (2a + s(b - 2))(s + 1) / (2s).
inline Rational theorem_threshold(Int a, Int b, Int s) {
  if (s != compute_s(a, b)) throw std::invalid_argument("theorem_threshold: s does not match compute_s(a, b)");
  return Rational(BigInt(2 * static_cast<detail::Wide>(a) + static_cast<detail::Wide>(s) * (b - 2)) * (s + 1), BigInt(2) * s);
}

/// Threshold at an arbitrary positive s, without the bucket check.
inline Rational threshold_at(Int a, Int b, Int s) {
  if (s < 1) throw std::invalid_argument("threshold_at requires s >= 1");
  return Rational(BigInt(2 * static_cast<detail::Wide>(a) + static_cast<detail::Wide>(s) * (b - 2)) * (s + 1), BigInt(2) * s);
}

struct HypothesisReport {
  Int r = 0;
  Int s = 0;
  Rational threshold;
  bool holds = false;
};

/// |A+B| < (|A|/s + |B|/2 - 1)(s + 1), decided as
/// 2s|A+B| < (2|A| + s(|B| - 2))(s + 1).
inline HypothesisReport hypothesis_from_sizes(Int a, Int b, Int sum) {
  if (b < 3) throw std::invalid_argument("hypothesis_holds requires |B| >= 3");
  const Int s = compute_s(a, b);
  HypothesisReport h;
  h.r = sum - a - b;
  h.s = s;
  h.threshold = threshold_at(a, b, s);
  const detail::Wide lhs = 2 * static_cast<detail::Wide>(s) * sum;
  const detail::Wide rhs = (2 * static_cast<detail::Wide>(a) + static_cast<detail::Wide>(s) * (b - 2)) * (s + 1);
  h.holds = lhs < rhs;
  return h;
}

inline HypothesisReport hypothesis_holds(const IntSet& a, const IntSet& b) {
  return hypothesis_from_sizes(static_cast<Int>(a.size()), static_cast<Int>(b.size()),
                               static_cast<Int>(sumset(a, b).size()));
}

/// ceil((x/s + y/2 - 1)(s + 1)) with s = compute_s(x, y).
inline Int redcalc_closed_form(Int x, Int y) {
  const Int s = compute_s(x, y);
  return detail::ceil_div((2 * static_cast<detail::Wide>(x) + static_cast<detail::Wide>(s) * (y - 2)) * (s + 1),
                          2 * static_cast<detail::Wide>(s));
}

struct RedcalcMin {
  Int value = 0;
  Int m = 0;
  Int n = 0;
};

/// ceil((x/m + y/n - 1)(m + n - 1)).
inline Int redcalc_objective(Int x, Int y, Int m, Int n) {
  using detail::Wide;
  return detail::ceil_div((static_cast<Wide>(x) * n + static_cast<Wide>(y) * m - static_cast<Wide>(m) * n) * (m + n - 1),
                          static_cast<Wide>(m) * n);
}

/// Minimum of redcalc_objective over 1 <= m <= x, 2 <= n <= y/3 + 1, by full
/// scan; ties go to the lexicographically smallest (m, n).
inline RedcalcMin redcalc_brute_min(Int x, Int y) {
  if (x < 1 || y < 3) throw std::invalid_argument("redcalc_brute_min requires x >= 1, y >= 3");
  const Int n_max = (y + 3) / 3;  // n <= y/3 + 1
  RedcalcMin best{redcalc_objective(x, y, 1, 2), 1, 2};
  for (Int m = 1; m <= x; ++m)
    for (Int n = 2; n <= n_max; ++n) {
      const Int v = redcalc_objective(x, y, m, n);
      if (v < best.value) best = {v, m, n};
    }
  return best;
}

/// (x/s + y/2 - 1)(s + 1) >= x + y/2 - 1 + 2 sqrt(x (y/2 - 1)) for rationals
/// x, s > 0 and y > 2. Both sides share x + y/2 - 1, leaving
/// L = x/s + s(y/2 - 1) > 0 against 2 sqrt(x(y/2 - 1)); with L positive the
/// comparison squares to L^2 >= 4 x (y/2 - 1).
inline bool rough_estimate_holds(const Rational& x, const Rational& y, const Rational& s) {
  if (x <= 0 || s <= 0 || y <= 2) throw std::invalid_argument("rough_estimate_holds requires x, s > 0 and y > 2");
  const Rational half_gap = y / 2 - 1;
  const Rational l = x / s + s * half_gap;
  return l * l >= 4 * x * half_gap;
}

/// True exactly when the rough estimate is an equality, 2x = (y - 2) s^2.
inline bool rough_estimate_is_tight(const Rational& x, const Rational& y, const Rational& s) {
  return 2 * x == (y - 2) * s * s;
}

/// |A+B| < |A| + |B|/2 - 1 + 2 sqrt(|A|(|B|/2 - 1)), radical-free. With
/// T = |A+B| - |A| - |B|/2 + 1 the inequality is T < 2 sqrt(R); negative T
/// wins outright, otherwise compare T^2 < 4R. Doubled: T2 = 2T, 4R*4 =
/// 8|A|(|B| - 2).
inline bool corollary_hypothesis_from_sizes(Int a, Int b, Int sum) {
  if (b < 3) throw std::invalid_argument("corollary_hypothesis_holds requires |B| >= 3");
  const detail::Wide t2 = 2 * static_cast<detail::Wide>(sum) - 2 * static_cast<detail::Wide>(a) - b + 2;
  if (t2 < 0) return true;
  return t2 * t2 < 8 * static_cast<detail::Wide>(a) * (b - 2);
}

inline bool corollary_hypothesis_holds(const IntSet& a, const IntSet& b) {
  return corollary_hypothesis_from_sizes(static_cast<Int>(a.size()), static_cast<Int>(b.size()),
                                         static_cast<Int>(sumset(a, b).size()));
}

/// Bucket and thresholds for a size pair. The corollary's irrational bound
/// x + y/2 - 1 + 2 sqrt(x (y/2 - 1)) is stored as
/// corollary_rational + sqrt(corollary_radicand), radicand = 2x(y - 2).
struct ThresholdReport {
  Int a = 0;
  Int b = 0;
  Int s = 0;
  Rational bucket_lower;
  Rational bucket_upper;
  Rational theorem_threshold;
  Rational corollary_rational;
  Rational corollary_radicand;
};

inline ThresholdReport threshold_report(Int a, Int b) {
  ThresholdReport t;
  t.a = a;
  t.b = b;
  t.s = compute_s(a, b);
  t.bucket_lower = Rational(BigInt(detail::twice_lower(t.s, b)), 2);
  t.bucket_upper = Rational(BigInt(detail::twice_upper(t.s, b)), 2);
  t.theorem_threshold = theorem_threshold(a, b, t.s);
  t.corollary_rational = Rational(BigInt(2 * a + b - 2), 2);
  t.corollary_radicand = Rational(BigInt(2) * a * (b - 2));
  return t;
}

}  // namespace sumsetlab
