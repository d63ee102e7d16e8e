#pragma once

// Certificates for the single-set 3k-4 bound, the classical 3k-4 theorem
// and its s-free corollary, plus generators for the four extremal families.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/intset.hpp"

namespace sumsetlab {

enum class Verdict { Pass, Fail, Vacuous };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Vacuous: return "VACUOUS";
  }
  return "FAIL";
}

inline Verdict verdict_from_string(std::string_view s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "VACUOUS") return Verdict::Vacuous;
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

/// Outcome of checking |P_B| <= |B| + r + 1 for one pair. FAIL only when the
/// hypothesis is met and the shortest cover of B is too long.
struct Certificate {
  IntSet a{0};
  IntSet b{0};
  Int sumset_size = 0;
  Int r = 0;
  std::optional<Int> s;
  std::optional<Rational> threshold;
  bool hypothesis_met = false;
  ArithProgression cover;
  Int cover_bound = 0;
  Verdict verdict = Verdict::Vacuous;
  std::string note;
};

inline Certificate verify_main_sized(const IntSet& a, const IntSet& b, Int sum) {
  Certificate c;
  c.a = a;
  c.b = b;
  c.sumset_size = sum;
  c.r = sum - static_cast<Int>(a.size()) - static_cast<Int>(b.size());
  c.cover = ap_cover(b);
  c.cover_bound = static_cast<Int>(b.size()) + c.r + 1;
  if (b.size() < 3) {
    c.verdict = Verdict::Vacuous;
    c.note = "|B| < 3: B is its own progression";
    return c;
  }
  const HypothesisReport h = hypothesis_from_sizes(static_cast<Int>(a.size()), static_cast<Int>(b.size()), sum);
  c.s = h.s;
  c.threshold = h.threshold;
  c.hypothesis_met = h.holds;
  if (!h.holds) {
    c.verdict = Verdict::Vacuous;
    return c;
  }
  c.verdict = c.cover.len <= c.cover_bound ? Verdict::Pass : Verdict::Fail;
  return c;
}

/// Checks the single-set bound: if |A+B| is below the s-threshold then the
/// shortest progression containing B has at most |B| + r + 1 terms.
inline Certificate verify_main(const IntSet& a, const IntSet& b) {
  return verify_main_sized(a, b, static_cast<Int>(sumset(a, b).size()));
}

/// Longest run x, x + d, ..., inside S (d >= 1).
inline Int longest_progression_run(const IntSet& s, Int d) {
  Int best = 0;
  s.for_each([&](Int x) {
    if (s.contains(x - d)) return;
    Int len = 0;
    for (Int y = x; y <= s.max() && s.contains(y); y += d) ++len;
    best = std::max(best, len);
  });
  return best;
}

struct Certificate3k4 {
  IntSet a{0};
  IntSet b{0};
  Int sumset_size = 0;
  Int r = 0;
  Int delta = 0;
  bool hypothesis_met = false;
  Int difference = 1;  // gcd*(A+B)
  ArithProgression cover_a;
  ArithProgression cover_b;
  Int longest_run = 0;
  bool cover_a_ok = false;
  bool cover_b_ok = false;
  bool run_ok = false;
  Verdict verdict = Verdict::Vacuous;
};

/// B is a translate of A.
inline bool are_translates(const IntSet& a, const IntSet& b) {
  return a.size() == b.size() && a.diameter() == b.diameter() && translate(a, -a.min()) == translate(b, -b.min());
}

/// The classical 3k-4 theorem: under |A+B| <= |A|+|B|+min(|A|,|B|)-3-delta,
/// covers of difference gcd*(A+B) have at most |A|+r+1 and |B|+r+1 terms and
/// A+B holds a progression of that difference with |A|+|B|-1 terms.
inline Certificate3k4 verify_classic_3k4(const IntSet& a, const IntSet& b) {
  const IntSet s = sumset(a, b);
  Certificate3k4 c;
  c.a = a;
  c.b = b;
  const auto na = static_cast<Int>(a.size());
  const auto nb = static_cast<Int>(b.size());
  c.sumset_size = static_cast<Int>(s.size());
  c.r = c.sumset_size - na - nb;
  c.delta = are_translates(a, b) ? 1 : 0;
  c.hypothesis_met = c.r <= std::min(na, nb) - 3 - c.delta;
  Int d = gcd_star(s);
  if (d == 0) d = 1;
  c.difference = d;
  c.cover_a = ap_cover_with_difference(a, d);
  c.cover_b = ap_cover_with_difference(b, d);
  c.longest_run = longest_progression_run(s, d);
  c.cover_a_ok = c.cover_a.len <= na + c.r + 1;
  c.cover_b_ok = c.cover_b.len <= nb + c.r + 1;
  c.run_ok = c.longest_run >= na + nb - 1;
  if (!c.hypothesis_met) {
    c.verdict = Verdict::Vacuous;
  } else {
    c.verdict = c.cover_a_ok && c.cover_b_ok && c.run_ok ? Verdict::Pass : Verdict::Fail;
  }
  return c;
}

/// The s-free corollary. For |B| <= 2 the conclusion holds with P_B = B; for
/// larger B the radical-free hypothesis is decided and, when met, both the
/// conclusion and the implication to the s-threshold hypothesis are checked.
struct CorollaryCertificate {
  IntSet a{0};
  IntSet b{0};
  Int sumset_size = 0;
  Int r = 0;
  bool hypothesis_met = false;
  bool theorem_hypothesis_met = false;
  ArithProgression cover;
  Int cover_bound = 0;
  Verdict verdict = Verdict::Vacuous;
  std::string note;
};

inline CorollaryCertificate verify_corollary_sized(const IntSet& a, const IntSet& b, Int sum) {
  CorollaryCertificate c;
  c.a = a;
  c.b = b;
  c.sumset_size = sum;
  c.r = sum - static_cast<Int>(a.size()) - static_cast<Int>(b.size());
  c.cover = ap_cover(b);
  c.cover_bound = static_cast<Int>(b.size()) + c.r + 1;
  if (b.size() <= 2) {
    c.note = "|B| <= 2: B is its own progression";
    c.verdict = c.cover.len <= c.cover_bound ? Verdict::Pass : Verdict::Fail;
    return c;
  }
  const auto na = static_cast<Int>(a.size());
  const auto nb = static_cast<Int>(b.size());
  c.hypothesis_met = corollary_hypothesis_from_sizes(na, nb, sum);
  c.theorem_hypothesis_met = hypothesis_from_sizes(na, nb, sum).holds;
  if (!c.hypothesis_met) {
    c.verdict = Verdict::Vacuous;
    return c;
  }
  if (!c.theorem_hypothesis_met) {
    c.note = "corollary hypothesis holds but the s-threshold hypothesis does not";
    c.verdict = Verdict::Fail;
    return c;
  }
  c.verdict = c.cover.len <= c.cover_bound ? Verdict::Pass : Verdict::Fail;
  return c;
}

inline CorollaryCertificate verify_corollary(const IntSet& a, const IntSet& b) {
  return verify_corollary_sized(a, b, static_cast<Int>(sumset(a, b).size()));
}

// ---------------------------------------------------------------------------
// Extremal families
// ---------------------------------------------------------------------------

enum class FamilyName { A, B, C, D };

inline std::string_view to_string(FamilyName f) {
  switch (f) {
    case FamilyName::A: return "a";
    case FamilyName::B: return "b";
    case FamilyName::C: return "c";
    case FamilyName::D: return "d";
  }
  return "?";
}

inline FamilyName family_from_string(std::string_view s) {
  if (s == "a") return FamilyName::A;
  if (s == "b") return FamilyName::B;
  if (s == "c") return FamilyName::C;
  if (s == "d") return FamilyName::D;
  throw std::invalid_argument("unknown family: " + std::string(s));
}

/// Family parameters; which fields matter depends on the family.
///   a: size_a, size_b, r
///   b: size_a, optional size_b (absent: B = A), n
///   c: size_a, size_b, s, n
///   d: size_a, size_b, r
struct FamilyParams {
  Int size_a = 0;
  Int size_b = 0;
  Int r = 0;
  Int s = 1;
  std::optional<Int> n;
  bool b_equals_a = false;
};

/// A generated pair with the numbers the family is known to realise.
struct FamilyInstance {
  FamilyName name = FamilyName::A;
  FamilyParams params;
  IntSet a{0};
  IntSet b{0};
  /// Separation used for "N large"; zero when the family has none.
  Int n_used = 0;
  Int n_safe_bound = 0;
  Int expected_sumset_size = 0;
  std::optional<Int> expected_cover_a;
  std::optional<Int> expected_cover_b;
  std::optional<Int> expected_run;
  /// Expected s-threshold hypothesis verdict, when the family pins it.
  std::optional<bool> expected_hypothesis;
  std::string claim;
};

namespace detail {

inline IntSet int_range(Int lo, Int hi) { return interval_d(lo, hi, 1); }

inline IntSet set_union(const IntSet& x, const IntSet& y) {
  auto xs = x.elements();
  const auto ys = y.elements();
  xs.insert(xs.end(), ys.begin(), ys.end());
  return IntSet::from_elements(xs);
}

// [0, r]_2 ∪ [2r + 2, size + r]; r = -1 gives [0, size - 1].
inline IntSet gapped_interval(Int size, Int r) {
  const IntSet tail = int_range(2 * r + 2, size + r);
  if (r < 0) return tail;
  return set_union(interval_d(0, r, 2), tail);
}

}  // namespace detail

/// Builds one extremal example. Throws std::invalid_argument on parameters
/// outside the family's range.
inline FamilyInstance family(FamilyName name, const FamilyParams& p) {
  FamilyInstance f;
  f.name = name;
  f.params = p;
  switch (name) {
    case FamilyName::A: {
      // A = [0,r]_2 ∪ [2r+2, |A|+r], B likewise: all three 3k-4 bounds tight.
      if (p.size_a < 2 || p.size_b < 2) throw std::invalid_argument("family a: sizes must be at least 2");
      if (p.r < -1 || p.r > std::min(p.size_a, p.size_b) - 3)
        throw std::invalid_argument("family a: need -1 <= r <= min(|A|,|B|) - 3");
      f.a = detail::gapped_interval(p.size_a, p.r);
      f.b = detail::gapped_interval(p.size_b, p.r);
      f.expected_sumset_size = p.size_a + p.size_b + p.r;
      f.expected_cover_a = p.size_a + p.r + 1;
      f.expected_cover_b = p.size_b + p.r + 1;
      f.expected_run = p.size_a + p.size_b - 1;
      f.claim = "classic 3k-4 bounds hold with equality simultaneously";
      break;
    }
    case FamilyName::B: {
      // A = [0,|A|-2] ∪ {N}; B = A or B = [0,|B|-1] with |A| >= |B|.
      if (p.size_a < 3) throw std::invalid_argument("family b: |A| must be at least 3");
      const bool same = p.b_equals_a;
      if (!same && (p.size_b < 1 || p.size_b > p.size_a))
        throw std::invalid_argument("family b: need 1 <= |B| <= |A|");
      const Int nb = same ? p.size_a : p.size_b;
      f.n_safe_bound = 2 * p.size_a;
      f.n_used = p.n.value_or(4 * p.size_a + 10);
      if (f.n_used <= f.n_safe_bound) throw std::invalid_argument("family b: N must exceed " + std::to_string(f.n_safe_bound));
      f.a = detail::set_union(detail::int_range(0, p.size_a - 2), IntSet{f.n_used});
      f.b = same ? f.a : detail::int_range(0, nb - 1);
      const Int delta = same ? 1 : 0;
      f.expected_sumset_size = p.size_a + nb + std::min(p.size_a, nb) - 3 - delta + 1;
      f.expected_cover_a = f.n_used + 1;
      f.claim = "one above the 3k-4 hypothesis with |P_A| unbounded in N";
      break;
    }
    case FamilyName::C: {
      // B = [0,|B|/2-1] ∪ (N + [0,|B|/2-1]); A = s blocks of |A|/s spaced N.
      if (p.size_b < 4 || p.size_b % 2 != 0) throw std::invalid_argument("family c: |B| must be even and >= 4");
      if (p.s < 1 || p.size_a < p.s || p.size_a % p.s != 0) throw std::invalid_argument("family c: s must divide |A|");
      const Int block_a = p.size_a / p.s;
      const Int block_b = p.size_b / 2;
      // Block sums span block_a + block_b - 1 integers; N beyond that keeps
      // the s + 1 sum blocks disjoint.
      f.n_safe_bound = block_a + block_b - 1;
      const Rational thr = threshold_at(p.size_a, p.size_b, p.s);
      const BigInt thr_ceil = (numerator(thr) + denominator(thr) - 1) / denominator(thr);
      f.n_used = p.n.value_or(p.size_a + p.size_b + thr_ceil.convert_to<Int>() + 1);
      if (f.n_used <= f.n_safe_bound) throw std::invalid_argument("family c: N must exceed " + std::to_string(f.n_safe_bound));
      f.b = detail::set_union(detail::int_range(0, block_b - 1), detail::int_range(f.n_used, f.n_used + block_b - 1));
      IntSet a = detail::int_range(0, block_a - 1);
      for (Int i = 1; i < p.s; ++i)
        a = detail::set_union(a, detail::int_range(i * f.n_used, i * f.n_used + block_a - 1));
      f.a = a;
      f.expected_sumset_size = (block_a + block_b - 1) * (p.s + 1);
      f.expected_hypothesis = false;
      f.claim = "|A+B| equals (|A|/s + |B|/2 - 1)(s + 1), so the strict hypothesis fails";
      break;
    }
    case FamilyName::D: {
      // B = [0,|B|-2] ∪ {|B|+r}, A = [0,|A|-1]: |P_B| = |B| + r + 1 exactly.
      if (p.size_b < 3) throw std::invalid_argument("family d: |B| must be at least 3");
      if (p.r < -1 || p.r > p.size_a - 2) throw std::invalid_argument("family d: need -1 <= r <= |A| - 2");
      f.b = detail::set_union(detail::int_range(0, p.size_b - 2), IntSet{p.size_b + p.r});
      f.a = detail::int_range(0, p.size_a - 1);
      f.expected_sumset_size = p.size_a + p.size_b + p.r;
      f.expected_cover_b = p.size_b + p.r + 1;
      f.claim = "shortest cover of B has exactly |B| + r + 1 terms";
      break;
    }
  }
  return f;
}

/// What a family instance actually does, compared with what it should.
struct FamilyCheck {
  bool ok = false;
  Int sumset_size = 0;
  Int r = 0;
  Int cover_a = 0;
  Int cover_b = 0;
  Int run = 0;
  std::optional<bool> hypothesis;
  Verdict main_verdict = Verdict::Vacuous;
  Verdict classic_verdict = Verdict::Vacuous;
  std::string detail;
};

inline FamilyCheck check_family(const FamilyInstance& f) {
  FamilyCheck c;
  const Certificate3k4 classic = verify_classic_3k4(f.a, f.b);
  const Certificate main = verify_main(f.a, f.b);
  c.sumset_size = classic.sumset_size;
  c.r = classic.r;
  c.cover_a = classic.cover_a.len;
  c.cover_b = classic.cover_b.len;
  c.run = classic.longest_run;
  c.main_verdict = main.verdict;
  c.classic_verdict = classic.verdict;
  if (f.b.size() >= 3) c.hypothesis = main.hypothesis_met;
  std::string why;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond) why += (why.empty() ? "" : "; ") + what;
  };
  expect(c.sumset_size == f.expected_sumset_size, "sumset size");
  switch (f.name) {
    case FamilyName::A:
      expect(c.cover_a == *f.expected_cover_a, "|P_A|");
      expect(c.cover_b == *f.expected_cover_b, "|P_B|");
      expect(c.run == *f.expected_run, "|P_C|");
      expect(classic.verdict != Verdict::Fail, "classic verdict");
      break;
    case FamilyName::B:
      expect(!classic.hypothesis_met, "classic hypothesis should fail by one");
      expect(ap_cover(f.a).len == *f.expected_cover_a, "|P_A|");
      expect(ap_cover(f.a).len > static_cast<Int>(f.a.size()) + c.r + 1, "|P_A| exceeds |A| + r + 1");
      break;
    case FamilyName::C:
      expect(c.hypothesis.has_value() && *c.hypothesis == false, "hypothesis should fail");
      break;
    case FamilyName::D:
      expect(ap_cover(f.b).len == *f.expected_cover_b, "|P_B|");
      expect(main.verdict != Verdict::Fail, "main verdict");
      break;
  }
  c.ok = why.empty();
  c.detail = why;
  return c;
}

/// Parameter grid used by the families scan.
inline std::vector<std::pair<FamilyName, FamilyParams>> family_grid() {
  std::vector<std::pair<FamilyName, FamilyParams>> out;
  for (Int b = 3; b <= 10; ++b)
    for (Int r = 0; r <= b - 2; ++r)
      for (Int a = b; a <= 20; ++a) out.push_back({FamilyName::D, {a, b, r, 1, std::nullopt, false}});
  for (Int b = 4; b <= 10; b += 2)
    for (Int s = 1; s <= 3; ++s)
      for (Int a = s; a <= 24; a += s) out.push_back({FamilyName::C, {a, b, 0, s, std::nullopt, false}});
  for (Int a = 3; a <= 10; ++a)
    for (Int b = 3; b <= 10; ++b)
      for (Int r = -1; r <= std::min(a, b) - 3; ++r) out.push_back({FamilyName::A, {a, b, r, 1, std::nullopt, false}});
  for (Int a = 3; a <= 10; ++a) {
    out.push_back({FamilyName::B, {a, 0, 0, 1, std::nullopt, true}});
    for (Int b = 1; b <= a; ++b) out.push_back({FamilyName::B, {a, b, 0, 1, std::nullopt, false}});
  }
  return out;
}

}  // namespace sumsetlab
