#pragma once

// Subsets of Z/nZ: sumsets, stabilizers, quotients, Kneser's bound,
// unique-expression elements, the Kemperman elementary pair types and a
// desk-scale search for witnesses of the dual Kemperman structure theorem.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumsetlab/detail/bits.hpp"
#include "sumsetlab/intset.hpp"

namespace sumsetlab {

/// A subset of Z/nZ. Unlike IntSet it may be empty.
class CyclicSet {
 public:
  explicit CyclicSet(Int modulus) : n_(modulus) {
    if (modulus < 1) throw std::invalid_argument("modulus must be at least 1");
    bits_.assign(detail::words_for(static_cast<std::size_t>(n_)), 0);
  }

  /// Members must already lie in [0, n - 1].
  CyclicSet(Int modulus, std::span<const Int> members) : CyclicSet(modulus) {
    for (Int x : members) insert(x);
  }

  CyclicSet(Int modulus, std::initializer_list<Int> members)
      : CyclicSet(modulus, std::span<const Int>(members.begin(), members.size())) {}

  /// phi_n(A): the residues of an integer set.
  static CyclicSet reduce(const IntSet& a, Int modulus) {
    CyclicSet out(modulus);
    a.for_each([&](Int x) { out.insert_unchecked(((x % modulus) + modulus) % modulus); });
    return out;
  }

  static CyclicSet full(Int modulus) {
    CyclicSet out(modulus);
    for (auto& w : out.bits_) w = ~detail::Word{0};
    out.trim();
    return out;
  }

  /// Multiples of g in Z/nZ (g must divide n).
  static CyclicSet multiples(Int modulus, Int g) {
    CyclicSet out(modulus);
    for (Int x = 0; x < modulus; x += g) out.insert_unchecked(x);
    return out;
  }

  Int modulus() const noexcept { return n_; }
  std::size_t size() const noexcept { return detail::popcount(detail::view(bits_)); }
  bool empty() const noexcept { return detail::none(detail::view(bits_)); }

  bool contains(Int x) const noexcept {
    return x >= 0 && x < n_ && detail::test_bit(detail::view(bits_), static_cast<std::size_t>(x));
  }

  void insert(Int x) {
    if (x < 0 || x >= n_) throw std::out_of_range("cyclic member outside [0, n-1]");
    insert_unchecked(x);
  }

  void erase(Int x) {
    if (contains(x)) detail::clear_bit(detail::view(bits_), static_cast<std::size_t>(x));
  }

  template <typename F>
  void for_each(F&& f) const {
    detail::for_each_bit(detail::view(bits_), [&](std::size_t i) { f(static_cast<Int>(i)); });
  }

  std::vector<Int> members() const {
    std::vector<Int> out;
    for_each([&](Int x) { out.push_back(x); });
    return out;
  }

  /// Smallest member; requires nonempty.
  Int first() const {
    if (empty()) throw std::invalid_argument("empty cyclic set has no first element");
    return static_cast<Int>(detail::first_bit(detail::view(bits_)));
  }

  /// X + t.
  CyclicSet shifted(Int t) const {
    CyclicSet out(n_);
    const auto s = static_cast<std::size_t>(((t % n_) + n_) % n_);
    detail::or_rotate(detail::view(out.bits_), detail::view(bits_), s, static_cast<std::size_t>(n_));
    return out;
  }

  /// -X.
  CyclicSet negated() const {
    CyclicSet out(n_);
    for_each([&](Int x) { out.insert_unchecked(x == 0 ? 0 : n_ - x); });
    return out;
  }

  CyclicSet complement() const {
    CyclicSet out = full(n_);
    for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] &= ~bits_[k];
    return out;
  }

  std::span<const detail::Word> bits() const noexcept { return detail::view(bits_); }
  std::span<detail::Word> bits_mut() noexcept { return detail::view(bits_); }

  friend bool operator==(const CyclicSet& a, const CyclicSet& b) noexcept {
    return a.n_ == b.n_ && std::equal(a.bits_.begin(), a.bits_.end(), b.bits_.begin(), b.bits_.end());
  }

  friend CyclicSet operator|(CyclicSet a, const CyclicSet& b) {
    a.require_same(b);
    for (std::size_t k = 0; k < a.bits_.size(); ++k) a.bits_[k] |= b.bits_[k];
    return a;
  }

  friend CyclicSet operator&(CyclicSet a, const CyclicSet& b) {
    a.require_same(b);
    for (std::size_t k = 0; k < a.bits_.size(); ++k) a.bits_[k] &= b.bits_[k];
    return a;
  }

  /// X \ Y.
  friend CyclicSet operator-(CyclicSet a, const CyclicSet& b) {
    a.require_same(b);
    for (std::size_t k = 0; k < a.bits_.size(); ++k) a.bits_[k] &= ~b.bits_[k];
    return a;
  }

  bool is_subset_of(const CyclicSet& other) const {
    require_same(other);
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if ((bits_[k] & ~other.bits_[k]) != 0) return false;
    return true;
  }

  std::size_t intersection_size(const CyclicSet& other) const {
    require_same(other);
    std::size_t c = 0;
    for (std::size_t k = 0; k < bits_.size(); ++k) c += static_cast<std::size_t>(std::popcount(bits_[k] & other.bits_[k]));
    return c;
  }

  void require_same(const CyclicSet& other) const {
    if (n_ != other.n_) throw std::invalid_argument("cyclic sets have different moduli");
  }

 private:
  void insert_unchecked(Int x) { detail::set_bit(detail::view(bits_), static_cast<std::size_t>(x)); }

  void trim() {
    const std::size_t used = static_cast<std::size_t>(n_) - (bits_.size() - 1) * detail::kWordBits;
    bits_.back() &= detail::low_mask(used);
  }

  Int n_;
  detail::Words bits_;
};

inline std::ostream& operator<<(std::ostream& os, const CyclicSet& s) {
  os << "n: " << s.modulus() << "; {";
  bool first = true;
  s.for_each([&](Int x) {
    if (!first) os << ',';
    os << x;
    first = false;
  });
  return os << '}';
}

/// The subgroup of Z/nZ generated by a divisor g of n: {0, g, 2g, ...}.
struct Subgroup {
  Int modulus = 1;
  Int generator = 1;

  Subgroup() = default;
  Subgroup(Int n, Int g) : modulus(n), generator(g) {
    if (n < 1 || g < 1 || n % g != 0) throw std::invalid_argument("subgroup generator must be a positive divisor of n");
  }

  static Subgroup trivial(Int n) { return {n, n}; }
  static Subgroup whole(Int n) { return {n, 1}; }

  Int order() const noexcept { return modulus / generator; }
  /// |G/H|, also the modulus of the quotient group.
  Int index() const noexcept { return generator; }
  bool is_trivial() const noexcept { return generator == modulus; }

  CyclicSet members() const { return CyclicSet::multiples(modulus, generator); }
  /// The coset u + H.
  CyclicSet coset(Int u) const { return members().shifted(u); }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

inline std::vector<Int> divisors(Int n) {
  std::vector<Int> out;
  for (Int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// All subgroups of Z/nZ, ordered from the whole group down to the trivial one.
inline std::vector<Subgroup> subgroups(Int n) {
  std::vector<Subgroup> out;
  for (Int g : divisors(n)) out.emplace_back(n, g);
  return out;
}

/// {x + y mod n}.
inline CyclicSet sumset(const CyclicSet& x, const CyclicSet& y) {
  x.require_same(y);
  const Int n = x.modulus();
  CyclicSet out(n);
  const CyclicSet& iter = x.size() <= y.size() ? x : y;
  const CyclicSet& rot = x.size() <= y.size() ? y : x;
  iter.for_each([&](Int a) {
    detail::or_rotate(out.bits_mut(), rot.bits(), static_cast<std::size_t>(a), static_cast<std::size_t>(n));
  });
  return out;
}

/// X + H.
inline CyclicSet add_subgroup(const CyclicSet& x, const Subgroup& h) {
  if (h.modulus != x.modulus()) throw std::invalid_argument("subgroup lives in a different group");
  if (h.is_trivial()) return x;
  return sumset(x, h.members());
}

/// H(X) = {g : g + X = X}; the trivial subgroup when X is aperiodic.
inline Subgroup stabilizer(const CyclicSet& x) {
  const Int n = x.modulus();
  if (x.empty()) return Subgroup::whole(n);
  for (Int g : divisors(n)) {
    if (g == n) break;
    if (x.shifted(g) == x) return {n, g};
  }
  return Subgroup::trivial(n);
}

inline bool is_periodic(const CyclicSet& x) { return !stabilizer(x).is_trivial(); }

/// phi_H(X) in G/H = Z/gZ.
inline CyclicSet quotient(const CyclicSet& x, const Subgroup& h) {
  if (h.modulus != x.modulus()) throw std::invalid_argument("subgroup lives in a different group");
  CyclicSet out(h.generator);
  x.for_each([&](Int v) { out.insert(v % h.generator); });
  return out;
}

/// Kneser's bound |X+Y| >= |X+H| + |Y+H| - |H| with H = H(X+Y).
///
/// rho = |(X+H) \ X| + |(Y+H) \ Y|, the standard holes count. Removing H
/// instead of Y from Y+H gives a different quantity.
struct KneserReport {
  Subgroup stabilizer;
  Int sumset_size = 0;
  Int rho = 0;
  Int bound = 0;
  bool holds = false;
};

inline KneserReport kneser_check(const CyclicSet& x, const CyclicSet& y) {
  x.require_same(y);
  if (x.empty() || y.empty()) throw std::invalid_argument("kneser_check needs nonempty sets");
  const CyclicSet s = sumset(x, y);
  const Subgroup h = stabilizer(s);
  const auto xh = static_cast<Int>(add_subgroup(x, h).size());
  const auto yh = static_cast<Int>(add_subgroup(y, h).size());
  KneserReport r;
  r.stabilizer = h;
  r.sumset_size = static_cast<Int>(s.size());
  r.rho = (xh - static_cast<Int>(x.size())) + (yh - static_cast<Int>(y.size()));
  r.bound = static_cast<Int>(x.size()) + static_cast<Int>(y.size()) - h.order() + r.rho;
  r.holds = r.sumset_size >= r.bound;
  return r;
}

/// Elements of X+Y with exactly one representation x + y.
inline CyclicSet unique_expression_elements(const CyclicSet& x, const CyclicSet& y) {
  x.require_same(y);
  const Int n = x.modulus();
  CyclicSet once(n);
  CyclicSet twice(n);
  x.for_each([&](Int a) {
    const CyclicSet r = y.shifted(a);
    for (std::size_t k = 0; k < r.bits().size(); ++k) {
      twice.bits_mut()[k] |= once.bits()[k] & r.bits()[k];
      once.bits_mut()[k] |= r.bits()[k];
    }
  });
  return once - twice;
}

/// True when X is {a, a + d, ..., a + (|X| - 1) d} for some a, with |X| < ord(d).
inline bool is_progression(const CyclicSet& x, Int d) {
  const Int n = x.modulus();
  const auto len = static_cast<Int>(x.size());
  if (len == 0) return false;
  d = ((d % n) + n) % n;
  const Int ord = n / std::gcd(n, d);
  if (len >= ord) return false;
  Int start = -1;
  int starts = 0;
  x.for_each([&](Int v) {
    if (!x.contains((v - d + n) % n)) {
      start = v;
      ++starts;
    }
  });
  if (starts != 1) return false;
  for (Int i = 0, v = start; i < len; ++i, v = (v + d) % n)
    if (!x.contains(v)) return false;
  return true;
}

enum class ElementaryTag { I, II, III, IV, None };

inline std::string_view to_string(ElementaryTag t) {
  switch (t) {
    case ElementaryTag::I: return "I";
    case ElementaryTag::II: return "II";
    case ElementaryTag::III: return "III";
    case ElementaryTag::IV: return "IV";
    case ElementaryTag::None: return "NONE";
  }
  return "NONE";
}

/// Classification verdict plus the data that certifies it. All witness
/// values are in the coordinates of the group the pair was given in.
struct ElementaryType {
  ElementaryTag tag = ElementaryTag::None;
  /// II: the common difference.
  Int difference = 0;
  /// III: the unique expression element a0 + b0 and its summands.
  Int unique_element = 0;
  Int a0 = 0;
  Int b0 = 0;
  /// IV: Y = shift - ((x0 + K) \ X), where x0 + K is the coset holding X.
  Int shift = 0;
  /// Generator of K = <X+Y>_* inside Z/nZ (1 when K is the whole group).
  Int span_generator = 1;
};

/// Generator h of <(X+Y) - (X+Y)> = <(X - X) u (Y - Y)>, as a divisor of n.
inline Int affine_span_generator(const CyclicSet& x, const CyclicSet& y) {
  Int h = x.modulus();
  const Int x0 = x.first();
  const Int y0 = y.first();
  x.for_each([&](Int v) { h = std::gcd(h, v - x0); });
  y.for_each([&](Int v) { h = std::gcd(h, v - y0); });
  return h;
}

namespace detail {

inline ElementaryType classify_full_span(const CyclicSet& x, const CyclicSet& y) {
  const Int n = x.modulus();
  const auto sx = static_cast<Int>(x.size());
  const auto sy = static_cast<Int>(y.size());
  ElementaryType t;
  if (sx == 1 || sy == 1) {
    t.tag = ElementaryTag::I;
    return t;
  }
  if (sx + sy - 1 >= 3) {
    for (Int d = 1; d < n; ++d) {
      const Int ord = n / std::gcd(n, d);
      if (ord < sx + sy - 1) continue;
      if (is_progression(x, d) && is_progression(y, d)) {
        t.tag = ElementaryTag::II;
        t.difference = d;
        return t;
      }
    }
  }
  const CyclicSet uniq = unique_expression_elements(x, y);
  if (sx + sy == n + 1 && uniq.size() == 1) {
    t.tag = ElementaryTag::III;
    t.unique_element = uniq.first();
    x.for_each([&](Int a) {
      const Int b = ((t.unique_element - a) % n + n) % n;
      if (y.contains(b)) {
        t.a0 = a;
        t.b0 = b;
      }
    });
    return t;
  }
  if (uniq.empty()) {
    const CyclicSet neg = x.complement().negated();
    if (neg.size() == y.size() && !neg.empty()) {
      const Int base = neg.first();
      bool matched = false;
      y.for_each([&](Int v) {
        if (!matched && neg.shifted(v - base) == y) {
          matched = true;
          t.shift = ((v - base) % n + n) % n;
        }
      });
      if (matched && !is_periodic(sumset(x, y))) {
        t.tag = ElementaryTag::IV;
        return t;
      }
    }
  }
  t.tag = ElementaryTag::None;
  return t;
}

}  // namespace detail

/// Kemperman elementary classification of (X, Y), testing types I, II, III,
/// IV in that order and returning the first match. Requires <X+Y>_* to be
/// the whole group; use classify_in_span for pairs confined to a proper coset.
inline ElementaryType classify_elementary(const CyclicSet& x, const CyclicSet& y) {
  x.require_same(y);
  if (x.empty() || y.empty()) throw std::invalid_argument("classify_elementary needs nonempty sets");
  if (const Int h = affine_span_generator(x, y); h != 1)
    throw std::invalid_argument("affine span <X+Y>_* is a proper subgroup (generator " + std::to_string(h) +
                                "); translate into it first or use classify_in_span");
  return detail::classify_full_span(x, y);
}

/// Classifies (X, Y) inside K = <X+Y>_*: translates both to contain 0,
/// identifies K with Z/|K|Z and maps the witness back.
inline ElementaryType classify_in_span(const CyclicSet& x, const CyclicSet& y) {
  x.require_same(y);
  if (x.empty() || y.empty()) throw std::invalid_argument("classify_in_span needs nonempty sets");
  const Int n = x.modulus();
  const Int h = affine_span_generator(x, y);
  if (h == 1) return detail::classify_full_span(x, y);
  const Int k = n / h;
  const Int x0 = x.first();
  const Int y0 = y.first();
  CyclicSet xr(k);
  CyclicSet yr(k);
  x.for_each([&](Int v) { xr.insert((v - x0) / h); });
  y.for_each([&](Int v) { yr.insert((v - y0) / h); });
  ElementaryType t = detail::classify_full_span(xr, yr);
  t.span_generator = h;
  t.difference *= h;
  t.unique_element = (t.unique_element * h + x0 + y0) % n;
  t.a0 = (t.a0 * h + x0) % n;
  t.b0 = (t.b0 * h + y0) % n;
  t.shift = (t.shift * h + x0 + y0) % n;
  return t;
}

/// Checks (X \ {a0}) + (Y \ {b0}) = (X + Y) \ {a0 + b0} for a type III pair.
/// Throws std::invalid_argument when the pair is not type III.
inline bool type3_punctured_check(const CyclicSet& x, const CyclicSet& y) {
  const ElementaryType t = classify_in_span(x, y);
  if (t.tag != ElementaryTag::III) throw std::invalid_argument("type3_punctured_check: pair is not of type III");
  CyclicSet xp = x;
  CyclicSet yp = y;
  xp.erase(t.a0);
  yp.erase(t.b0);
  CyclicSet expected = sumset(x, y);
  expected.erase(t.unique_element);
  if (xp.empty() || yp.empty()) return expected.empty();
  return sumset(xp, yp) == expected;
}

/// X = periodic ∪ slice with `slice` a single H-coset slice of X and
/// `periodic` H-periodic (possibly empty).
struct QuasiPeriodicDecomposition {
  CyclicSet periodic;
  CyclicSet slice;
  /// Coset representative (residue mod the subgroup generator) of the slice.
  Int coset = 0;
};

/// Every coset slice of X that induces an H-quasi-periodic decomposition,
/// ordered by coset representative.
inline std::vector<QuasiPeriodicDecomposition> quasi_periodic_slices(const CyclicSet& x, const Subgroup& h) {
  if (h.modulus != x.modulus()) throw std::invalid_argument("subgroup lives in a different group");
  const Int g = h.generator;
  const CyclicSet base = h.members();
  std::vector<CyclicSet> slices;
  std::vector<Int> partial;
  slices.reserve(static_cast<std::size_t>(g));
  for (Int u = 0; u < g; ++u) {
    const CyclicSet coset = base.shifted(u);
    CyclicSet slice = x & coset;
    const std::size_t c = slice.size();
    if (c != 0 && static_cast<Int>(c) != h.order()) partial.push_back(u);
    slices.push_back(std::move(slice));
  }
  std::vector<QuasiPeriodicDecomposition> out;
  if (partial.size() > 1) return out;
  for (Int u = 0; u < g; ++u) {
    const CyclicSet& s = slices[static_cast<std::size_t>(u)];
    if (s.empty()) continue;
    if (!partial.empty() && partial.front() != u) continue;
    out.push_back({x - s, s, u});
  }
  return out;
}

/// One H-quasi-periodic decomposition of X, choosing the slice in the coset
/// with the largest representative; nullopt when none exists.
inline std::optional<QuasiPeriodicDecomposition> quasi_periodic_decomp(const CyclicSet& x, const Subgroup& h) {
  if (x.empty()) throw std::invalid_argument("quasi_periodic_decomp needs a nonempty set");
  auto all = quasi_periodic_slices(x, h);
  if (all.empty()) return std::nullopt;
  return std::move(all.back());
}

enum class KstOutcome { TypeIV, Decomposition, Falsification };

inline std::string_view to_string(KstOutcome o) {
  switch (o) {
    case KstOutcome::TypeIV: return "type_iv";
    case KstOutcome::Decomposition: return "decomposition";
    case KstOutcome::Falsification: return "FALSIFICATION";
  }
  return "FALSIFICATION";
}

/// Certificate for the dual Kemperman condition: either (X, Y) is elementary
/// of type IV, or a proper subgroup H with quasi-periodic slices X_0 and Y_0
/// satisfying clauses (i)-(iv).
struct KSTWitness {
  KstOutcome outcome = KstOutcome::Falsification;
  ElementaryType pair_type;      // TypeIV
  Subgroup subgroup;             // Decomposition
  ElementaryType quotient_type;  // Decomposition, clause (i)
  Int slice_coset_x = 0;
  Int slice_coset_y = 0;
  CyclicSet slice_x{1};
  CyclicSet slice_y{1};
};

inline constexpr Int kKstMaxModulus = 12;

/// True when |X+Y| = |X|+|Y|-1 and, if X+Y is periodic, X+Y has a unique
/// expression element: the hypothesis side of the dual structure theorem.
inline bool kst_eligible(const CyclicSet& x, const CyclicSet& y) {
  const CyclicSet s = sumset(x, y);
  if (s.size() + 1 != x.size() + y.size()) return false;
  if (is_periodic(s) && unique_expression_elements(x, y).empty()) return false;
  return true;
}

/// Exhaustive search over proper subgroups and coset slices. Returns a
/// Falsification outcome if nothing is found, which the structure theorem
/// rules out.
inline KSTWitness kst_witness(const CyclicSet& x, const CyclicSet& y) {
  x.require_same(y);
  const Int n = x.modulus();
  if (n > kKstMaxModulus) throw std::invalid_argument("kst_witness: modulus above desk-scale guard");
  if (n < 2) throw std::invalid_argument("kst_witness: the group must be nontrivial");
  if (x.empty() || y.empty()) throw std::invalid_argument("kst_witness needs nonempty sets");
  if (!kst_eligible(x, y)) throw std::invalid_argument("kst_witness: pair violates the critical-pair hypothesis");

  KSTWitness w;
  if (const ElementaryType t = classify_in_span(x, y); t.tag == ElementaryTag::IV) {
    w.outcome = KstOutcome::TypeIV;
    w.pair_type = t;
    return w;
  }
  // Proper subgroups, trivial first.
  auto hs = subgroups(n);
  std::reverse(hs.begin(), hs.end());
  for (const Subgroup& h : hs) {
    if (h.generator == 1) continue;
    const CyclicSet qx = quotient(x, h);
    const CyclicSet qy = quotient(y, h);
    const ElementaryType qt = classify_in_span(qx, qy);
    if (qt.tag == ElementaryTag::None || qt.tag == ElementaryTag::IV) continue;
    const CyclicSet quniq = unique_expression_elements(qx, qy);
    if (quniq.empty()) continue;
    const auto xs = quasi_periodic_slices(x, h);
    const auto ys = quasi_periodic_slices(y, h);
    for (const auto& dx : xs) {
      for (const auto& dy : ys) {
        if (!quniq.contains((dx.coset + dy.coset) % h.generator)) continue;  // (ii)
        const CyclicSet ss = sumset(dx.slice, dy.slice);
        if (ss.size() + 1 != dx.slice.size() + dy.slice.size()) continue;  // (iii)
        if (is_periodic(ss) && unique_expression_elements(dx.slice, dy.slice).empty()) continue;  // (iv)
        w.outcome = KstOutcome::Decomposition;
        w.subgroup = h;
        w.quotient_type = qt;
        w.slice_coset_x = dx.coset;
        w.slice_coset_y = dy.coset;
        w.slice_x = dx.slice;
        w.slice_y = dy.slice;
        return w;
      }
    }
  }
  return w;
}

}  // namespace sumsetlab
