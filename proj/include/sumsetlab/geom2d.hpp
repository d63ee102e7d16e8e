#pragma once

// Finite subsets of Z^2: the Freiman lift of integer pairs whose residues
// form short progressions, linear compression, and the discrete
// two-dimensional Brunn-Minkowski bound.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumsetlab/cyclic.hpp"
#include "sumsetlab/intset.hpp"

namespace sumsetlab {

struct Point {
  Int u = 0;
  Int v = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {detail::checked_add(a.u, b.u), detail::checked_add(a.v, b.v)}; }
};

inline std::ostream& operator<<(std::ostream& os, Point p) { return os << '(' << p.u << ',' << p.v << ')'; }

/// Nonempty finite subset of Z^2, kept sorted by (u, v).
class Grid2DSet {
 public:
  explicit Grid2DSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw std::invalid_argument("Grid2DSet must be nonempty");
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  Grid2DSet(std::initializer_list<Point> pts) : Grid2DSet(std::vector<Point>(pts)) {}

  std::size_t size() const noexcept { return pts_.size(); }
  const std::vector<Point>& points() const noexcept { return pts_; }
  bool contains(Point p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

  /// Point counts per row (fixed v), keyed by v.
  std::map<Int, Int> rows() const {
    std::map<Int, Int> out;
    for (const auto& p : pts_) ++out[p.v];
    return out;
  }

  /// Point counts per column (fixed u), keyed by u.
  std::map<Int, Int> columns() const {
    std::map<Int, Int> out;
    for (const auto& p : pts_) ++out[p.u];
    return out;
  }

  friend bool operator==(const Grid2DSet&, const Grid2DSet&) = default;

 private:
  std::vector<Point> pts_;
};

inline Grid2DSet sumset(const Grid2DSet& a, const Grid2DSet& b) {
  std::vector<Point> out;
  out.reserve(a.size() * b.size());
  for (const auto& p : a.points())
    for (const auto& q : b.points()) out.push_back(p + q);
  return Grid2DSet(std::move(out));
}

/// Direction of the lines a compression or Brunn-Minkowski count runs along:
/// horizontal lines have fixed v, vertical lines fixed u.
enum class Axis { Horizontal, Vertical };

/// Replaces each line parallel to `axis` by a run of the same length starting
/// on the perpendicular coordinate axis.
inline Grid2DSet compress(const Grid2DSet& s, Axis axis) {
  std::vector<Point> out;
  out.reserve(s.size());
  if (axis == Axis::Horizontal) {
    for (const auto& [v, len] : s.rows())
      for (Int u = 0; u < len; ++u) out.push_back({u, v});
  } else {
    for (const auto& [u, len] : s.columns())
      for (Int v = 0; v < len; ++v) out.push_back({u, v});
  }
  return Grid2DSet(std::move(out));
}

inline Int line_count(const Grid2DSet& s, Axis axis) {
  return static_cast<Int>(axis == Axis::Horizontal ? s.rows().size() : s.columns().size());
}

/// ceil((|A|/m + |B|/n - 1)(m + n - 1)) where m and n count the lines
/// parallel to `axis` meeting A and B.
///
/// Dividing |B| by m instead fails on asymmetric pairs (a single point
/// against a column of three), so |B|/n is used.
inline Int bm2d_bound(const Grid2DSet& a, const Grid2DSet& b, Axis axis) {
  using boost::multiprecision::cpp_int;
  const cpp_int m = line_count(a, axis);
  const cpp_int n = line_count(b, axis);
  // (|A| n + |B| m - m n)(m + n - 1) / (m n)
  const cpp_int num = (cpp_int(a.size()) * n + cpp_int(b.size()) * m - m * n) * (m + n - 1);
  const cpp_int den = m * n;
  cpp_int q = num / den;
  if (q * den < num) ++q;
  return q.convert_to<Int>();
}

/// The same bound with a |B|/m term, kept to exhibit its failure.
inline Int bm2d_bound_literal(const Grid2DSet& a, const Grid2DSet& b, Axis axis) {
  using boost::multiprecision::cpp_int;
  const cpp_int m = line_count(a, axis);
  const cpp_int n = line_count(b, axis);
  const cpp_int num = (cpp_int(a.size()) + cpp_int(b.size()) - m) * (m + n - 1);
  cpp_int q = num / m;
  if (q * m < num) ++q;
  return q.convert_to<Int>();
}

/// Images of A and B under the Freiman lift, with the coordinate maps.
struct Lift {
  Grid2DSet a_image;
  Grid2DSet b_image;
  std::vector<std::pair<Int, Point>> a_map;
  std::vector<std::pair<Int, Point>> b_map;
  /// |X_i| for i = 0..m-1 and |Y_j| for j = 0..n-1.
  std::vector<Int> a_rows;
  std::vector<Int> b_rows;
  Int alpha0 = 0;
  Int beta0 = 0;
};

namespace detail {

inline Int mod(Int x, Int n) { return ((x % n) + n) % n; }

// Residue of the first term of phi(S) read as a progression of difference d,
// or throws naming the failed hypothesis. For a full cycle the residue of
// min S is used.
inline Int progression_start(const CyclicSet& r, Int d, const IntSet& s, const char* name) {
  const Int n = r.modulus();
  Int start = -1;
  int starts = 0;
  r.for_each([&](Int v) {
    if (!r.contains(mod(v - d, n))) {
      start = v;
      ++starts;
    }
  });
  const Int ord = n / std::gcd(n, d);
  if (starts == 0 && static_cast<Int>(r.size()) == ord) return mod(s.min(), n);
  if (starts != 1 || !is_progression(r, d))
    throw std::invalid_argument(std::string("lift_to_2d: phi_N(") + name + ") is not a progression of difference d modulo N");
  return start;
}

}  // namespace detail

/// Freiman isomorphism A + B ≅ ⋃ X_i × {i} + ⋃ Y_j × {j} in Z^2 for A, B whose
/// residues mod N are progressions of common difference d with
/// |phi(A)| + |phi(B)| - 1 <= ord(phi(d)). Row i collects the elements
/// congruent to alpha_0 + i d; alpha_0 and beta_0 are the least elements of
/// the first rows.
inline Lift lift_to_2d(const IntSet& a, const IntSet& b, Int modulus, Int d) {
  if (modulus < 1) throw std::invalid_argument("lift_to_2d: N must be at least 1");
  if (d < 1 || d > modulus - 1) throw std::invalid_argument("lift_to_2d: d must lie in [1, N-1]");
  const CyclicSet ra = CyclicSet::reduce(a, modulus);
  const CyclicSet rb = CyclicSet::reduce(b, modulus);
  const Int ord = modulus / std::gcd(modulus, d);
  const auto m = static_cast<Int>(ra.size());
  const auto n = static_cast<Int>(rb.size());
  if (m + n - 1 > ord) throw std::invalid_argument("lift_to_2d: |phi(A)| + |phi(B)| - 1 exceeds ord(phi(d))");
  const Int sa = m == 1 ? ra.first() : detail::progression_start(ra, d, a, "A");
  const Int sb = n == 1 ? rb.first() : detail::progression_start(rb, d, b, "B");

  auto build = [&](const IntSet& s, Int start_residue, Int rows, std::vector<std::pair<Int, Point>>& map,
                   std::vector<Int>& row_sizes) -> Int {
    // Row of residue r: the i with start + i d ≡ r (mod N).
    std::vector<Int> row_of(static_cast<std::size_t>(modulus), -1);
    for (Int i = 0; i < rows; ++i) row_of[static_cast<std::size_t>(detail::mod(start_residue + i * d, modulus))] = i;
    Int base = 0;
    bool have_base = false;
    s.for_each([&](Int x) {
      if (!have_base && detail::mod(x, modulus) == start_residue) {
        base = x;
        have_base = true;
      }
    });
    row_sizes.assign(static_cast<std::size_t>(rows), 0);
    s.for_each([&](Int x) {
      const Int i = row_of[static_cast<std::size_t>(detail::mod(x, modulus))];
      const Int alpha = detail::checked_add(base, detail::checked_mul(i, d));
      map.push_back({x, {(x - alpha) / modulus, i}});
      ++row_sizes[static_cast<std::size_t>(i)];
    });
    return base;
  };

  std::vector<std::pair<Int, Point>> amap;
  std::vector<std::pair<Int, Point>> bmap;
  std::vector<Int> arows;
  std::vector<Int> brows;
  const Int alpha0 = build(a, sa, m, amap, arows);
  const Int beta0 = build(b, sb, n, bmap, brows);
  auto image = [](const std::vector<std::pair<Int, Point>>& map) {
    std::vector<Point> pts;
    pts.reserve(map.size());
    for (const auto& [x, p] : map) pts.push_back(p);
    return Grid2DSet(std::move(pts));
  };
  return Lift{image(amap), image(bmap), std::move(amap), std::move(bmap), std::move(arows), std::move(brows),
              alpha0, beta0};
}

/// True when x + y ↦ phi_A(x) + phi_B(y) is well defined and injective on
/// A + B, i.e. the lift is a Freiman isomorphism. O(|A| |B|).
inline bool is_freiman_isomorphism(const std::vector<std::pair<Int, Point>>& a_map,
                                   const std::vector<std::pair<Int, Point>>& b_map) {
  std::unordered_map<Int, Point> forward;
  std::map<Point, Int> backward;
  for (const auto& [x, p] : a_map)
    for (const auto& [y, q] : b_map) {
      const Int s = detail::checked_add(x, y);
      const Point t = p + q;
      if (auto [it, fresh] = forward.try_emplace(s, t); !fresh && it->second != t) return false;
      if (auto [it, fresh] = backward.try_emplace(t, s); !fresh && it->second != s) return false;
    }
  return true;
}

}  // namespace sumsetlab
