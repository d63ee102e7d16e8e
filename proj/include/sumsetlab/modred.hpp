#pragma once

// Modular reduction of integer sumsets. A set A is layered modulo n by
// residue multiplicity (layer i holds residues hit by at least i + 1
// elements); layered sumsets and per-coset corrections then bound |A+B|
// from below.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "sumsetlab/cyclic.hpp"
#include "sumsetlab/intset.hpp"

namespace sumsetlab {

/// Descending chain L_0 ⊇ L_1 ⊇ ... ⊇ L_t of subsets of Z/nZ, L_t nonempty.
struct LayeredSet {
  Int modulus = 2;
  std::vector<CyclicSet> layers;

  std::size_t total_size() const {
    std::size_t s = 0;
    for (const auto& l : layers) s += l.size();
    return s;
  }

  std::size_t depth() const noexcept { return layers.size(); }

  bool is_chain() const {
    if (layers.empty() || layers.back().empty()) return false;
    for (std::size_t i = 1; i < layers.size(); ++i)
      if (!layers[i].is_subset_of(layers[i - 1])) return false;
    return true;
  }
};

/// A_i = residues hit by at least i + 1 elements of A.
inline LayeredSet layered(const IntSet& a, Int n) {
  if (n < 2) throw std::invalid_argument("layered: modulus must be at least 2");
  std::vector<Int> count(static_cast<std::size_t>(n), 0);
  Int top = 0;
  a.for_each([&](Int x) {
    auto& c = count[static_cast<std::size_t>(((x % n) + n) % n)];
    top = std::max(top, ++c);
  });
  LayeredSet out{n, {}};
  out.layers.assign(static_cast<std::size_t>(top), CyclicSet(n));
  for (Int r = 0; r < n; ++r)
    for (Int i = 0; i < count[static_cast<std::size_t>(r)]; ++i) out.layers[static_cast<std::size_t>(i)].insert(r);
  return out;
}

/// C_k = union over i + j = k of (A_i + B_j).
inline LayeredSet layered_sumset(const LayeredSet& a, const LayeredSet& b) {
  if (a.modulus != b.modulus) throw std::invalid_argument("layered sets have different moduli");
  const std::size_t depth = a.depth() + b.depth() - 1;
  LayeredSet out{a.modulus, std::vector<CyclicSet>(depth, CyclicSet(a.modulus))};
  for (std::size_t i = 0; i < a.depth(); ++i)
    for (std::size_t j = 0; j < b.depth(); ++j) {
      const CyclicSet s = sumset(a.layers[i], b.layers[j]);
      auto dst = out.layers[i + j].bits_mut();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] |= s.bits()[k];
    }
  return out;
}

/// Per-coset corrections. Cosets of H are indexed by residues mod the
/// subgroup generator, in ascending order.
struct DeltaReport {
  Subgroup subgroup;
  /// delta_z, or delta'_z in corollary mode (zero for cosets meeting A_0).
  std::vector<Int> delta;
  /// k_z; -1 when no layer contains the whole coset. Empty in corollary mode.
  std::vector<Int> k;
  /// |Ã + B̃| for the general bound, |A_0 + B_0| + |A| for the corollary.
  Int base = 0;
  Int bound = 0;
};

namespace detail {

// counts[i * g + u] = |(u + H) ∩ L_i| for the first `depth` layers.
using CosetCounts = boost::container::small_vector<Int, 64>;

inline CosetCounts coset_counts(const LayeredSet& s, Int g, std::size_t depth) {
  depth = std::min(depth, s.depth());
  CosetCounts out(depth * static_cast<std::size_t>(g), 0);
  for (std::size_t i = 0; i < depth; ++i)
    s.layers[i].for_each([&](Int x) { ++out[i * static_cast<std::size_t>(g) + static_cast<std::size_t>(x % g)]; });
  return out;
}

inline void check_subgroup(const LayeredSet& s, const Subgroup& h) {
  if (h.modulus != s.modulus) throw std::invalid_argument("subgroup is not a subgroup of Z/nZ for this modulus");
}

// Calls f(z, k_z, delta_z) for every coset z of H, ascending.
template <typename F>
void for_each_delta(const LayeredSet& a, const LayeredSet& b, const LayeredSet& c, const Subgroup& h, F&& f) {
  check_subgroup(a, h);
  const Int g = h.generator;
  const Int order = h.order();
  const auto gs = static_cast<std::size_t>(g);
  const CosetCounts cnt_a = coset_counts(a, g, a.depth());
  const CosetCounts cnt_b = coset_counts(b, g, b.depth());
  const auto da = static_cast<Int>(a.depth());
  const auto db = static_cast<Int>(b.depth());
  const CyclicSet base = h.members();
  for (Int z = 0; z < g; ++z) {
    const CyclicSet coset = base.shifted(z);
    Int kz = -1;
    for (std::size_t k = 0; k < c.depth(); ++k) {
      if (!coset.is_subset_of(c.layers[k])) break;
      kz = static_cast<Int>(k);
    }
    if (kz < 0) {
      f(z, kz, Int{0});
      continue;
    }
    // C_{k_z + 1} beyond the top layer is empty.
    const auto next = static_cast<std::size_t>(kz + 1);
    const Int above = next < c.depth() ? static_cast<Int>(coset.intersection_size(c.layers[next])) : 0;
    Int best = 0;
    // Layers past the top are empty and contribute nothing positive.
    for (Int i = std::max<Int>(0, kz - db + 1); i <= std::min(kz, da - 1); ++i) {
      const Int j = kz - i;
      const Int* ra = &cnt_a[static_cast<std::size_t>(i) * gs];
      const Int* rb = &cnt_b[static_cast<std::size_t>(j) * gs];
      for (Int u = 0; u < g; ++u) {
        const Int v = z >= u ? z - u : z - u + g;
        best = std::max(best, ra[u] + rb[v] - 1 - order - above);
      }
    }
    f(z, kz, best);
  }
}

// Calls f(z, delta'_z) for every coset z of H outside phi_H(A_0).
template <typename F>
void for_each_corollary_delta(const LayeredSet& a, const LayeredSet& b, const Subgroup& h, F&& f) {
  check_subgroup(a, h);
  const Int g = h.generator;
  const Int order = h.order();
  const CosetCounts ra = coset_counts(a, g, 1);
  const CosetCounts rb = coset_counts(b, g, 1);
  for (Int z = 0; z < g; ++z) {
    if (ra[static_cast<std::size_t>(z)] != 0) continue;
    Int best = 0;
    for (Int u = 0; u < g; ++u) {
      const Int v = z >= u ? z - u : z - u + g;
      best = std::max(best, ra[static_cast<std::size_t>(u)] + rb[static_cast<std::size_t>(v)] - 1 - order);
    }
    f(z, best);
  }
}

}  // namespace detail

/// |Ã + B̃| + sum over cosets z of delta_z, given C = layered_sumset(A, B).
inline DeltaReport delta_report(const LayeredSet& a, const LayeredSet& b, const LayeredSet& c, const Subgroup& h) {
  DeltaReport r;
  r.subgroup = h;
  r.base = static_cast<Int>(c.total_size());
  r.delta.assign(static_cast<std::size_t>(h.generator), 0);
  r.k.assign(static_cast<std::size_t>(h.generator), -1);
  r.bound = r.base;
  detail::for_each_delta(a, b, c, h, [&](Int z, Int kz, Int d) {
    r.k[static_cast<std::size_t>(z)] = kz;
    r.delta[static_cast<std::size_t>(z)] = d;
    r.bound += d;
  });
  return r;
}

/// Bound value only; no per-coset vectors.
inline Int delta_bound_value(const LayeredSet& a, const LayeredSet& b, const LayeredSet& c, const Subgroup& h) {
  Int bound = static_cast<Int>(c.total_size());
  detail::for_each_delta(a, b, c, h, [&](Int, Int, Int d) { bound += d; });
  return bound;
}

/// |A_0 + B_0| + |A| + sum over cosets z outside phi_H(A_0) of delta'_z.
inline DeltaReport corollary_report(const LayeredSet& a, const LayeredSet& b, const Subgroup& h) {
  DeltaReport r;
  r.subgroup = h;
  r.base = static_cast<Int>(sumset(a.layers.front(), b.layers.front()).size()) + static_cast<Int>(a.total_size());
  r.delta.assign(static_cast<std::size_t>(h.generator), 0);
  r.bound = r.base;
  detail::for_each_corollary_delta(a, b, h, [&](Int z, Int d) {
    r.delta[static_cast<std::size_t>(z)] = d;
    r.bound += d;
  });
  return r;
}

/// Corollary bound value given |A_0 + B_0| (layer 0 of the layered sumset).
inline Int corollary_bound_value(const LayeredSet& a, const LayeredSet& b, const LayeredSet& c, const Subgroup& h) {
  Int bound = static_cast<Int>(c.layers.front().size()) + static_cast<Int>(a.total_size());
  detail::for_each_corollary_delta(a, b, h, [&](Int, Int d) { bound += d; });
  return bound;
}

/// One pair layered at one modulus, with its layered sumset; evaluates both
/// lower bounds against any subgroup.
class ModularReduction {
 public:
  ModularReduction(LayeredSet a, LayeredSet b)
      : a_(std::move(a)), b_(std::move(b)), c_(layered_sumset(a_, b_)) {}

  ModularReduction(const IntSet& a, const IntSet& b, Int n) : ModularReduction(layered(a, n), layered(b, n)) {}

  Int modulus() const noexcept { return a_.modulus; }
  const LayeredSet& a() const noexcept { return a_; }
  const LayeredSet& b() const noexcept { return b_; }
  const LayeredSet& c() const noexcept { return c_; }

  DeltaReport delta_report(const Subgroup& h) const { return sumsetlab::delta_report(a_, b_, c_, h); }

  /// Only meaningful when the modulus is max B with min B = 0.
  DeltaReport corollary_report(const Subgroup& h) const { return sumsetlab::corollary_report(a_, b_, h); }

 private:
  LayeredSet a_;
  LayeredSet b_;
  LayeredSet c_;
};

/// |Ã + B̃| + sum_z delta_z for the layering modulo n and subgroup H.
inline Int delta_bound(const IntSet& a, const IntSet& b, Int n, const Subgroup& h) {
  if (n < 2) throw std::invalid_argument("delta_bound: modulus must be at least 2");
  if (h.modulus != n) throw std::invalid_argument("delta_bound: subgroup does not belong to Z/nZ");
  return ModularReduction(a, b, n).delta_report(h).bound;
}

/// Modulus used by the corollary bound: n = max B, requiring min B = 0.
inline Int corollary_modulus(const IntSet& b) {
  if (b.min() != 0) throw std::invalid_argument("corollary_bound requires min B = 0");
  if (b.max() < 2) throw std::invalid_argument("corollary_bound requires max B >= 2");
  return b.max();
}

/// |A_0 + B_0| + |A| + sum_{z not in phi_H(A_0)} delta'_z, with n = max B.
inline Int corollary_bound(const IntSet& a, const IntSet& b, const Subgroup& h) {
  const Int n = corollary_modulus(b);
  if (h.modulus != n) throw std::invalid_argument("corollary_bound: subgroup does not belong to Z/(max B)Z");
  return ModularReduction(a, b, n).corollary_report(h).bound;
}

}  // namespace sumsetlab
