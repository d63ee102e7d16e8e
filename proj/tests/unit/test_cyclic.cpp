#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "sumsetlab/cyclic.hpp"

using namespace sumsetlab;

namespace {

CyclicSet cs(Int n, std::initializer_list<Int> xs) { return CyclicSet(n, std::vector<Int>(xs)); }

CyclicSet from(Int n, const oracle::Set& s) { return CyclicSet(n, oracle::vec(s)); }

oracle::Set to_set(const CyclicSet& s) {
  const auto v = s.members();
  return {v.begin(), v.end()};
}

oracle::Set mask_set(Int n, unsigned mask) {
  oracle::Set s;
  for (Int i = 0; i < n; ++i)
    if ((mask >> i) & 1U) s.insert(i);
  return s;
}

// Calls f(X, Y) for every pair of nonempty subsets of Z/nZ.
template <typename F>
void all_pairs(Int n, F&& f) {
  for (unsigned mx = 1; mx < (1U << n); ++mx)
    for (unsigned my = 1; my < (1U << n); ++my) f(mask_set(n, mx), mask_set(n, my));
}

bool periodic_under(const oracle::Set& s, Int n, Int g) { return oracle::shift(s, g, n) == s; }

}  // namespace

TEST(CyclicSet, SumsetExamples) {
  EXPECT_EQ(sumset(cs(5, {0}), cs(5, {0, 1})), cs(5, {0, 1}));
  EXPECT_EQ(sumset(cs(3, {0, 1}), cs(3, {0, 1})), CyclicSet::full(3));
  EXPECT_EQ(sumset(cs(6, {0, 2, 4}), cs(6, {0, 3})), CyclicSet::full(6));
}

TEST(CyclicSet, SumsetMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 3000; ++t) {
    const Int n = 1 + static_cast<Int>(rng() % 150);
    const auto x = oracle::random_set(rng, 0, n - 1, 1 + n / 4);
    const auto y = oracle::random_set(rng, 0, n - 1, 1 + n / 4);
    EXPECT_EQ(to_set(sumset(from(n, x), from(n, y))), oracle::c_sumset(x, y, n)) << "n=" << n;
  }
}

TEST(CyclicSet, ModulusMismatchAndRange) {
  EXPECT_THROW(sumset(cs(5, {0}), cs(6, {0})), std::invalid_argument);
  CyclicSet s(4);
  EXPECT_THROW(s.insert(4), std::out_of_range);
  EXPECT_THROW(s.insert(-1), std::out_of_range);
}

TEST(Stabilizer, Examples) {
  EXPECT_EQ(stabilizer(CyclicSet::full(6)).order(), 6);
  EXPECT_TRUE(stabilizer(cs(6, {0, 1})).is_trivial());
  const Subgroup h = stabilizer(cs(6, {0, 2, 4}));
  EXPECT_EQ(h.order(), 3);
  EXPECT_EQ(h.generator, 2);
}

TEST(Stabilizer, MatchesBruteForce) {
  for (Int n = 1; n <= 12; ++n)
    for (unsigned m = 1; m < (1U << n); ++m) {
      const auto x = mask_set(n, m);
      const Subgroup h = stabilizer(from(n, x));
      ASSERT_EQ(h.order(), oracle::stabilizer_order(x, n));
      EXPECT_EQ(add_subgroup(from(n, x), h), from(n, x));
    }
}

TEST(Quotient, Examples) {
  EXPECT_EQ(quotient(cs(6, {0, 2, 4}), Subgroup(6, 2)), cs(2, {0}));
  EXPECT_EQ(quotient(cs(6, {0, 1, 3}), Subgroup(6, 3)), cs(3, {0, 1}));
  EXPECT_EQ(quotient(cs(6, {1, 4, 5}), Subgroup::trivial(6)), cs(6, {1, 4, 5}));
}

TEST(Subgroups, Enumeration) {
  const auto hs = subgroups(12);
  ASSERT_EQ(hs.size(), 6U);
  EXPECT_EQ(hs.front().order(), 12);
  EXPECT_TRUE(hs.back().is_trivial());
  EXPECT_THROW(Subgroup(12, 5), std::invalid_argument);
}

TEST(Kneser, Examples) {
  KneserReport r = kneser_check(cs(5, {0, 1}), cs(5, {0, 1}));
  EXPECT_TRUE(r.stabilizer.is_trivial());
  EXPECT_EQ(r.rho, 0);
  EXPECT_EQ(r.bound, 3);
  EXPECT_EQ(r.sumset_size, 3);
  EXPECT_TRUE(r.holds);

  r = kneser_check(cs(6, {0, 2, 4}), cs(6, {0, 2}));
  EXPECT_EQ(r.stabilizer.order(), 3);
  EXPECT_EQ(r.rho, 1);
  EXPECT_EQ(r.bound, 3);
  EXPECT_EQ(r.sumset_size, 3);
  EXPECT_TRUE(r.holds);

  r = kneser_check(CyclicSet::full(4), CyclicSet::full(4));
  EXPECT_EQ(r.stabilizer.order(), 4);
  EXPECT_EQ(r.rho, 0);
  EXPECT_EQ(r.bound, 4);
  EXPECT_EQ(r.sumset_size, r.bound);
}

TEST(Kneser, BoundMatchesOracleExhaustively) {
  for (Int n = 1; n <= 7; ++n)
    all_pairs(n, [&](const oracle::Set& x, const oracle::Set& y) {
      const KneserReport r = kneser_check(from(n, x), from(n, y));
      ASSERT_EQ(r.bound, oracle::kneser_bound(x, y, n));
      ASSERT_EQ(r.stabilizer.order(), oracle::stabilizer_order(oracle::c_sumset(x, y, n), n));
      ASSERT_TRUE(r.holds);
    });
}

TEST(UniqueExpression, Examples) {
  const CyclicSet y = cs(7, {1, 2, 6});
  EXPECT_EQ(unique_expression_elements(cs(7, {3}), y), sumset(cs(7, {3}), y));
  EXPECT_EQ(unique_expression_elements(cs(5, {0, 1}), cs(5, {0, 1})), cs(5, {0, 2}));
  // 0 = 0 + 0 = 2 + 2 in Z/4Z, so nothing is uniquely expressed.
  EXPECT_TRUE(unique_expression_elements(cs(4, {0, 1, 2}), cs(4, {0, 1, 2})).empty());
  EXPECT_EQ(unique_expression_elements(cs(5, {0, 1, 2}), cs(5, {0, 1, 2})), cs(5, {0, 4}));
}

TEST(UniqueExpression, MatchesCountTable) {
  for (Int n = 1; n <= 7; ++n)
    all_pairs(n, [&](const oracle::Set& x, const oracle::Set& y) {
      ASSERT_EQ(to_set(unique_expression_elements(from(n, x), from(n, y))), oracle::unique_elements(x, y, n));
    });
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify_elementary(cs(7, {3}), cs(7, {0, 1, 4})).tag, ElementaryTag::I);
  const ElementaryType t = classify_elementary(cs(7, {0, 1}), cs(7, {0, 1, 2}));
  EXPECT_EQ(t.tag, ElementaryTag::II);
  EXPECT_EQ(t.difference, 1);
  // In Z/5Z both sets are progressions of difference 1 with ord 5 >= 5, so
  // type II matches first; the type III count clause fails on its own.
  const oracle::Set x{0, 1, 2};
  EXPECT_EQ(oracle::unique_elements(x, x, 5).size(), 2U);
  EXPECT_EQ(classify_elementary(cs(5, {0, 1, 2}), cs(5, {0, 1, 2})).tag, ElementaryTag::II);
}

TEST(Classify, RejectsProperSpan) {
  EXPECT_THROW(classify_elementary(cs(6, {0, 2}), cs(6, {0, 4})), std::invalid_argument);
  const ElementaryType t = classify_in_span(cs(6, {0, 2}), cs(6, {0, 4}));
  EXPECT_EQ(t.span_generator, 2);
  EXPECT_NE(t.tag, ElementaryTag::None);
}

// Every verdict re-checked clause by clause against brute force.
TEST(Classify, ClausesHoldExhaustively) {
  for (Int n = 2; n <= 7; ++n)
    all_pairs(n, [&](const oracle::Set& x, const oracle::Set& y) {
      const CyclicSet cx = from(n, x);
      const CyclicSet cy = from(n, y);
      if (affine_span_generator(cx, cy) != 1) return;
      const ElementaryType t = classify_elementary(cx, cy);
      const oracle::Set sum = oracle::c_sumset(x, y, n);
      const oracle::Set uniq = oracle::unique_elements(x, y, n);
      switch (t.tag) {
        case ElementaryTag::I:
          ASSERT_TRUE(x.size() == 1 || y.size() == 1);
          break;
        case ElementaryTag::II: {
          const Int d = t.difference;
          // X, Y progressions of difference d, X+Y a progression of length |X|+|Y|-1.
          auto is_ap = [&](const oracle::Set& s) {
            for (Int a : s) {
              oracle::Set p;
              for (Int i = 0; i < static_cast<Int>(s.size()); ++i) p.insert(oracle::mod(a + i * d, n));
              if (p == s) return true;
            }
            return false;
          };
          ASSERT_TRUE(is_ap(x) && is_ap(y));
          ASSERT_GE(n / std::gcd(n, d), static_cast<Int>(x.size() + y.size()) - 1);
          ASSERT_EQ(sum.size(), x.size() + y.size() - 1);
          ASSERT_TRUE(is_ap(sum));
          break;
        }
        case ElementaryTag::III:
          ASSERT_EQ(static_cast<Int>(x.size() + y.size()), n + 1);
          ASSERT_EQ(uniq.size(), 1U);
          ASSERT_EQ(*uniq.begin(), t.unique_element);
          ASSERT_TRUE(x.count(t.a0) && y.count(t.b0));
          ASSERT_EQ(oracle::mod(t.a0 + t.b0, n), t.unique_element);
          break;
        case ElementaryTag::IV: {
          // Y = shift - (G \ X), no unique expressions, X+Y aperiodic and
          // equal to G minus the shift.
          oracle::Set expect;
          for (Int g = 0; g < n; ++g)
            if (!x.count(g)) expect.insert(oracle::mod(t.shift - g, n));
          ASSERT_EQ(expect, y);
          ASSERT_TRUE(uniq.empty());
          ASSERT_EQ(oracle::stabilizer_order(sum, n), 1);
          oracle::Set g_minus;
          for (Int g = 0; g < n; ++g)
            if (g != t.shift) g_minus.insert(g);
          ASSERT_EQ(sum, g_minus);
          break;
        }
        case ElementaryTag::None:
          ASSERT_FALSE(x.size() == 1 || y.size() == 1);
          break;
      }
    });
}

TEST(TypeIII, PuncturedCheck) {
  Int found = 0;
  for (Int n = 2; n <= 8; ++n)
    all_pairs(n, [&](const oracle::Set& x, const oracle::Set& y) {
      const CyclicSet cx = from(n, x);
      const CyclicSet cy = from(n, y);
      const ElementaryType t = classify_in_span(cx, cy);
      if (t.tag != ElementaryTag::III) {
        if (found == 0 && t.tag == ElementaryTag::II) {
          EXPECT_THROW(type3_punctured_check(cx, cy), std::invalid_argument);
        }
        return;
      }
      ++found;
      ASSERT_TRUE(type3_punctured_check(cx, cy));
      // Same statement through the oracle.
      oracle::Set xp = x;
      oracle::Set yp = y;
      xp.erase(t.a0);
      yp.erase(t.b0);
      oracle::Set expect = oracle::c_sumset(x, y, n);
      expect.erase(t.unique_element);
      ASSERT_EQ(oracle::c_sumset(xp, yp, n), expect);
    });
  EXPECT_GT(found, 0);
}

TEST(QuasiPeriodic, Examples) {
  const Subgroup h(6, 2);
  auto d = quasi_periodic_decomp(cs(6, {0, 2, 4}), h);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->slice, cs(6, {0, 2, 4}));
  EXPECT_TRUE(d->periodic.empty());

  d = quasi_periodic_decomp(cs(6, {0, 1, 2, 4}), h);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->periodic, cs(6, {0, 2, 4}));
  EXPECT_EQ(d->slice, cs(6, {1}));

  EXPECT_FALSE(quasi_periodic_decomp(cs(6, {0, 1}), Subgroup(6, 3)).has_value());
}

TEST(QuasiPeriodic, SlicesAreValid) {
  for (Int n = 2; n <= 8; ++n)
    for (const Subgroup& h : subgroups(n))
      for (unsigned m = 1; m < (1U << n); ++m) {
        const auto x = mask_set(n, m);
        const auto slices = quasi_periodic_slices(from(n, x), h);
        // Oracle: a coset u qualifies iff X meets it and X minus that slice is H-periodic.
        std::vector<Int> expect;
        for (Int u = 0; u < h.generator; ++u) {
          oracle::Set rest;
          bool meets = false;
          for (Int v : x) {
            if (oracle::mod(v - u, h.generator) == 0)
              meets = true;
            else
              rest.insert(v);
          }
          if (meets && periodic_under(rest, n, h.generator)) expect.push_back(u);
        }
        std::vector<Int> got;
        for (const auto& s : slices) got.push_back(s.coset);
        ASSERT_EQ(got, expect) << "n=" << n << " g=" << h.generator << " mask=" << m;
      }
}

TEST(Kst, Examples) {
  const KSTWitness w = kst_witness(cs(6, {0}), cs(6, {1, 3, 4}));
  EXPECT_EQ(w.outcome, KstOutcome::Decomposition);
  EXPECT_TRUE(w.subgroup.is_trivial());
  EXPECT_EQ(w.quotient_type.tag, ElementaryTag::I);

  const KSTWitness v = kst_witness(cs(7, {0, 1}), cs(7, {0, 1, 2}));
  EXPECT_EQ(v.outcome, KstOutcome::Decomposition);
  EXPECT_TRUE(v.subgroup.is_trivial());
  EXPECT_EQ(v.quotient_type.tag, ElementaryTag::II);

  EXPECT_THROW(kst_witness(cs(13, {0}), cs(13, {0})), std::invalid_argument);
  EXPECT_THROW(kst_witness(cs(6, {0, 1}), cs(6, {0, 2})), std::invalid_argument);
}

// Every eligible pair gets a witness whose clauses hold under brute force.
TEST(Kst, WitnessClausesExhaustively) {
  for (Int n = 2; n <= 7; ++n)
    all_pairs(n, [&](const oracle::Set& x, const oracle::Set& y) {
      const oracle::Set sum = oracle::c_sumset(x, y, n);
      const bool critical = sum.size() + 1 == x.size() + y.size();
      const bool periodic = oracle::stabilizer_order(sum, n) > 1;
      const bool eligible = critical && (!periodic || !oracle::unique_elements(x, y, n).empty());
      ASSERT_EQ(kst_eligible(from(n, x), from(n, y)), eligible);
      if (!eligible) return;
      const KSTWitness w = kst_witness(from(n, x), from(n, y));
      ASSERT_NE(w.outcome, KstOutcome::Falsification);
      if (w.outcome == KstOutcome::TypeIV) {
        ASSERT_EQ(w.pair_type.tag, ElementaryTag::IV);
        return;
      }
      const Int g = w.subgroup.generator;
      ASSERT_NE(g, 1);
      const oracle::Set sx = to_set(w.slice_x);
      const oracle::Set sy = to_set(w.slice_y);
      // Slices sit in one coset each and leave H-periodic remainders.
      oracle::Set rx;
      oracle::Set ry;
      for (Int v : x)
        if (!sx.count(v)) rx.insert(v);
      for (Int v : y)
        if (!sy.count(v)) ry.insert(v);
      ASSERT_TRUE(periodic_under(rx, n, g));
      ASSERT_TRUE(periodic_under(ry, n, g));
      for (Int v : sx) ASSERT_EQ(oracle::mod(v, g), w.slice_coset_x);
      for (Int v : sy) ASSERT_EQ(oracle::mod(v, g), w.slice_coset_y);
      // (i) quotient pair elementary of type I-III.
      ASSERT_TRUE(w.quotient_type.tag == ElementaryTag::I || w.quotient_type.tag == ElementaryTag::II ||
                  w.quotient_type.tag == ElementaryTag::III);
      // (ii) the slice cosets sum to a unique expression element of the quotient.
      oracle::Set qx;
      oracle::Set qy;
      for (Int v : x) qx.insert(oracle::mod(v, g));
      for (Int v : y) qy.insert(oracle::mod(v, g));
      ASSERT_TRUE(oracle::unique_elements(qx, qy, g).count(oracle::mod(w.slice_coset_x + w.slice_coset_y, g)));
      // (iii) the slices form a critical pair.
      const oracle::Set ss = oracle::c_sumset(sx, sy, n);
      ASSERT_EQ(ss.size() + 1, sx.size() + sy.size());
      // (iv) a unique expression element when the slice sum is periodic.
      if (oracle::stabilizer_order(ss, n) > 1) {
        ASSERT_FALSE(oracle::unique_elements(sx, sy, n).empty());
      }
    });
}
