#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "sumsetlab/intset.hpp"

using namespace sumsetlab;

namespace {

IntSet from(const oracle::Set& s) { return IntSet::from_elements(oracle::vec(s)); }

oracle::Set to_set(const IntSet& s) {
  const auto v = s.elements();
  return {v.begin(), v.end()};
}

}  // namespace

TEST(IntSet, SumsetExamples) {
  EXPECT_EQ(sumset(IntSet{0}, IntSet{0, 5, 9}), (IntSet{0, 5, 9}));
  EXPECT_EQ(sumset(IntSet{0, 1}, IntSet{0, 2}), (IntSet{0, 1, 2, 3}));
  const IntSet a{0, 2, 4, 5, 6};
  const IntSet s = sumset(a, a);
  EXPECT_EQ(s, (IntSet{0, 2, 4, 5, 6, 7, 8, 9, 10, 11, 12}));
  EXPECT_EQ(s.size(), 11U);
}

TEST(IntSet, SumsetMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 3000; ++t) {
    const Int lo = static_cast<Int>(rng() % 400) - 200;
    const Int width = 1 + static_cast<Int>(rng() % 300);
    const auto a = oracle::random_set(rng, lo, lo + width, 1 + width / 3);
    const auto b = oracle::random_set(rng, -lo, -lo + width, 12);
    EXPECT_EQ(to_set(sumset(from(a), from(b))), oracle::sumset(a, b));
  }
}

TEST(IntSet, SumsetPostconditions) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 2000; ++t) {
    const auto a = from(oracle::random_set(rng, 0, 90, 20));
    const auto b = from(oracle::random_set(rng, -50, 70, 20));
    const IntSet s = sumset(a, b);
    EXPECT_EQ(s.min(), a.min() + b.min());
    EXPECT_EQ(s.max(), a.max() + b.max());
    EXPECT_GE(s.size(), std::max(a.size(), b.size()));
    // |A+B| >= |A| + |B| - 1 over the integers.
    EXPECT_GE(doubling_r(a, b), -1);
  }
}

TEST(IntSet, TranslationCovariance) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const auto a = from(oracle::random_set(rng, 0, 60, 15));
    const auto b = from(oracle::random_set(rng, 0, 60, 15));
    const Int x = static_cast<Int>(rng() % 2001) - 1000;
    const Int y = static_cast<Int>(rng() % 2001) - 1000;
    EXPECT_EQ(sumset(translate(a, x), translate(b, y)), translate(sumset(a, b), x + y));
  }
}

TEST(IntSet, SumsetAcrossWordBoundaries) {
  const IntSet a{0, 63, 64, 127, 200};
  const IntSet b{0, 1, 65, 130};
  std::vector<Int> av = a.elements();
  std::vector<Int> bv = b.elements();
  EXPECT_EQ(to_set(sumset(a, b)), oracle::sumset({av.begin(), av.end()}, {bv.begin(), bv.end()}));
}

TEST(IntSet, OverflowIsRangeError) {
  constexpr Int big = std::numeric_limits<Int>::max() - 1;
  EXPECT_THROW(sumset(IntSet{big}, IntSet{5}), std::range_error);
  EXPECT_THROW(translate(IntSet{0, 2}, big), std::range_error);
  EXPECT_THROW(IntSet({0, Int{1} << 40}), std::range_error);
}

TEST(IntSet, EmptyRejected) {
  EXPECT_THROW(IntSet::from_elements(std::vector<Int>{}), std::invalid_argument);
}

TEST(IntSet, IntervalD) {
  EXPECT_EQ(interval_d(0, 1, 2), (IntSet{0, 2}));
  EXPECT_EQ(interval_d(0, 3, 1), (IntSet{0, 1, 2, 3}));
  EXPECT_EQ(interval_d(2, 4, 3), (IntSet{6, 9, 12}));
  EXPECT_EQ(interval_d(-2, 1, 5).size(), 4U);
  EXPECT_THROW(interval_d(3, 2, 1), std::invalid_argument);
  EXPECT_THROW(interval_d(0, 2, 0), std::invalid_argument);
}

TEST(IntSet, GcdStar) {
  EXPECT_EQ(gcd_star(IntSet{7}), 0);
  EXPECT_EQ(gcd_star(IntSet{0, 2, 4}), 2);
  EXPECT_EQ(gcd_star(IntSet{3, 10, 17, 38}), 7);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 500; ++t) {
    const auto s = oracle::random_set(rng, -40, 40, 8);
    EXPECT_EQ(gcd_star(from(s)), oracle::gcd_star(s));
    const Int k = static_cast<Int>(rng() % 9) - 4;
    if (k == 0) continue;
    EXPECT_EQ(gcd_star(dilate(k, from(s))), std::abs(k) * oracle::gcd_star(s));
  }
}

TEST(IntSet, Dilate) {
  const IntSet a{0, 1, 3};
  EXPECT_EQ(dilate(1, a), a);
  EXPECT_EQ(dilate(-1, a), (IntSet{-3, -1, 0}));
  EXPECT_EQ(dilate(3, a).size(), a.size());
  EXPECT_THROW(dilate(0, a), std::invalid_argument);
  EXPECT_EQ(div_exact(3, dilate(3, a)), a);
}

TEST(IntSet, ApCoverExamples) {
  EXPECT_EQ(ap_cover(IntSet{5}), (ArithProgression{5, 1, 1}));
  EXPECT_EQ(ap_cover(IntSet{0, 2, 4}), (ArithProgression{0, 2, 3}));
  const ArithProgression p = ap_cover(IntSet{0, 1, 2, 3, 6});
  EXPECT_EQ(p, (ArithProgression{0, 1, 7}));
  EXPECT_EQ(p.len, 5 + 1 + 1);
}

TEST(IntSet, ApCoverIsMinimal) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 3000; ++t) {
    const auto s = oracle::random_set(rng, 0, 30, 8);
    const ArithProgression p = ap_cover(from(s));
    EXPECT_EQ(p.len, oracle::shortest_cover(s));
    EXPECT_TRUE(p.contains(from(s)));
  }
}

TEST(IntSet, NormalizeExamples) {
  NormalizedPair n = normalize_pair(IntSet{10}, IntSet{4, 6});
  EXPECT_EQ(n.a, IntSet{0});
  EXPECT_EQ(n.b, (IntSet{0, 1}));
  EXPECT_EQ(n.record.scale, 2);

  n = normalize_pair(IntSet{0, 3}, IntSet{0, 3, 6});
  EXPECT_EQ(n.a, (IntSet{0, 1}));
  EXPECT_EQ(n.b, (IntSet{0, 1, 2}));
  EXPECT_EQ(n.record.scale, 3);

  n = canonical_pair(IntSet{0, 1, 5}, IntSet{0, 2});
  EXPECT_EQ(n.a, (IntSet{0, 1, 5}));
  EXPECT_EQ(n.b, (IntSet{0, 2}));
  EXPECT_FALSE(n.record.reflected);

  n = canonical_pair(IntSet{0, 4, 5}, IntSet{0, 2});
  EXPECT_EQ(n.a, (IntSet{0, 1, 5}));
  EXPECT_TRUE(n.record.reflected);
}

TEST(IntSet, NormalizeIdempotentAndInvertible) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 1000; ++t) {
    const Int g = 1 + static_cast<Int>(rng() % 4);
    const auto a = dilate(g, from(oracle::random_set(rng, -20, 20, 7)));
    const auto b = dilate(g, from(oracle::random_set(rng, 5, 40, 7)));
    const NormalizedPair n = normalize_pair(a, b);
    const NormalizedPair again = normalize_pair(n.a, n.b);
    EXPECT_EQ(again.a, n.a);
    EXPECT_EQ(again.b, n.b);
    EXPECT_EQ(n.a.min(), 0);
    EXPECT_EQ(n.b.min(), 0);

    const NormalizedPair c = canonical_pair(a, b);
    const auto [ra, rb] = restore_pair(c.a, c.b, c.record);
    EXPECT_EQ(ra, a);
    EXPECT_EQ(rb, b);
    EXPECT_EQ(sumset(c.a, c.b).size(), sumset(a, b).size());
  }
}

TEST(IntSet, DoublingR) {
  EXPECT_EQ(doubling_r(IntSet{0}, IntSet{0, 1, 2}), -1);
  EXPECT_EQ(doubling_r(IntSet{0, 2, 4, 5, 6}, IntSet{0, 2, 4, 5, 6}), 1);
  EXPECT_EQ(doubling_r(IntSet{0, 1, 2, 3}, IntSet{0, 1, 2}), -1);
}

TEST(IntSet, OrderingIsLexicographic) {
  EXPECT_LT((IntSet{0, 1, 5}), (IntSet{0, 4, 5}));
  EXPECT_LT((IntSet{0, 1}), (IntSet{0, 1, 2}));
  EXPECT_LT((IntSet{0, 1, 9}), (IntSet{0, 2}));
}
