// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Set SUMSETLAB_WORKERS to bound the thread count.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sumsetlab.hpp"

using namespace sumsetlab;

namespace {

unsigned workers() {
  if (const unsigned w = workers_from_env(); w != 0) return w;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::uint64_t stat(const ScanReport& r, const std::string& key) {
  for (const auto& [k, v] : r.stats)
    if (k == key) return v;
  return 0;
}

ScanReport scan(VerifyConfig c) {
  ScanOptions opt;
  opt.workers = workers();
  return run_scan(c, opt);
}

std::string counts(const ScanReport& r) {
  return "pass=" + std::to_string(r.counts.pass) + " fail=" + std::to_string(r.counts.fail) +
         " vacuous=" + std::to_string(r.counts.vacuous);
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------------------

Outcome main_theorem() {
  VerifyConfig c;
  c.mode = ScanMode::MainTheorem;
  c.max_diam = 12;
  const ScanReport r = scan(c);
  return {r.counts.fail == 0 && stat(r, "hypothesis_met") > 0,
          counts(r) + " pairs=" + std::to_string(stat(r, "pairs")) + " hypothesis_met=" + std::to_string(stat(r, "hypothesis_met"))};
}

Outcome classic() {
  VerifyConfig c;
  c.mode = ScanMode::Classic3k4;
  c.max_diam = 12;
  const ScanReport r = scan(c);
  return {r.counts.fail == 0 && r.counts.pass > 0, counts(r) + " hypothesis_met=" + std::to_string(stat(r, "hypothesis_met"))};
}

Outcome redcalc() {
  VerifyConfig c;
  c.mode = ScanMode::Redcalc;
  c.x_max = 500;
  c.y_max = 200;
  const ScanReport r = scan(c);
  const std::uint64_t expected = 500ULL * 198ULL;
  return {r.counts.fail == 0 && r.counts.pass == expected, counts(r)};
}

Outcome rough() {
  VerifyConfig c;
  c.mode = ScanMode::RoughEstimate;
  c.grid_points = 100000;
  const ScanReport r = scan(c);
  return {r.counts.fail == 0 && stat(r, "grid_points") == 100000 && stat(r, "equality_family_tight") == stat(r, "equality_family_points"),
          counts(r) + " equality_family=" + std::to_string(stat(r, "equality_family_points"))};
}

Outcome modred() {
  VerifyConfig c;
  c.mode = ScanMode::Modred;
  c.max_diam = 12;
  const ScanReport r = scan(c);
  return {r.counts.fail == 0 && stat(r, "corollary_evaluations") > 0,
          counts(r) + " delta_evaluations=" + std::to_string(stat(r, "delta_evaluations")) +
              " corollary_evaluations=" + std::to_string(stat(r, "corollary_evaluations"))};
}

Outcome kneser() {
  VerifyConfig c;
  c.mode = ScanMode::Kneser;
  c.max_modulus = 12;
  c.random_pairs = 100000;
  c.random_max_modulus = 60;
  c.seed = 20240601;
  const ScanReport r = scan(c);
  return {r.counts.fail == 0 && stat(r, "random_pairs") == 100000,
          counts(r) + " exhaustive=" + std::to_string(stat(r, "exhaustive_pairs")) + " random=" + std::to_string(stat(r, "random_pairs"))};
}

Outcome kst() {
  VerifyConfig c;
  c.mode = ScanMode::Kst;
  c.max_modulus = 10;
  const ScanReport r = scan(c);
  const bool lemma = stat(r, "type_iii_pairs") == stat(r, "type_iii_lemma_ok") && stat(r, "type_iii_pairs") > 0;
  const bool witnesses = stat(r, "eligible") == stat(r, "type_iv") + stat(r, "decomposition");
  return {r.counts.fail == 0 && lemma && witnesses,
          counts(r) + " eligible=" + std::to_string(stat(r, "eligible")) + " type_iii=" + std::to_string(stat(r, "type_iii_pairs"))};
}

// Lift instances: A, B inside [0, 40] whose residues mod N are progressions
// of difference d with |phi(A)| + |phi(B)| - 1 <= ord(d).
Outcome freiman_lift() {
  constexpr int kInstances = 12000;
  int passed = 0;
  int failed = 0;
  std::string first_failure;
  for (int i = 0; i < kInstances; ++i) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(i) * 2654435761ULL + 17);
    auto pick = [&](Int lo, Int hi) { return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    const Int n = pick(2, 13);
    const Int d = pick(1, n - 1);
    const Int ord = n / std::gcd(n, d);
    const Int m = pick(1, ord);
    const Int k = pick(1, ord - m + 1);
    auto build = [&](Int rows) {
      const Int start = pick(0, n - 1);
      std::vector<Int> xs;
      for (Int j = 0; j < rows; ++j) {
        const Int res = (start + j * d) % n;
        const Int slots = (40 - res) / n + 1;
        std::vector<Int> row;
        for (Int t = 0; t < slots; ++t)
          if (rng() % 3 == 0) row.push_back(res + t * n);
        if (row.empty()) row.push_back(res + pick(0, slots - 1) * n);
        xs.insert(xs.end(), row.begin(), row.end());
      }
      return IntSet::from_elements(xs);
    };
    const IntSet a = build(m);
    const IntSet b = build(k);
    bool ok = true;
    try {
      const Lift l = lift_to_2d(a, b, n, d);
      std::map<Int, Point> fa(l.a_map.begin(), l.a_map.end());
      std::map<Int, Point> fb(l.b_map.begin(), l.b_map.end());
      ok = fa.size() == a.size() && fb.size() == b.size();
      // a + b = a' + b' exactly when the images agree: sums and image points
      // must determine each other.
      std::map<Int, Point> image_of;
      std::map<Point, Int> sum_of;
      for (const auto& [x, p] : fa)
        for (const auto& [y, q] : fb) {
          const Point t = p + q;
          auto [it, fresh] = image_of.try_emplace(x + y, t);
          if (!fresh && it->second != t) ok = false;
          auto [jt, fresh2] = sum_of.try_emplace(t, x + y);
          if (!fresh2 && jt->second != x + y) ok = false;
        }
      if (sumset(l.a_image, l.b_image).size() != sumset(a, b).size()) ok = false;
    } catch (const std::exception& e) {
      ok = false;
      if (first_failure.empty()) first_failure = e.what();
    }
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (first_failure.empty()) first_failure = "instance " + std::to_string(i);
    }
  }
  return {failed == 0 && passed >= 10000,
          "instances=" + std::to_string(kInstances) + " passed=" + std::to_string(passed) +
              (first_failure.empty() ? "" : " first_failure=" + first_failure)};
}

Int shortest_cover(const IntSet& s) {
  const auto xs = s.elements();
  if (xs.size() == 1) return 1;
  Int g = 0;
  for (Int x : xs) g = std::gcd(g, x - xs.front());
  return (xs.back() - xs.front()) / g + 1;
}

Int longest_unit_run(const IntSet& s) {
  const auto xs = s.elements();
  Int best = 1;
  Int run = 1;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    run = xs[i] == xs[i - 1] + 1 ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best;
}

Outcome tightness() {
  int d_count = 0, c_count = 0, a_count = 0, bad = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    ++bad;
    if (first.empty()) first = what;
  };
  for (Int nb = 3; nb <= 10; ++nb)
    for (Int r = 0; r <= nb - 2; ++r)
      for (Int na = nb; na <= 20; ++na) {
        const FamilyInstance f = family(FamilyName::D, {na, nb, r, 1, std::nullopt, false});
        ++d_count;
        const auto sum = static_cast<Int>(sumset(f.a, f.b).size());
        if (sum - na - nb != r || shortest_cover(f.b) != nb + r + 1 || verify_main(f.a, f.b).verdict == Verdict::Fail)
          fail("d " + std::to_string(na) + "," + std::to_string(nb) + "," + std::to_string(r));
      }
  for (Int nb = 4; nb <= 10; nb += 2)
    for (Int s = 1; s <= 3; ++s)
      for (Int na = s; na <= 24; na += s) {
        const FamilyInstance f = family(FamilyName::C, {na, nb, 0, s, std::nullopt, false});
        ++c_count;
        const auto sum = static_cast<Int>(sumset(f.a, f.b).size());
        const Rational thr = threshold_at(na, nb, s);
        bool ok = Rational(sum) == thr && !hypothesis_from_sizes(na, nb, sum).holds;
        if (s == compute_s(na, nb)) ok = ok && theorem_threshold(na, nb, s) == Rational(sum);
        if (!ok) fail("c " + std::to_string(na) + "," + std::to_string(nb) + "," + std::to_string(s));
      }
  for (Int na = 3; na <= 10; ++na)
    for (Int nb = 3; nb <= 10; ++nb)
      for (Int r = -1; r <= std::min(na, nb) - 3; ++r) {
        const FamilyInstance f = family(FamilyName::A, {na, nb, r, 1, std::nullopt, false});
        ++a_count;
        const IntSet s = sumset(f.a, f.b);
        const auto sum = static_cast<Int>(s.size());
        const bool ok = sum - na - nb == r && shortest_cover(f.a) == na + r + 1 && shortest_cover(f.b) == nb + r + 1 &&
                        longest_unit_run(s) == na + nb - 1 && verify_classic_3k4(f.a, f.b).verdict != Verdict::Fail;
        if (!ok) fail("a " + std::to_string(na) + "," + std::to_string(nb) + "," + std::to_string(r));
      }
  VerifyConfig c;
  c.mode = ScanMode::Families;
  const ScanReport r = scan(c);
  return {bad == 0 && r.counts.fail == 0,
          "d=" + std::to_string(d_count) + " c=" + std::to_string(c_count) + " a=" + std::to_string(a_count) +
              " families_scan " + counts(r) + (first.empty() ? "" : " first_failure=" + first)};
}

Outcome corollary() {
  VerifyConfig c;
  c.mode = ScanMode::Corollary;
  c.max_diam = 12;
  const ScanReport r = scan(c);
  return {r.counts.fail == 0 && stat(r, "implication_failures") == 0 && stat(r, "corollary_hypothesis_met") > 0,
          counts(r) + " corollary_hypothesis_met=" + std::to_string(stat(r, "corollary_hypothesis_met")) +
              " implication_failures=" + std::to_string(stat(r, "implication_failures"))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 main-theorem scan, max A, max B <= 12", main_theorem},
      {"2 classic 3k-4 scan, max A, max B <= 12", classic},
      {"3 redcalc closed form = brute minimum on [1,500]x[3,200]", redcalc},
      {"4 rough estimate on 1e5 grid triples plus equality family", rough},
      {"5 delta and corollary modred bounds, diam <= 12", modred},
      {"6 Kneser exhaustive n <= 12 plus 1e5 random n <= 60", kneser},
      {"7 KST witnesses n <= 10 and type-III lemma", kst},
      {"8 Freiman lift quadruple test, >= 1e4 instances, diam <= 40", freiman_lift},
      {"9 tightness families (a), (c), (d)", tightness},
      {"10 corollary hypothesis implies theorem hypothesis; corollary verified", corollary},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.ok) ++failures;
    std::printf("%s  criterion %s  [%s] (%.1fs)\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
