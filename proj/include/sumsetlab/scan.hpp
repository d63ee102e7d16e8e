#pragma once

// Exhaustive and sampled verification scans. Work is split into numbered
// units; units are processed by a pool of workers and merged in unit order,
// so the report depends only on the configuration.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <tuple>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/certify.hpp"
#include "sumsetlab/cyclic.hpp"
#include "sumsetlab/intset.hpp"
#include "sumsetlab/modred.hpp"
#include "sumsetlab/serialize.hpp"

namespace sumsetlab {


enum class ScanMode { MainTheorem, Classic3k4, Corollary, Families, Kst, Kneser, Modred, Redcalc, RoughEstimate };

inline std::string_view to_string(ScanMode m) {
  switch (m) {
    case ScanMode::MainTheorem: return "main-theorem";
    case ScanMode::Classic3k4: return "classic-3k4";
    case ScanMode::Corollary: return "corollary";
    case ScanMode::Families: return "families";
    case ScanMode::Kst: return "kst";
    case ScanMode::Kneser: return "kneser";
    case ScanMode::Modred: return "modred";
    case ScanMode::Redcalc: return "redcalc";
    case ScanMode::RoughEstimate: return "rough-estimate";
  }
  return "?";
}

/// Accepts "main-theorem", "main_theorem", and a trailing "-scan" ("kst_scan").
inline ScanMode scan_mode_from_string(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '_', '-');
  if (s.size() > 5 && s.ends_with("-scan")) s.resize(s.size() - 5);
  for (ScanMode m : {ScanMode::MainTheorem, ScanMode::Classic3k4, ScanMode::Corollary, ScanMode::Families,
                     ScanMode::Kst, ScanMode::Kneser, ScanMode::Modred, ScanMode::Redcalc, ScanMode::RoughEstimate})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown scan mode: " + std::string(s));
}

struct Shard {
  Int index = 0;
  Int count = 1;
  friend bool operator==(const Shard&, const Shard&) = default;
};

/// Everything that determines a scan's output. Worker count is deliberately
/// not part of it.
struct VerifyConfig {
  ScanMode mode = ScanMode::MainTheorem;
  /// Pair modes: A, B ⊆ [0, max_diam].
  Int max_diam = 10;
  /// Zero means unbounded.
  Int max_size_a = 0;
  Int max_size_b = 0;
  Shard shard;
  /// Kneser and KST modes: every modulus in [1, max_modulus].
  Int max_modulus = 10;
  /// Kneser mode: random pairs with modulus up to random_max_modulus.
  Int random_pairs = 0;
  Int random_max_modulus = 60;
  std::uint64_t seed = 1;
  /// Redcalc mode grid; rough-estimate mode grid size.
  Int x_max = 500;
  Int y_max = 200;
  Int grid_points = 100000;

  friend bool operator==(const VerifyConfig&, const VerifyConfig&) = default;
};

inline constexpr Int kMaxExhaustiveDiam = 16;
inline constexpr Int kMaxModredDiam = 12;
inline constexpr Int kMaxKneserModulus = 14;
inline constexpr Int kMaxRandomModulus = 4096;

inline void validate(const VerifyConfig& c) {
  if (c.shard.count < 1 || c.shard.index < 0 || c.shard.index >= c.shard.count)
    throw std::invalid_argument("shard index must lie in [0, count)");
  switch (c.mode) {
    case ScanMode::MainTheorem:
    case ScanMode::Classic3k4:
    case ScanMode::Corollary:
      if (c.max_diam < 1 || c.max_diam > kMaxExhaustiveDiam)
        throw std::invalid_argument("max_diam must lie in [1, " + std::to_string(kMaxExhaustiveDiam) + "]");
      break;
    case ScanMode::Modred:
      if (c.max_diam < 2 || c.max_diam > kMaxModredDiam)
        throw std::invalid_argument("modred scan: max_diam must lie in [2, " + std::to_string(kMaxModredDiam) + "]");
      break;
    case ScanMode::Kneser:
      if (c.max_modulus < 1 || c.max_modulus > kMaxKneserModulus)
        throw std::invalid_argument("kneser scan: max_modulus must lie in [1, " + std::to_string(kMaxKneserModulus) + "]");
      if (c.random_pairs < 0 || c.random_max_modulus < 1 || c.random_max_modulus > kMaxRandomModulus)
        throw std::invalid_argument("kneser scan: invalid random sampling parameters");
      break;
    case ScanMode::Kst:
      if (c.max_modulus < 2 || c.max_modulus > kKstMaxModulus)
        throw std::invalid_argument("kst scan: max_modulus must lie in [2, " + std::to_string(kKstMaxModulus) + "]");
      break;
    case ScanMode::Redcalc:
      if (c.x_max < 1 || c.y_max < 3) throw std::invalid_argument("redcalc scan: need x_max >= 1 and y_max >= 3");
      break;
    case ScanMode::RoughEstimate:
      if (c.grid_points < 1) throw std::invalid_argument("rough-estimate scan: grid_points must be positive");
      break;
    case ScanMode::Families:
      break;
  }
}

struct ScanCounts {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t vacuous = 0;

  ScanCounts& operator+=(const ScanCounts& o) {
    pass += o.pass;
    fail += o.fail;
    vacuous += o.vacuous;
    return *this;
  }
  void add(Verdict v) {
    switch (v) {
      case Verdict::Pass: ++pass; break;
      case Verdict::Fail: ++fail; break;
      case Verdict::Vacuous: ++vacuous; break;
    }
  }
  friend bool operator==(const ScanCounts&, const ScanCounts&) = default;
};

inline constexpr std::size_t kMaxStoredFailures = 1000;

struct ScanReport {
  VerifyConfig config;
  ScanCounts counts;
  /// Mode-specific tallies (hypothesis met, equality cases, ...), in a fixed order.
  std::vector<std::pair<std::string, std::uint64_t>> stats;
  /// The first kMaxStoredFailures FAIL certificates, in unit order.
  std::vector<Json> fail_certificates;
  double wall_time_ms = 0;
};

struct ScanOptions {
  unsigned workers = 1;
  /// Called once per FAIL certificate as soon as it is found; calls are
  /// serialized.
  std::function<void(const Json&)> on_fail;
  /// Called with (units done, units total); serialized.
  std::function<void(std::size_t, std::size_t)> on_progress;
};


inline void to_json(Json& j, const VerifyConfig& c) {
  j = Json::object();
  j["mode"] = to_string(c.mode);
  j["max_diam"] = c.max_diam;
  j["max_size_a"] = c.max_size_a;
  j["max_size_b"] = c.max_size_b;
  j["shard"] = {{"index", c.shard.index}, {"count", c.shard.count}};
  j["max_modulus"] = c.max_modulus;
  j["random_pairs"] = c.random_pairs;
  j["random_max_modulus"] = c.random_max_modulus;
  j["seed"] = c.seed;
  j["x_max"] = c.x_max;
  j["y_max"] = c.y_max;
  j["grid_points"] = c.grid_points;
}

inline void from_json(const Json& j, VerifyConfig& c) {
  c = VerifyConfig{};
  c.mode = scan_mode_from_string(j.at("mode").get<std::string>());
  c.max_diam = j.at("max_diam").get<Int>();
  c.max_size_a = j.at("max_size_a").get<Int>();
  c.max_size_b = j.at("max_size_b").get<Int>();
  c.shard.index = j.at("shard").at("index").get<Int>();
  c.shard.count = j.at("shard").at("count").get<Int>();
  c.max_modulus = j.at("max_modulus").get<Int>();
  c.random_pairs = j.at("random_pairs").get<Int>();
  c.random_max_modulus = j.at("random_max_modulus").get<Int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.x_max = j.at("x_max").get<Int>();
  c.y_max = j.at("y_max").get<Int>();
  c.grid_points = j.at("grid_points").get<Int>();
}

inline void to_json(Json& j, const ScanCounts& c) {
  j = Json::object();
  j["pass"] = c.pass;
  j["fail"] = c.fail;
  j["vacuous"] = c.vacuous;
}

inline void from_json(const Json& j, ScanCounts& c) {
  c.pass = j.at("pass").get<std::uint64_t>();
  c.fail = j.at("fail").get<std::uint64_t>();
  c.vacuous = j.at("vacuous").get<std::uint64_t>();
}

inline void to_json(Json& j, const ScanReport& r) {
  j = Json::object();
  j["mode"] = to_string(r.config.mode);
  j["config"] = r.config;
  j["counts"] = r.counts;
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  j["stats"] = stats;
  j["fail_certificates"] = r.fail_certificates;
  j["wall_time_ms"] = r.wall_time_ms;
}

inline void from_json(const Json& j, ScanReport& r) {
  r = ScanReport{};
  r.config = j.at("config").get<VerifyConfig>();
  r.counts = j.at("counts").get<ScanCounts>();
  for (const auto& [k, v] : j.at("stats").items()) r.stats.emplace_back(k, v.get<std::uint64_t>());
  r.fail_certificates = j.at("fail_certificates").get<std::vector<Json>>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
}

namespace detail {

struct UnitResult {
  ScanCounts counts;
  std::vector<std::uint64_t> stats;
  std::vector<Json> fails;

  void fail(Json j) {
    if (fails.size() < kMaxStoredFailures) fails.push_back(std::move(j));
  }
};

// Runs unit(i, result) for every unit i owned by the shard and returns the
// results in unit order.
template <typename F>
std::vector<UnitResult> run_units(std::size_t total, std::size_t nstats, const Shard& shard, const ScanOptions& opt,
                                  F&& unit) {
  std::vector<std::size_t> owned;
  for (std::size_t i = 0; i < total; ++i)
    if (static_cast<Int>(i % static_cast<std::size_t>(shard.count)) == shard.index) owned.push_back(i);
  std::vector<UnitResult> results(owned.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;
  std::exception_ptr error;
  auto work = [&] {
    try {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= owned.size()) return;
        UnitResult& r = results[k];
        r.stats.assign(nstats, 0);
        unit(owned[k], r);
        const std::lock_guard lock(mu);
        if (opt.on_fail)
          for (const auto& j : r.fails) opt.on_fail(j);
        ++done;
        if (opt.on_progress) opt.on_progress(done, owned.size());
      }
    } catch (...) {
      const std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      next = owned.size();
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(opt.workers, 1, std::max<std::size_t>(1, owned.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

inline void merge_into(ScanReport& report, const std::vector<std::string>& names, std::vector<UnitResult>&& results) {
  std::vector<std::uint64_t> stats(names.size(), 0);
  for (auto& r : results) {
    report.counts += r.counts;
    for (std::size_t i = 0; i < names.size(); ++i) stats[i] += r.stats[i];
    for (auto& j : r.fails)
      if (report.fail_certificates.size() < kMaxStoredFailures) report.fail_certificates.push_back(std::move(j));
  }
  for (std::size_t i = 0; i < names.size(); ++i) report.stats.emplace_back(names[i], stats[i]);
}

// A subset of [0, D] containing 0.
struct SubsetEntry {
  IntSet set{0};
  Int size = 1;
  Int max = 0;
  Int gcd = 0;
  // Sign of (max S - S) <=> S.
  int reflect_cmp = 0;
};

inline std::vector<SubsetEntry> subset_table(Int d) {
  std::vector<SubsetEntry> out;
  const std::uint64_t count = std::uint64_t{1} << d;
  out.reserve(count);
  std::vector<Int> xs;
  for (std::uint64_t m = 0; m < count; ++m) {
    const std::uint64_t mask = (m << 1) | 1;
    xs.clear();
    for (Int i = 0; i <= d; ++i)
      if ((mask >> i) & 1) xs.push_back(i);
    SubsetEntry e;
    e.set = IntSet::from_elements(xs);
    e.size = static_cast<Int>(xs.size());
    e.max = xs.back();
    e.gcd = gcd_star(e.set);
    const auto c = translate(dilate(-1, e.set), e.max) <=> e.set;
    e.reflect_cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
    out.push_back(std::move(e));
  }
  return out;
}

// The pair is its own canonical representative: not lexicographically larger
// than its reflection.
inline bool is_canonical(const SubsetEntry& a, const SubsetEntry& b) {
  return a.reflect_cmp > 0 || (a.reflect_cmp == 0 && b.reflect_cmp >= 0);
}

template <typename F>
void for_each_canonical_pair(const std::vector<SubsetEntry>& table, std::size_t ia, const VerifyConfig& c, F&& f) {
  const SubsetEntry& a = table[ia];
  if (c.max_size_a != 0 && a.size > c.max_size_a) return;
  for (const SubsetEntry& b : table) {
    if (c.max_size_b != 0 && b.size > c.max_size_b) continue;
    if (std::gcd(a.gcd, b.gcd) > 1) continue;
    if (!is_canonical(a, b)) continue;
    f(a, b);
  }
}

inline CyclicSet cyclic_from_mask(Int n, std::uint64_t mask) {
  CyclicSet s(n);
  for (Int i = 0; i < n; ++i)
    if ((mask >> i) & 1) s.insert(i);
  return s;
}

// All nonempty subsets of Z/nZ, by mask, for n in [0, max_n].
inline std::vector<std::vector<CyclicSet>> cyclic_tables(Int max_n) {
  std::vector<std::vector<CyclicSet>> out(static_cast<std::size_t>(max_n) + 1);
  for (Int n = 1; n <= max_n; ++n) {
    auto& t = out[static_cast<std::size_t>(n)];
    const std::uint64_t count = std::uint64_t{1} << n;
    t.reserve(count);
    t.emplace_back(n);
    for (std::uint64_t m = 1; m < count; ++m) t.push_back(cyclic_from_mask(n, m));
  }
  return out;
}

inline Json pair_json(const CyclicSet& x, const CyclicSet& y) {
  Json j;
  j["x"] = to_json_value(x);
  j["y"] = to_json_value(y);
  return j;
}

// Largest |A+B| for which the s-threshold hypothesis holds, per (|A|, |B|);
// -1 when it never holds.
inline std::vector<std::vector<Int>> hypothesis_table(Int max_size) {
  std::vector<std::vector<Int>> t(static_cast<std::size_t>(max_size) + 1,
                                  std::vector<Int>(static_cast<std::size_t>(max_size) + 1, -1));
  for (Int a = 1; a <= max_size; ++a)
    for (Int b = 3; b <= max_size; ++b)
      for (Int sum = std::max(a, b); sum <= a * b; ++sum) {
        if (!hypothesis_from_sizes(a, b, sum).holds) break;
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = sum;
      }
  return t;
}

inline ScanReport scan_main(const VerifyConfig& c, const ScanOptions& opt) {
  const auto table = subset_table(c.max_diam);
  const auto hyp = hypothesis_table(c.max_diam + 1);
  const std::vector<std::string> names{"pairs", "b_below_3", "hypothesis_met", "cover_equality"};
  auto results = run_units(table.size(), names.size(), c.shard, opt, [&](std::size_t ia, UnitResult& r) {
    for_each_canonical_pair(table, ia, c, [&](const SubsetEntry& a, const SubsetEntry& b) {
      ++r.stats[0];
      if (b.size < 3) {
        ++r.stats[1];
        r.counts.add(Verdict::Vacuous);
        return;
      }
      const auto sum = static_cast<Int>(sumset(a.set, b.set).size());
      if (sum > hyp[static_cast<std::size_t>(a.size)][static_cast<std::size_t>(b.size)]) {
        r.counts.add(Verdict::Vacuous);
        return;
      }
      const Certificate cert = verify_main_sized(a.set, b.set, sum);
      r.counts.add(cert.verdict);
      if (cert.hypothesis_met) ++r.stats[2];
      if (cert.hypothesis_met && cert.cover.len == cert.cover_bound) ++r.stats[3];
      if (cert.verdict == Verdict::Fail) r.fail(Json(cert));
    });
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_classic(const VerifyConfig& c, const ScanOptions& opt) {
  const auto table = subset_table(c.max_diam);
  const std::vector<std::string> names{"pairs", "hypothesis_met", "translates", "all_bounds_tight"};
  auto results = run_units(table.size(), names.size(), c.shard, opt, [&](std::size_t ia, UnitResult& r) {
    for_each_canonical_pair(table, ia, c, [&](const SubsetEntry& a, const SubsetEntry& b) {
      ++r.stats[0];
      const auto sum = static_cast<Int>(sumset(a.set, b.set).size());
      const Int delta = a.set == b.set ? 1 : 0;
      if (sum - a.size - b.size > std::min(a.size, b.size) - 3 - delta) {
        r.counts.add(Verdict::Vacuous);
        return;
      }
      const Certificate3k4 cert = verify_classic_3k4(a.set, b.set);
      r.counts.add(cert.verdict);
      if (cert.hypothesis_met) ++r.stats[1];
      if (cert.hypothesis_met && delta == 1) ++r.stats[2];
      if (cert.hypothesis_met && cert.cover_a.len == a.size + cert.r + 1 && cert.cover_b.len == b.size + cert.r + 1 &&
          cert.longest_run == a.size + b.size - 1)
        ++r.stats[3];
      if (cert.verdict == Verdict::Fail) r.fail(Json(cert));
    });
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_corollary(const VerifyConfig& c, const ScanOptions& opt) {
  const auto table = subset_table(c.max_diam);
  const std::vector<std::string> names{"pairs", "b_at_most_2", "corollary_hypothesis_met", "theorem_hypothesis_met",
                                       "implication_failures"};
  auto results = run_units(table.size(), names.size(), c.shard, opt, [&](std::size_t ia, UnitResult& r) {
    for_each_canonical_pair(table, ia, c, [&](const SubsetEntry& a, const SubsetEntry& b) {
      ++r.stats[0];
      const auto sum = static_cast<Int>(sumset(a.set, b.set).size());
      if (b.size >= 3 && !corollary_hypothesis_from_sizes(a.size, b.size, sum)) {
        r.counts.add(Verdict::Vacuous);
        return;
      }
      const CorollaryCertificate cert = verify_corollary_sized(a.set, b.set, sum);
      r.counts.add(cert.verdict);
      if (b.size <= 2) ++r.stats[1];
      if (cert.hypothesis_met) ++r.stats[2];
      if (cert.hypothesis_met && cert.theorem_hypothesis_met) ++r.stats[3];
      if (cert.hypothesis_met && !cert.theorem_hypothesis_met) ++r.stats[4];
      if (cert.verdict == Verdict::Fail) r.fail(Json(cert));
    });
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_families(const VerifyConfig& c, const ScanOptions& opt) {
  const auto grid = family_grid();
  const std::vector<std::string> names{"instances", "family_a", "family_b", "family_c", "family_d"};
  auto results = run_units(grid.size(), names.size(), c.shard, opt, [&](std::size_t i, UnitResult& r) {
    const auto& [name, params] = grid[i];
    const FamilyInstance f = family(name, params);
    const FamilyCheck chk = check_family(f);
    ++r.stats[0];
    ++r.stats[1 + static_cast<std::size_t>(name)];
    r.counts.add(chk.ok ? Verdict::Pass : Verdict::Fail);
    if (!chk.ok) r.fail(to_json_value(f, chk));
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_kneser(const VerifyConfig& c, const ScanOptions& opt) {
  const auto tables = cyclic_tables(c.max_modulus);
  std::vector<std::pair<Int, std::size_t>> units;
  for (Int n = 1; n <= c.max_modulus; ++n)
    for (std::size_t m = 1; m < tables[static_cast<std::size_t>(n)].size(); ++m) units.emplace_back(n, m);
  const std::size_t exhaustive = units.size();
  constexpr Int kChunk = 1024;
  const auto chunks = static_cast<std::size_t>((c.random_pairs + kChunk - 1) / kChunk);
  const std::vector<std::string> names{"exhaustive_pairs", "random_pairs", "periodic_sumsets", "equality_cases"};
  auto check = [](const CyclicSet& x, const CyclicSet& y, UnitResult& r) {
    const KneserReport k = kneser_check(x, y);
    r.counts.add(k.holds ? Verdict::Pass : Verdict::Fail);
    if (!k.stabilizer.is_trivial()) ++r.stats[2];
    if (k.sumset_size == k.bound) ++r.stats[3];
    if (!k.holds) {
      Json j = pair_json(x, y);
      j["report"] = k;
      r.fail(std::move(j));
    }
  };
  auto results = run_units(exhaustive + chunks, names.size(), c.shard, opt, [&](std::size_t u, UnitResult& r) {
    if (u < exhaustive) {
      const auto& t = tables[static_cast<std::size_t>(units[u].first)];
      const CyclicSet& x = t[units[u].second];
      for (std::size_t m = 1; m < t.size(); ++m) {
        ++r.stats[0];
        check(x, t[m], r);
      }
      return;
    }
    const auto chunk = static_cast<Int>(u - exhaustive);
    std::seed_seq seq{static_cast<std::uint64_t>(c.seed), static_cast<std::uint64_t>(chunk)};
    std::mt19937_64 rng(seq);
    auto random_set = [&](Int n) {
      const auto density = static_cast<std::uint64_t>(1 + rng() % 99);
      CyclicSet s(n);
      for (Int i = 0; i < n; ++i)
        if (rng() % 100 < density) s.insert(i);
      if (s.empty()) s.insert(static_cast<Int>(rng() % static_cast<std::uint64_t>(n)));
      return s;
    };
    const Int count = std::min(kChunk, c.random_pairs - chunk * kChunk);
    for (Int i = 0; i < count; ++i) {
      const Int n = 1 + static_cast<Int>(rng() % static_cast<std::uint64_t>(c.random_max_modulus));
      const CyclicSet x = random_set(n);
      const CyclicSet y = random_set(n);
      ++r.stats[1];
      check(x, y, r);
    }
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_kst(const VerifyConfig& c, const ScanOptions& opt) {
  const auto tables = cyclic_tables(c.max_modulus);
  std::vector<std::pair<Int, std::size_t>> units;
  for (Int n = 2; n <= c.max_modulus; ++n)
    for (std::size_t m = 1; m < tables[static_cast<std::size_t>(n)].size(); ++m) units.emplace_back(n, m);
  const std::vector<std::string> names{"pairs",          "eligible",       "type_iv", "decomposition",
                                       "type_iii_pairs", "type_iii_lemma_ok"};
  auto results = run_units(units.size(), names.size(), c.shard, opt, [&](std::size_t u, UnitResult& r) {
    const auto& t = tables[static_cast<std::size_t>(units[u].first)];
    const CyclicSet& x = t[units[u].second];
    for (std::size_t m = 1; m < t.size(); ++m) {
      const CyclicSet& y = t[m];
      ++r.stats[0];
      bool failed = false;
      Json j = pair_json(x, y);
      if (classify_in_span(x, y).tag == ElementaryTag::III) {
        ++r.stats[4];
        if (type3_punctured_check(x, y)) {
          ++r.stats[5];
        } else {
          failed = true;
          j["type_iii_lemma"] = false;
        }
      }
      const bool eligible = kst_eligible(x, y);
      if (eligible) {
        ++r.stats[1];
        const KSTWitness w = kst_witness(x, y);
        if (w.outcome == KstOutcome::TypeIV) ++r.stats[2];
        if (w.outcome == KstOutcome::Decomposition) ++r.stats[3];
        if (w.outcome == KstOutcome::Falsification) {
          failed = true;
          j["witness"] = w;
        }
      }
      r.counts.add(failed ? Verdict::Fail : (eligible ? Verdict::Pass : Verdict::Vacuous));
      if (failed) r.fail(std::move(j));
    }
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_modred(const VerifyConfig& c, const ScanOptions& opt) {
  const auto table = subset_table(c.max_diam);
  const auto nmax = static_cast<std::size_t>(c.max_diam);
  // layers[n][i]: subset i layered modulo n.
  std::vector<std::vector<LayeredSet>> layers(nmax + 1);
  std::vector<std::vector<Subgroup>> groups(nmax + 1);
  for (std::size_t n = 2; n <= nmax; ++n) {
    groups[n] = subgroups(static_cast<Int>(n));
    layers[n].reserve(table.size());
    for (const auto& e : table) layers[n].push_back(layered(e.set, static_cast<Int>(n)));
  }
  const std::vector<std::string> names{"pairs", "delta_evaluations", "delta_tight", "corollary_evaluations",
                                       "corollary_tight"};
  auto results = run_units(table.size(), names.size(), c.shard, opt, [&](std::size_t ia, UnitResult& r) {
    for_each_canonical_pair(table, ia, c, [&](const SubsetEntry& a, const SubsetEntry& b) {
      ++r.stats[0];
      const auto sum = static_cast<Int>(sumset(a.set, b.set).size());
      const auto ib = static_cast<std::size_t>(&b - table.data());
      bool ok = true;
      for (std::size_t n = 2; n <= nmax; ++n) {
        const LayeredSet& la = layers[n][ia];
        const LayeredSet& lb = layers[n][ib];
        const LayeredSet lc = layered_sumset(la, lb);
        const bool corollary = static_cast<Int>(n) == b.max;
        for (const Subgroup& h : groups[n]) {
          const Int v = delta_bound_value(la, lb, lc, h);
          ++r.stats[1];
          if (v == sum) ++r.stats[2];
          auto report = [&](const char* kind, Int bound) {
            ok = false;
            Json j;
            j["a"] = to_json_value(a.set);
            j["b"] = to_json_value(b.set);
            j["sumset_size"] = sum;
            j["n"] = n;
            j["subgroup"] = h;
            j["bound_kind"] = kind;
            j["bound"] = bound;
            r.fail(std::move(j));
          };
          if (v > sum) report("delta", v);
          if (corollary) {
            const Int w = corollary_bound_value(la, lb, lc, h);
            ++r.stats[3];
            if (w == sum) ++r.stats[4];
            if (w > sum) report("corollary", w);
          }
        }
      }
      r.counts.add(ok ? Verdict::Pass : Verdict::Fail);
    });
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

inline ScanReport scan_redcalc(const VerifyConfig& c, const ScanOptions& opt) {
  const std::vector<std::string> names{"points"};
  auto results = run_units(static_cast<std::size_t>(c.x_max), names.size(), c.shard, opt, [&](std::size_t u, UnitResult& r) {
    const auto x = static_cast<Int>(u) + 1;
    for (Int y = 3; y <= c.y_max; ++y) {
      ++r.stats[0];
      const Int closed = redcalc_closed_form(x, y);
      const RedcalcMin brute = redcalc_brute_min(x, y);
      if (closed == brute.value) {
        r.counts.add(Verdict::Pass);
        continue;
      }
      r.counts.add(Verdict::Fail);
      Json j;
      j["x"] = x;
      j["y"] = y;
      j["closed_form"] = closed;
      j["brute_min"] = {{"value", brute.value}, {"m", brute.m}, {"n", brute.n}};
      r.fail(std::move(j));
    }
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

/// Deterministic rational grid point t: x > 0, y > 2, s > 0.
inline std::tuple<Rational, Rational, Rational> rough_grid_point(std::uint64_t t) {
  const auto q = [](std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); };
  const Rational x = q(1 + (t * 7919) % 1000, 1 + (t * 104729) % 37);
  const Rational y = 2 + q(1 + (t * 1299709) % 500, 1 + (t * 15485863) % 29);
  const Rational s = q(1 + (t * 32452843) % 300, 1 + (t * 49979687) % 41);
  return {x, y, s};
}

/// Point i of the equality family 2x = (y - 2) s^2.
inline std::tuple<Rational, Rational, Rational> rough_equality_point(std::uint64_t i) {
  const auto q = [](std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); };
  const Rational y = 2 + q(1 + i % 97, 1 + i % 13);
  const Rational s = q(1 + (i * 7) % 50, 1 + i % 11);
  return {(y - 2) * s * s / 2, y, s};
}

inline constexpr std::uint64_t kRoughEqualityPoints = 1000;

inline ScanReport scan_rough(const VerifyConfig& c, const ScanOptions& opt) {
  constexpr std::uint64_t kChunk = 1024;
  const auto points = static_cast<std::uint64_t>(c.grid_points);
  const std::size_t chunks = static_cast<std::size_t>((points + kChunk - 1) / kChunk);
  const std::vector<std::string> names{"grid_points", "tight_grid_points", "equality_family_points",
                                       "equality_family_tight"};
  auto text = [](const Rational& v) { return v.str(); };
  auto results = run_units(chunks + 1, names.size(), c.shard, opt, [&](std::size_t u, UnitResult& r) {
    auto check = [&](const Rational& x, const Rational& y, const Rational& s, bool equality) {
      const bool holds = rough_estimate_holds(x, y, s);
      const bool tight = rough_estimate_is_tight(x, y, s);
      ++r.stats[equality ? 2 : 0];
      if (tight) ++r.stats[equality ? 3 : 1];
      const bool ok = holds && (!equality || tight);
      r.counts.add(ok ? Verdict::Pass : Verdict::Fail);
      if (!ok) r.fail(Json{{"x", text(x)}, {"y", text(y)}, {"s", text(s)}, {"equality_family", equality}});
    };
    if (u < chunks) {
      const std::uint64_t end = std::min<std::uint64_t>(points, (u + 1) * kChunk);
      for (std::uint64_t t = u * kChunk; t < end; ++t) {
        const auto [x, y, s] = rough_grid_point(t);
        check(x, y, s, false);
      }
      return;
    }
    for (std::uint64_t i = 0; i < kRoughEqualityPoints; ++i) {
      const auto [x, y, s] = rough_equality_point(i);
      check(x, y, s, true);
    }
  });
  ScanReport report;
  merge_into(report, names, std::move(results));
  return report;
}

}  // namespace detail

/// Runs the scan described by `config`. Throws std::invalid_argument on an
/// invalid configuration.
inline ScanReport run_scan(const VerifyConfig& config, const ScanOptions& options = {}) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  ScanReport report;
  switch (config.mode) {
    case ScanMode::MainTheorem: report = detail::scan_main(config, options); break;
    case ScanMode::Classic3k4: report = detail::scan_classic(config, options); break;
    case ScanMode::Corollary: report = detail::scan_corollary(config, options); break;
    case ScanMode::Families: report = detail::scan_families(config, options); break;
    case ScanMode::Kst: report = detail::scan_kst(config, options); break;
    case ScanMode::Kneser: report = detail::scan_kneser(config, options); break;
    case ScanMode::Modred: report = detail::scan_modred(config, options); break;
    case ScanMode::Redcalc: report = detail::scan_redcalc(config, options); break;
    case ScanMode::RoughEstimate: report = detail::scan_rough(config, options); break;
  }
  report.config = config;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Worker count from SUMSETLAB_WORKERS; 0 when unset or not a positive integer.
inline unsigned workers_from_env() {
  const char* v = std::getenv("SUMSETLAB_WORKERS");
  if (v == nullptr) return 0;
  try {
    const long n = std::stol(v);
    return n >= 1 ? static_cast<unsigned>(n) : 0U;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace sumsetlab
