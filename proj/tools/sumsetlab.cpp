// Command-line front end. Exit codes: 0 when every verdict is PASS or
// VACUOUS, 2 on any FAIL, 1 on usage or parse errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "sumsetlab.hpp"

namespace {

using namespace sumsetlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Literal from --x or from --x-file.
std::string literal(const std::string& inline_value, const std::string& file, const char* what) {
  if (!file.empty()) return read_file(file);
  if (inline_value.empty()) throw std::invalid_argument(std::string("missing ") + what);
  return inline_value;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  os << prefix;
  for (std::size_t i = prefix.size(); i < 28; ++i) os << ' ';
  os << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

void emit(const Json& j, const std::string& format) {
  if (format == "table") {
    flatten(j, "", std::cout);
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

bool has_fail(const Json& j) {
  if (j.is_object()) {
    if (auto it = j.find("verdict"); it != j.end() && it->is_string() && it->get<std::string>() == "FAIL") return true;
    for (const auto& [k, v] : j.items())
      if (k != "fail_certificates" && has_fail(v)) return true;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (has_fail(v)) return true;
  }
  return false;
}

Shard parse_shard(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("--shard expects i/k");
  Shard sh;
  try {
    sh.index = std::stoll(s.substr(0, slash));
    sh.count = std::stoll(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("--shard expects i/k");
  }
  return sh;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sumset structure checks for finite sets of integers and cyclic groups"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  std::string a_text, b_text, a_file, b_file;
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--a", a_text, "Set A: [0,2,4] or 0,2,4");
    sub->add_option("--b", b_text, "Set B");
    sub->add_option("--a-file", a_file, "Read A from a file");
    sub->add_option("--b-file", b_file, "Read B from a file");
  };

  auto* analyze = app.add_subcommand("analyze", "Certificates for one pair (A, B)");
  add_pair(analyze);

  VerifyConfig cfg;
  std::string mode = "main-theorem";
  std::string shard = "0/1";
  std::string output;
  unsigned workers = 0;
  bool quiet = false;
  auto* scan = app.add_subcommand("scan", "Exhaustive or sampled verification scan");
  scan->add_option("--mode", mode, "main-theorem, classic-3k4, corollary, families, kst, kneser, modred, redcalc, rough-estimate");
  scan->add_option("--max-diam", cfg.max_diam, "A, B inside [0, max-diam]");
  scan->add_option("--max-size-a", cfg.max_size_a, "Skip |A| above this (0: no limit)");
  scan->add_option("--max-size-b", cfg.max_size_b, "Skip |B| above this (0: no limit)");
  scan->add_option("--max-modulus", cfg.max_modulus, "Kneser and KST: moduli 1..n");
  scan->add_option("--random-pairs", cfg.random_pairs, "Kneser: random pairs");
  scan->add_option("--random-max-modulus", cfg.random_max_modulus, "Kneser: modulus bound for random pairs");
  scan->add_option("--seed", cfg.seed, "Seed for sampled scans");
  scan->add_option("--x-max", cfg.x_max, "Redcalc: x in [1, x-max]");
  scan->add_option("--y-max", cfg.y_max, "Redcalc: y in [3, y-max]");
  scan->add_option("--grid-points", cfg.grid_points, "Rough estimate: grid size");
  scan->add_option("--shard", shard, "Shard i/k: units with index mod k == i");
  scan->add_option("--workers", workers, "Worker threads (default: SUMSETLAB_WORKERS, else hardware threads)");
  scan->add_option("--output", output, "Also write the JSON report here");
  scan->add_flag("--quiet", quiet, "No progress on stderr");

  FamilyParams fp;
  std::string fname = "a";
  std::optional<Int> fn;
  auto* fam = app.add_subcommand("family", "Generate and check an extremal example");
  fam->add_option("name,--name", fname, "a, b, c or d")->check(CLI::IsMember({"a", "b", "c", "d"}));
  fam->add_option("--size-a", fp.size_a, "|A|")->required();
  fam->add_option("--size-b", fp.size_b, "|B|");
  fam->add_option("--r", fp.r, "r");
  fam->add_option("--s", fp.s, "s (family c)");
  fam->add_option("--n", fn, "Separation N (families b, c)");
  fam->add_flag("--same", fp.b_equals_a, "Family b with B = A");

  Int modulus = 0;
  Int gen = 0;
  auto* mr = app.add_subcommand("modred", "Layered reduction bounds for one pair");
  add_pair(mr);
  mr->add_option("--n", modulus, "Modulus (default: max B - min B, at least 2)");
  mr->add_option("--subgroup", gen, "Subgroup generator g | n (default: every subgroup)");

  Int lift_d = 0;
  auto* lift = app.add_subcommand("lift", "Freiman lift of (A, B) into Z^2");
  add_pair(lift);
  lift->add_option("--n,--modulus", modulus, "N")->required();
  lift->add_option("--d", lift_d, "Common difference d")->required();

  Int bx = 0, by = 0;
  bool oracle = false;
  auto* bounds = app.add_subcommand("bounds", "Thresholds for sizes");
  bounds->require_subcommand(1);
  bounds->fallthrough();
  auto* bs = bounds->add_subcommand("s", "Bucket parameter and thresholds for |A| = x, |B| = y");
  bs->add_option("--a,--x", bx, "|A|")->required();
  bs->add_option("--b,--y", by, "|B|")->required();
  auto* br = bounds->add_subcommand("redcalc", "Closed form of the two-parameter minimum");
  br->add_option("--x", bx)->required();
  br->add_option("--y", by)->required();
  br->add_flag("--oracle", oracle, "Also run the brute-force minimum");

  std::string x_text, y_text;
  auto* cyc = app.add_subcommand("cyclic", "Kneser, classification and critical-pair witness in Z/nZ");
  cyc->add_option("--x", x_text, "X: 'n: 6; {0,2,4}' or {\"mod\":6,\"set\":[0,2,4]}")->required();
  cyc->add_option("--y", y_text, "Y")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      const IntSet a = parse_int_set(literal(a_text, a_file, "--a"));
      const IntSet b = parse_int_set(literal(b_text, b_file, "--b"));
      Json j;
      j["a"] = to_json_value(a);
      j["b"] = to_json_value(b);
      j["sumset_size"] = sumset(a, b).size();
      j["main"] = verify_main(a, b);
      j["classic_3k4"] = verify_classic_3k4(a, b);
      j["corollary"] = verify_corollary(a, b);
      if (b.size() >= 3) j["thresholds"] = threshold_report(static_cast<Int>(a.size()), static_cast<Int>(b.size()));
      emit(j, format);
      return has_fail(j) ? kExitFail : kExitOk;
    }
    if (scan->parsed()) {
      cfg.mode = scan_mode_from_string(mode);
      cfg.shard = parse_shard(shard);
      ScanOptions opt;
      opt.workers = workers != 0 ? workers : workers_from_env();
      if (opt.workers == 0) opt.workers = std::max(1U, std::thread::hardware_concurrency());
      opt.on_fail = [](const Json& j) { std::cerr << "FAIL " << j.dump() << '\n'; };
      if (!quiet)
        opt.on_progress = [](std::size_t done, std::size_t total) {
          if (done == total || done % std::max<std::size_t>(1, total / 20) == 0)
            std::cerr << "progress " << done << "/" << total << '\n';
        };
      const ScanReport report = run_scan(cfg, opt);
      const Json j = report;
      if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot write " + output);
        out << j.dump(2) << '\n';
      }
      emit(j, format);
      return report.counts.fail == 0 ? kExitOk : kExitFail;
    }
    if (fam->parsed()) {
      fp.n = fn;
      const FamilyInstance f = family(family_from_string(fname), fp);
      const FamilyCheck c = check_family(f);
      Json j = to_json_value(f, c);
      const Int r = c.r;
      switch (f.name) {
        case FamilyName::A:
          j["inequality"] = "|P_A| = " + std::to_string(c.cover_a) + ", |A|+r+1 = " + std::to_string(static_cast<Int>(f.a.size()) + r + 1) +
                            "; |P_B| = " + std::to_string(c.cover_b) + ", |B|+r+1 = " + std::to_string(static_cast<Int>(f.b.size()) + r + 1) +
                            "; |P_C| = " + std::to_string(c.run) + ", |A|+|B|-1 = " + std::to_string(static_cast<Int>(f.a.size() + f.b.size()) - 1);
          break;
        case FamilyName::B:
          j["inequality"] = "r = " + std::to_string(r) + " > min(|A|,|B|)-3-delta; |P_A| = " + std::to_string(ap_cover(f.a).len);
          break;
        case FamilyName::C: {
          const Rational thr = threshold_at(static_cast<Int>(f.a.size()), static_cast<Int>(f.b.size()), f.params.s);
          j["inequality"] = "|A+B| = " + std::to_string(c.sumset_size) + ", (|A|/s+|B|/2-1)(s+1) = " + thr.str();
          break;
        }
        case FamilyName::D:
          j["inequality"] = "|P_B| = " + std::to_string(c.cover_b) + " <= |B|+r+1 = " + std::to_string(static_cast<Int>(f.b.size()) + r + 1);
          break;
      }
      emit(j, format);
      return c.ok ? kExitOk : kExitFail;
    }
    if (mr->parsed()) {
      const IntSet a = parse_int_set(literal(a_text, a_file, "--a"));
      const IntSet b = parse_int_set(literal(b_text, b_file, "--b"));
      if (modulus == 0) modulus = std::max<Int>(2, b.diameter());
      const ModularReduction red(a, b, modulus);
      const auto sum = static_cast<Int>(sumset(a, b).size());
      Json j;
      j["a"] = to_json_value(a);
      j["b"] = to_json_value(b);
      j["n"] = modulus;
      j["sumset_size"] = sum;
      const bool corollary = b.min() == 0 && b.max() == modulus && modulus >= 2;
      Json rows = Json::array();
      bool ok = true;
      for (const Subgroup& h : subgroups(modulus)) {
        if (gen != 0 && h.generator != gen) continue;
        Json row;
        row["delta"] = red.delta_report(h);
        ok = ok && row["delta"]["bound"].get<Int>() <= sum;
        if (corollary) {
          row["corollary"] = red.corollary_report(h);
          ok = ok && row["corollary"]["bound"].get<Int>() <= sum;
        }
        rows.push_back(row);
      }
      if (gen != 0 && rows.empty()) throw std::invalid_argument("--subgroup must divide --n");
      j["subgroups"] = rows;
      Int best = 0;
      for (const auto& row : rows) {
        best = std::max(best, row["delta"]["bound"].get<Int>());
        if (row.contains("corollary")) best = std::max(best, row["corollary"]["bound"].get<Int>());
      }
      j["best_bound"] = best;
      j["inequality"] = "|A+B| = " + std::to_string(sum) + " >= " + std::to_string(best);
      j["verdict"] = ok ? "PASS" : "FAIL";
      emit(j, format);
      return ok ? kExitOk : kExitFail;
    }
    if (lift->parsed()) {
      const IntSet a = parse_int_set(literal(a_text, a_file, "--a"));
      const IntSet b = parse_int_set(literal(b_text, b_file, "--b"));
      const Lift l = lift_to_2d(a, b, modulus, lift_d);
      Json j = to_json_value(l);
      const bool iso = is_freiman_isomorphism(l.a_map, l.b_map);
      const auto image = static_cast<Int>(sumset(l.a_image, l.b_image).size());
      const auto sum = static_cast<Int>(sumset(a, b).size());
      j["freiman_isomorphism"] = iso;
      j["image_sumset_size"] = image;
      j["sumset_size"] = sum;
      j["inequality"] = "|A'+B'| = " + std::to_string(image) + ", |A+B| = " + std::to_string(sum);
      j["verdict"] = iso && image == sum ? "PASS" : "FAIL";
      emit(j, format);
      return iso && image == sum ? kExitOk : kExitFail;
    }
    if (bs->parsed()) {
      emit(Json(threshold_report(bx, by)), format);
      return kExitOk;
    }
    if (br->parsed()) {
      Json j;
      j["x"] = bx;
      j["y"] = by;
      j["closed_form"] = redcalc_closed_form(bx, by);
      if (!oracle) {
        emit(j, format);
        return kExitOk;
      }
      const RedcalcMin m = redcalc_brute_min(bx, by);
      j["brute_min"] = {{"value", m.value}, {"m", m.m}, {"n", m.n}};
      const bool ok = m.value == j["closed_form"].get<Int>();
      j["verdict"] = ok ? "PASS" : "FAIL";
      emit(j, format);
      return ok ? kExitOk : kExitFail;
    }
    if (cyc->parsed()) {
      const CyclicSet x = parse_cyclic_set(x_text);
      const CyclicSet y = parse_cyclic_set(y_text);
      x.require_same(y);
      Json j;
      j["x"] = to_json_value(x);
      j["y"] = to_json_value(y);
      j["sumset"] = to_json_value(sumset(x, y));
      const KneserReport k = kneser_check(x, y);
      j["kneser"] = k;
      j["classification"] = classify_in_span(x, y);
      bool ok = k.holds;
      if (x.modulus() >= 2 && x.modulus() <= kKstMaxModulus && kst_eligible(x, y)) {
        const KSTWitness w = kst_witness(x, y);
        j["kst_witness"] = w;
        ok = ok && w.outcome != KstOutcome::Falsification;
      }
      j["verdict"] = ok ? "PASS" : "FAIL";
      emit(j, format);
      return ok ? kExitOk : kExitFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
