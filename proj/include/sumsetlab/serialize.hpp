#pragma once

// Set literals and JSON forms of every report. Integer sets are written
// either as a JSON array "[0,2,4]" or compactly as "0,2,4"; cyclic sets as
// "n: 6; {0,2,4}" or {"mod": 6, "set": [0,2,4]}; planar sets as [[u,v],...].
// Objects keep a fixed field order so reports diff cleanly.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/certify.hpp"
#include "sumsetlab/cyclic.hpp"
#include "sumsetlab/geom2d.hpp"
#include "sumsetlab/intset.hpp"
#include "sumsetlab/modred.hpp"

namespace sumsetlab {

using Json = nlohmann::ordered_json;

/// Malformed literal; `position` is the byte offset of the problem.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

inline std::size_t skip_ws(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// Comma-separated integers; `base` is added to reported positions.
inline std::vector<Int> parse_int_list(std::string_view s, std::size_t base) {
  std::vector<Int> out;
  std::size_t i = skip_ws(s, 0);
  if (i == s.size()) throw ParseError("empty set literal", base + i);
  while (true) {
    i = skip_ws(s, i);
    Int v = 0;
    const char* first = s.data() + i;
    const char* last = s.data() + s.size();
    if (i < s.size() && s[i] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) throw ParseError("integer out of 64-bit range", base + i);
    if (ec != std::errc() || ptr == first) throw ParseError("expected an integer", base + i);
    out.push_back(v);
    i = skip_ws(s, static_cast<std::size_t>(ptr - s.data()));
    if (i == s.size()) break;
    if (s[i] != ',') throw ParseError("expected ','", base + i);
    ++i;
  }
  return out;
}

inline void reject_duplicates(const std::vector<Int>& xs, std::size_t pos) {
  std::vector<Int> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (const auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
    throw ParseError("duplicate element " + std::to_string(*it), pos);
}

inline std::vector<Int> int_array_from_json(const Json& j, std::size_t pos) {
  if (!j.is_array()) throw ParseError("expected a JSON array of integers", pos);
  std::vector<Int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw ParseError("expected a JSON array of integers", pos);
    out.push_back(e.get<Int>());
  }
  return out;
}

inline Json parse_json_literal(std::string_view s) {
  try {
    return Json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

}  // namespace detail

/// "[0,2,4]" or "0,2,4"; duplicates and empty sets are rejected.
inline IntSet parse_int_set(std::string_view text) {
  const std::size_t start = detail::skip_ws(text, 0);
  std::vector<Int> xs;
  if (start < text.size() && text[start] == '[') {
    xs = detail::int_array_from_json(detail::parse_json_literal(text), start);
    if (xs.empty()) throw ParseError("empty set literal", start);
  } else {
    xs = detail::parse_int_list(text, 0);
  }
  detail::reject_duplicates(xs, start);
  return IntSet::from_elements(xs);
}

/// "n: 6; {0,2,4}" or {"mod": 6, "set": [0,2,4]}.
inline CyclicSet parse_cyclic_set(std::string_view text) {
  const std::size_t start = detail::skip_ws(text, 0);
  Int n = 0;
  std::vector<Int> xs;
  std::size_t set_pos = start;
  if (start < text.size() && text[start] == '{' && text.find('"') != std::string_view::npos) {
    const Json j = detail::parse_json_literal(text);
    if (!j.is_object() || !j.contains("mod") || !j.contains("set") || !j["mod"].is_number_integer())
      throw ParseError("expected {\"mod\": n, \"set\": [...]}", start);
    n = j["mod"].get<Int>();
    xs = detail::int_array_from_json(j["set"], start);
  } else {
    std::size_t i = start;
    if (i >= text.size() || text[i] != 'n') throw ParseError("expected 'n:'", i);
    i = detail::skip_ws(text, i + 1);
    if (i >= text.size() || text[i] != ':') throw ParseError("expected ':'", i);
    const std::size_t semi = text.find(';', i);
    if (semi == std::string_view::npos) throw ParseError("expected ';'", text.size());
    const auto mod = detail::parse_int_list(text.substr(i + 1, semi - i - 1), i + 1);
    if (mod.size() != 1) throw ParseError("expected a single modulus", i + 1);
    n = mod.front();
    std::size_t lb = detail::skip_ws(text, semi + 1);
    if (lb >= text.size() || text[lb] != '{') throw ParseError("expected '{'", lb);
    const std::size_t rb = text.find('}', lb);
    if (rb == std::string_view::npos) throw ParseError("expected '}'", text.size());
    if (detail::skip_ws(text, rb + 1) != text.size()) throw ParseError("trailing characters", rb + 1);
    set_pos = lb + 1;
    xs = detail::parse_int_list(text.substr(lb + 1, rb - lb - 1), lb + 1);
  }
  if (n < 1) throw ParseError("modulus must be at least 1", start);
  if (xs.empty()) throw ParseError("empty set literal", set_pos);
  detail::reject_duplicates(xs, set_pos);
  for (Int x : xs)
    if (x < 0 || x >= n) throw ParseError("member " + std::to_string(x) + " outside [0, n-1]", set_pos);
  return CyclicSet(n, xs);
}

/// [[u,v], ...]; duplicate points and empty sets are rejected.
inline Grid2DSet parse_grid_set(std::string_view text) {
  const Json j = detail::parse_json_literal(text);
  if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty JSON array of [u,v] pairs", 0);
  std::vector<Point> pts;
  std::set<Point> seen;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("expected [u,v] integer pairs", 0);
    const Point p{e[0].get<Int>(), e[1].get<Int>()};
    if (!seen.insert(p).second) throw ParseError("duplicate point", 0);
    pts.push_back(p);
  }
  return Grid2DSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

inline Json to_json_value(const IntSet& s) { return Json(s.elements()); }

inline IntSet int_set_from_json(const Json& j) {
  const auto xs = detail::int_array_from_json(j, 0);
  if (xs.empty()) throw ParseError("empty set literal", 0);
  return IntSet::from_elements(xs);
}

inline Json to_json_value(const CyclicSet& s) {
  Json j;
  j["mod"] = s.modulus();
  j["set"] = s.members();
  return j;
}

inline CyclicSet cyclic_set_from_json(const Json& j) {
  const Int n = j.at("mod").get<Int>();
  return CyclicSet(n, j.at("set").get<std::vector<Int>>());
}

inline Json to_json_value(const Grid2DSet& s) {
  Json j = Json::array();
  for (const auto& p : s.points()) j.push_back({p.u, p.v});
  return j;
}

inline Grid2DSet grid_set_from_json(const Json& j) { return parse_grid_set(j.dump()); }

/// Rationals are {"num": n, "den": d}; components that do not fit in 64 bits
/// are written as decimal strings.
inline Json to_json_value(const Rational& q) {
  auto part = [](const BigInt& v) -> Json {
    if (v >= std::numeric_limits<Int>::min() && v <= std::numeric_limits<Int>::max()) return v.convert_to<Int>();
    return v.str();
  };
  Json j;
  j["num"] = part(numerator(q));
  j["den"] = part(denominator(q));
  return j;
}

inline Rational rational_from_json(const Json& j) {
  auto part = [](const Json& v) -> BigInt {
    if (v.is_string()) return BigInt(v.get<std::string>());
    return BigInt(v.get<Int>());
  };
  return Rational(part(j.at("num")), part(j.at("den")));
}

inline void to_json(Json& j, const ArithProgression& p) {
  j = Json::object();
  j["start"] = p.start;
  j["diff"] = p.diff;
  j["len"] = p.len;
}

inline void from_json(const Json& j, ArithProgression& p) {
  p.start = j.at("start").get<Int>();
  p.diff = j.at("diff").get<Int>();
  p.len = j.at("len").get<Int>();
}

inline void to_json(Json& j, const Subgroup& h) {
  j = Json::object();
  j["modulus"] = h.modulus;
  j["generator"] = h.generator;
  j["order"] = h.order();
}

inline void from_json(const Json& j, Subgroup& h) { h = Subgroup(j.at("modulus").get<Int>(), j.at("generator").get<Int>()); }

inline void to_json(Json& j, const Certificate& c) {
  j = Json::object();
  j["kind"] = "main";
  j["a"] = to_json_value(c.a);
  j["b"] = to_json_value(c.b);
  j["sumset_size"] = c.sumset_size;
  j["r"] = c.r;
  j["s"] = c.s ? Json(*c.s) : Json(nullptr);
  j["threshold"] = c.threshold ? to_json_value(*c.threshold) : Json(nullptr);
  j["hypothesis_met"] = c.hypothesis_met;
  j["cover"] = c.cover;
  j["cover_bound"] = c.cover_bound;
  j["verdict"] = to_string(c.verdict);
  j["note"] = c.note;
}

inline void from_json(const Json& j, Certificate& c) {
  c.a = int_set_from_json(j.at("a"));
  c.b = int_set_from_json(j.at("b"));
  c.sumset_size = j.at("sumset_size").get<Int>();
  c.r = j.at("r").get<Int>();
  c.s = j.at("s").is_null() ? std::nullopt : std::optional<Int>(j.at("s").get<Int>());
  c.threshold = j.at("threshold").is_null() ? std::nullopt : std::optional<Rational>(rational_from_json(j.at("threshold")));
  c.hypothesis_met = j.at("hypothesis_met").get<bool>();
  c.cover = j.at("cover").get<ArithProgression>();
  c.cover_bound = j.at("cover_bound").get<Int>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.note = j.at("note").get<std::string>();
}

inline void to_json(Json& j, const Certificate3k4& c) {
  j = Json::object();
  j["kind"] = "classic_3k4";
  j["a"] = to_json_value(c.a);
  j["b"] = to_json_value(c.b);
  j["sumset_size"] = c.sumset_size;
  j["r"] = c.r;
  j["delta"] = c.delta;
  j["hypothesis_met"] = c.hypothesis_met;
  j["difference"] = c.difference;
  j["cover_a"] = c.cover_a;
  j["cover_b"] = c.cover_b;
  j["longest_run"] = c.longest_run;
  j["cover_a_ok"] = c.cover_a_ok;
  j["cover_b_ok"] = c.cover_b_ok;
  j["run_ok"] = c.run_ok;
  j["verdict"] = to_string(c.verdict);
}

inline void from_json(const Json& j, Certificate3k4& c) {
  c.a = int_set_from_json(j.at("a"));
  c.b = int_set_from_json(j.at("b"));
  c.sumset_size = j.at("sumset_size").get<Int>();
  c.r = j.at("r").get<Int>();
  c.delta = j.at("delta").get<Int>();
  c.hypothesis_met = j.at("hypothesis_met").get<bool>();
  c.difference = j.at("difference").get<Int>();
  c.cover_a = j.at("cover_a").get<ArithProgression>();
  c.cover_b = j.at("cover_b").get<ArithProgression>();
  c.longest_run = j.at("longest_run").get<Int>();
  c.cover_a_ok = j.at("cover_a_ok").get<bool>();
  c.cover_b_ok = j.at("cover_b_ok").get<bool>();
  c.run_ok = j.at("run_ok").get<bool>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
}

inline void to_json(Json& j, const CorollaryCertificate& c) {
  j = Json::object();
  j["kind"] = "corollary";
  j["a"] = to_json_value(c.a);
  j["b"] = to_json_value(c.b);
  j["sumset_size"] = c.sumset_size;
  j["r"] = c.r;
  j["hypothesis_met"] = c.hypothesis_met;
  j["theorem_hypothesis_met"] = c.theorem_hypothesis_met;
  j["cover"] = c.cover;
  j["cover_bound"] = c.cover_bound;
  j["verdict"] = to_string(c.verdict);
  j["note"] = c.note;
}

inline void from_json(const Json& j, CorollaryCertificate& c) {
  c.a = int_set_from_json(j.at("a"));
  c.b = int_set_from_json(j.at("b"));
  c.sumset_size = j.at("sumset_size").get<Int>();
  c.r = j.at("r").get<Int>();
  c.hypothesis_met = j.at("hypothesis_met").get<bool>();
  c.theorem_hypothesis_met = j.at("theorem_hypothesis_met").get<bool>();
  c.cover = j.at("cover").get<ArithProgression>();
  c.cover_bound = j.at("cover_bound").get<Int>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.note = j.at("note").get<std::string>();
}

inline void to_json(Json& j, const KneserReport& r) {
  j = Json::object();
  j["stabilizer"] = r.stabilizer;
  j["sumset_size"] = r.sumset_size;
  j["rho"] = r.rho;
  j["bound"] = r.bound;
  j["holds"] = r.holds;
}

inline void from_json(const Json& j, KneserReport& r) {
  r.stabilizer = j.at("stabilizer").get<Subgroup>();
  r.sumset_size = j.at("sumset_size").get<Int>();
  r.rho = j.at("rho").get<Int>();
  r.bound = j.at("bound").get<Int>();
  r.holds = j.at("holds").get<bool>();
}

inline ElementaryTag elementary_tag_from_string(std::string_view s) {
  for (ElementaryTag t : {ElementaryTag::I, ElementaryTag::II, ElementaryTag::III, ElementaryTag::IV, ElementaryTag::None})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown elementary type: " + std::string(s));
}

inline void to_json(Json& j, const ElementaryType& t) {
  j = Json::object();
  j["type"] = to_string(t.tag);
  j["span_generator"] = t.span_generator;
  switch (t.tag) {
    case ElementaryTag::II: j["difference"] = t.difference; break;
    case ElementaryTag::III:
      j["unique_element"] = t.unique_element;
      j["a0"] = t.a0;
      j["b0"] = t.b0;
      break;
    case ElementaryTag::IV: j["shift"] = t.shift; break;
    default: break;
  }
}

inline void from_json(const Json& j, ElementaryType& t) {
  t = ElementaryType{};
  t.tag = elementary_tag_from_string(j.at("type").get<std::string>());
  t.span_generator = j.at("span_generator").get<Int>();
  if (j.contains("difference")) t.difference = j["difference"].get<Int>();
  if (j.contains("unique_element")) {
    t.unique_element = j["unique_element"].get<Int>();
    t.a0 = j.at("a0").get<Int>();
    t.b0 = j.at("b0").get<Int>();
  }
  if (j.contains("shift")) t.shift = j["shift"].get<Int>();
}

inline void to_json(Json& j, const KSTWitness& w) {
  j = Json::object();
  j["outcome"] = to_string(w.outcome);
  if (w.outcome == KstOutcome::TypeIV) j["pair_type"] = w.pair_type;
  if (w.outcome == KstOutcome::Decomposition) {
    j["subgroup"] = w.subgroup;
    j["quotient_type"] = w.quotient_type;
    j["slice_coset_x"] = w.slice_coset_x;
    j["slice_coset_y"] = w.slice_coset_y;
    j["slice_x"] = to_json_value(w.slice_x);
    j["slice_y"] = to_json_value(w.slice_y);
  }
}

inline void from_json(const Json& j, KSTWitness& w) {
  w = KSTWitness{};
  const auto o = j.at("outcome").get<std::string>();
  if (o == "type_iv") {
    w.outcome = KstOutcome::TypeIV;
    w.pair_type = j.at("pair_type").get<ElementaryType>();
  } else if (o == "decomposition") {
    w.outcome = KstOutcome::Decomposition;
    w.subgroup = j.at("subgroup").get<Subgroup>();
    w.quotient_type = j.at("quotient_type").get<ElementaryType>();
    w.slice_coset_x = j.at("slice_coset_x").get<Int>();
    w.slice_coset_y = j.at("slice_coset_y").get<Int>();
    w.slice_x = cyclic_set_from_json(j.at("slice_x"));
    w.slice_y = cyclic_set_from_json(j.at("slice_y"));
  } else {
    w.outcome = KstOutcome::Falsification;
  }
}

inline void to_json(Json& j, const DeltaReport& r) {
  j = Json::object();
  j["subgroup"] = r.subgroup;
  j["base"] = r.base;
  j["delta"] = r.delta;
  j["k"] = r.k;
  j["bound"] = r.bound;
}

inline void from_json(const Json& j, DeltaReport& r) {
  r.subgroup = j.at("subgroup").get<Subgroup>();
  r.base = j.at("base").get<Int>();
  r.delta = j.at("delta").get<std::vector<Int>>();
  r.k = j.at("k").get<std::vector<Int>>();
  r.bound = j.at("bound").get<Int>();
}

inline void to_json(Json& j, const ThresholdReport& t) {
  j = Json::object();
  j["a"] = t.a;
  j["b"] = t.b;
  j["s"] = t.s;
  const Json thr = to_json_value(t.theorem_threshold);
  j["threshold_num"] = thr["num"];
  j["threshold_den"] = thr["den"];
  j["bucket_lower"] = to_json_value(t.bucket_lower);
  j["bucket_upper"] = to_json_value(t.bucket_upper);
  j["corollary_rational"] = to_json_value(t.corollary_rational);
  j["corollary_radicand"] = to_json_value(t.corollary_radicand);
}

inline void from_json(const Json& j, ThresholdReport& t) {
  t.a = j.at("a").get<Int>();
  t.b = j.at("b").get<Int>();
  t.s = j.at("s").get<Int>();
  Json thr;
  thr["num"] = j.at("threshold_num");
  thr["den"] = j.at("threshold_den");
  t.theorem_threshold = rational_from_json(thr);
  t.bucket_lower = rational_from_json(j.at("bucket_lower"));
  t.bucket_upper = rational_from_json(j.at("bucket_upper"));
  t.corollary_rational = rational_from_json(j.at("corollary_rational"));
  t.corollary_radicand = rational_from_json(j.at("corollary_radicand"));
}

inline Json to_json_value(const FamilyInstance& f, const FamilyCheck& c) {
  Json j;
  j["family"] = to_string(f.name);
  j["a"] = to_json_value(f.a);
  j["b"] = to_json_value(f.b);
  j["n_used"] = f.n_used;
  j["n_safe_bound"] = f.n_safe_bound;
  j["claim"] = f.claim;
  Json e;
  e["sumset_size"] = f.expected_sumset_size;
  if (f.expected_cover_a) e["cover_a"] = *f.expected_cover_a;
  if (f.expected_cover_b) e["cover_b"] = *f.expected_cover_b;
  if (f.expected_run) e["run"] = *f.expected_run;
  if (f.expected_hypothesis) e["hypothesis"] = *f.expected_hypothesis;
  j["expected"] = e;
  Json o;
  o["sumset_size"] = c.sumset_size;
  o["r"] = c.r;
  o["cover_a"] = c.cover_a;
  o["cover_b"] = c.cover_b;
  o["run"] = c.run;
  o["hypothesis"] = c.hypothesis ? Json(*c.hypothesis) : Json(nullptr);
  o["main_verdict"] = to_string(c.main_verdict);
  o["classic_verdict"] = to_string(c.classic_verdict);
  j["observed"] = o;
  j["ok"] = c.ok;
  j["detail"] = c.detail;
  return j;
}

inline Json to_json_value(const Lift& l) {
  Json j;
  j["a_image"] = to_json_value(l.a_image);
  j["b_image"] = to_json_value(l.b_image);
  j["a_rows"] = l.a_rows;
  j["b_rows"] = l.b_rows;
  j["alpha0"] = l.alpha0;
  j["beta0"] = l.beta0;
  return j;
}

}  // namespace sumsetlab
