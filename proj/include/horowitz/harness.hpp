// Configuration, persistence and subcommand runners.
//
// Every subcommand takes a JSON object. Missing fields get defaults, unknown
// or mistyped fields are rejected with one message per field. Outputs are
// written atomically into the output directory (config "out_dir", overridden
// by HOROWITZ_OUT_DIR) and embed a hash of the resolved config.

#ifndef HOROWITZ_HARNESS_HPP_
#define HOROWITZ_HARNESS_HPP_

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "horowitz/acceptance.hpp"
#include "horowitz/error.hpp"
#include "horowitz/explorer.hpp"
#include "horowitz/geometry.hpp"
#include "horowitz/hempel.hpp"
#include "horowitz/intersections.hpp"
#include "horowitz/rng.hpp"
#include "horowitz/traces.hpp"
#include "horowitz/words.hpp"
#include "json.hpp"

namespace horowitz::harness {

using json = nlohmann::json;

inline constexpr char const* kVersion = "horowitz 1.0.0";
inline constexpr char const* kOutDirEnv = "HOROWITZ_OUT_DIR";

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}
  std::vector<std::string> const& problems() const noexcept {
    return problems_;
  }

 private:
  static std::string join(std::vector<std::string> const& p) {
    std::string out = "invalid config:";
    for (auto const& s : p) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> problems_;
};

////////////////////////////////////////////////////////////////////////////
// Hashing and files
////////////////////////////////////////////////////////////////////////////

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Object keys are kept sorted by json, so dump() is canonical.
inline std::string config_hash(json const& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(cfg.dump())));
  return buf;
}

inline void write_atomic(std::filesystem::path const& path, std::string const& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::filesystem::path output_dir(json const& cfg) {
  if (char const* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return cfg.value("out_dir", std::string("."));
}

////////////////////////////////////////////////////////////////////////////
// Schemas
////////////////////////////////////////////////////////////////////////////

enum class FieldType { Integer, Number, Boolean, String, Array, Any };

struct Field {
  std::string name;
  FieldType type;
  json default_value;
  bool required = false;
};

inline char const* type_name(FieldType t) {
  switch (t) {
    case FieldType::Integer: return "integer";
    case FieldType::Number: return "number";
    case FieldType::Boolean: return "boolean";
    case FieldType::String: return "string";
    case FieldType::Array: return "array";
    case FieldType::Any: return "any";
  }
  return "?";
}

inline bool has_type(json const& v, FieldType t) {
  switch (t) {
    case FieldType::Integer: return v.is_number_integer();
    case FieldType::Number: return v.is_number();
    case FieldType::Boolean: return v.is_boolean();
    case FieldType::String: return v.is_string();
    case FieldType::Array: return v.is_array();
    case FieldType::Any: return true;
  }
  return false;
}

inline std::vector<Field> common_fields() {
  return {{"seed", FieldType::Integer, 0}, {"out_dir", FieldType::String, "."}};
}

inline std::map<std::string, std::vector<Field>> const& schemas() {
  static std::map<std::string, std::vector<Field>> const s = [] {
    json grid = json::array({json::array({3, 3}), json::array({3, 4}), json::array({4, 4}),
                             json::array({3, 10})});
    std::map<std::string, std::vector<Field>> m;
    m["char"] = {{"word", FieldType::String, nullptr, true}, {"rank", FieldType::Integer, 2}};
    m["equal"] = {{"u", FieldType::String, nullptr, true},
                  {"v", FieldType::String, nullptr, true},
                  {"rank", FieldType::Integer, 2},
                  {"trials", FieldType::Integer, 50}};
    m["search"] = {{"max_len", FieldType::Integer, 5},
                   {"include_powers", FieldType::Boolean, false},
                   {"threads", FieldType::Integer, 1},
                   {"self_intersection", FieldType::Boolean, true},
                   {"out", FieldType::String, "search.jsonl"},
                   {"summary", FieldType::String, "search_summary.csv"}};
    m["selfint"] = {{"word", FieldType::String, nullptr, true},
                    {"x", FieldType::Any, 3},
                    {"y", FieldType::Any, 3},
                    {"bound", FieldType::Any, nullptr}};
    m["lengths"] = {{"grid", FieldType::Array, grid},
                    {"probes", FieldType::Array, json::array({"a", "b", "ab", "abaaB"})},
                    {"root", FieldType::String, "larger"},
                    {"out", FieldType::String, "lengths.csv"}};
    m["pinch"] = {{"schedule", FieldType::Any, "reference"},
                  {"pinched", FieldType::String, "a"},
                  {"probes", FieldType::Array, json::array({"b", "abaaB"})},
                  {"out", FieldType::String, "pinch.csv"}};
    m["hempel"] = {{"grid", FieldType::Array, grid}, {"max_len", FieldType::Integer, 8}};
    m["gr-check"] = {{"max_len", FieldType::Integer, 10}};
    m["acceptance"] = {{"suite", FieldType::String, "all"}};
    for (auto& [name, fields] : m) {
      for (auto const& f : common_fields()) fields.push_back(f);
    }
    return m;
  }();
  return s;
}

// Defaults filled in; problems listed field by field.
inline json resolve_config(std::string const& subcommand, json const& user) {
  auto it = schemas().find(subcommand);
  if (it == schemas().end()) throw ConfigError({"unknown subcommand '" + subcommand + "'"});
  if (!user.is_object()) throw ConfigError({"config must be a JSON object"});
  std::vector<std::string> problems;
  json out = json::object();
  for (auto const& f : it->second) {
    if (user.contains(f.name) && !user.at(f.name).is_null()) {
      if (!has_type(user.at(f.name), f.type)) {
        problems.push_back(f.name + ": expected " + type_name(f.type));
        continue;
      }
      out[f.name] = user.at(f.name);
    } else if (f.required) {
      problems.push_back(f.name + ": required");
    } else {
      out[f.name] = f.default_value;
    }
  }
  for (auto const& [key, value] : user.items()) {
    bool known = false;
    for (auto const& f : it->second) known = known || f.name == key;
    if (!known) problems.push_back(key + ": unknown field");
  }
  if (!problems.empty()) throw ConfigError(problems);
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Records
////////////////////////////////////////////////////////////////////////////

struct ExperimentRecord {
  std::string subcommand;
  json config;
  std::string config_hash;
  json outputs = json::object();
  std::vector<std::string> files;
  std::string text;  // human-readable result
  int exit_code = 0;
  double wall_seconds = 0;
  std::string version = kVersion;

  json to_json() const {
    return {{"subcommand", subcommand}, {"config", config},         {"config_hash", config_hash},
            {"outputs", outputs},       {"files", files},           {"exit_code", exit_code},
            {"wall_seconds", wall_seconds}, {"version", version},   {"rng", Rng::kName}};
  }
};

namespace detail {

  inline Rational number_to_rational(json const& v, std::string const& field) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return Rational(v.get<double>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ConfigError({field + ": expected a number or a rational string"});
  }

  inline std::vector<std::pair<Rational, Rational>> parse_grid(json const& g) {
    std::vector<std::pair<Rational, Rational>> out;
    for (auto const& p : g) {
      if (!p.is_array() || p.size() != 2) throw ConfigError({"grid: entries must be [x, y]"});
      out.emplace_back(number_to_rational(p[0], "grid"), number_to_rational(p[1], "grid"));
    }
    if (out.empty()) throw ConfigError({"grid: must not be empty"});
    return out;
  }

  inline std::vector<CurveClass> parse_classes(json const& a) {
    std::vector<CurveClass> out;
    for (auto const& w : a) out.push_back(canonical_class(parse_word(w.get<std::string>(), 2)));
    return out;
  }

  inline std::string csv_header(std::string const& hash, json const& cfg) {
    return "# config-hash: " + hash + "\n# seed: " + std::to_string(cfg.value("seed", 0L)) + "\n";
  }

  inline json jsonl_header(std::string const& hash, json const& cfg) {
    return {{"type", "header"}, {"config_hash", hash}, {"config", cfg}};
  }

  inline std::string num(long double v) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(v);
    return os.str();
  }

  inline json class_list(std::vector<CurveClass> const& cs) {
    json a = json::array();
    for (auto const& c : cs) a.push_back(to_string(c));
    return a;
  }

  inline void emit(ExperimentRecord& rec, std::filesystem::path const& dir,
                   std::string const& name, std::string const& content) {
    std::filesystem::path p = std::filesystem::path(name).is_absolute() ? std::filesystem::path(name) : dir / name;
    write_atomic(p, content);
    rec.files.push_back(p.string());
  }

}  // namespace detail

////////////////////////////////////////////////////////////////////////////
// Runners
////////////////////////////////////////////////////////////////////////////

inline void run_char(ExperimentRecord& rec) {
  Word w = parse_word(rec.config["word"].get<std::string>(), rec.config["rank"].get<int>());
  FrickePolynomial p = fricke_char(w);
  rec.outputs = {{"word", to_string(w)}, {"polynomial", p.to_string()}};
  if (auto cw = try_cyclic_reduce(w); cw && !is_proper_power(*cw).is_power) {
    rec.outputs["class"] = to_string(canonical_class(w));
  }
  rec.text = p.to_string();
}

inline void run_equal(ExperimentRecord& rec) {
  int rank = rec.config["rank"].get<int>();
  Word u = parse_word(rec.config["u"].get<std::string>(), rank);
  Word v = parse_word(rec.config["v"].get<std::string>(), rank);
  if (rank == 2) {
    bool eq = fricke_char(u) == fricke_char(v);
    rec.text = eq ? "EQUAL (exact)" : "DISTINCT (exact)";
    rec.outputs = {{"u", to_string(u)},
                   {"v", to_string(v)},
                   {"equal", eq},
                   {"method", "exact"},
                   {"char_u", fricke_char(u).to_string()},
                   {"char_v", fricke_char(v).to_string()}};
    return;
  }
  int trials = rec.config["trials"].get<int>();
  auto verdict = chars_equal_probabilistic(u, v, rank, trials,
                                           rec.config["seed"].get<std::uint64_t>());
  rec.outputs = {{"u", to_string(u)},
                 {"v", to_string(v)},
                 {"equal", !verdict.distinct()},
                 {"method", "probabilistic"},
                 {"trials", verdict.trials}};
  if (verdict.distinct()) {
    json gens = json::array();
    for (auto const& g : verdict.witness->generators()) {
      gens.push_back({g.p.get_str(), g.q.get_str(), g.r.get_str(), g.s.get_str()});
    }
    rec.outputs["witness"] = gens;
    rec.outputs["trace_u"] = verdict.trace_u.get_str();
    rec.outputs["trace_v"] = verdict.trace_v.get_str();
    rec.text = "DISTINCT (witness after " + std::to_string(verdict.trials) + " trials)";
  } else {
    rec.text = "PROBABLY EQUAL (" + std::to_string(verdict.trials) + " trials)";
  }
}

inline void run_search(ExperimentRecord& rec, std::filesystem::path const& dir) {
  SearchConfig cfg;
  cfg.max_len = rec.config["max_len"].get<std::size_t>();
  cfg.include_powers = rec.config["include_powers"].get<bool>();
  cfg.threads = rec.config["threads"].get<unsigned>();
  cfg.seed = rec.config["seed"].get<std::uint64_t>();
  cfg.annotate_self_intersection = rec.config["self_intersection"].get<bool>();
  SearchResult res = search_tuples(cfg);
  std::ostringstream jl;
  jl << detail::jsonl_header(rec.config_hash, rec.config).dump() << "\n";
  for (auto const& t : res.tuples) {
    json flags = json::array();
    for (auto const& f : t.flags) {
      json jf = {{"is_reversal_of_first", f.is_reversal_of_first},
                 {"gr_nonsingular_both_vectors", f.gr_nonsingular_both_vectors},
                 {"proper_power", f.proper_power}};
      jf["self_intersection"] = f.self_intersection ? json(*f.self_intersection) : json(nullptr);
      flags.push_back(jf);
    }
    jl << json{{"key", t.key}, {"members", detail::class_list(t.members)}, {"flags", flags}}.dump()
       << "\n";
  }
  std::ostringstream csv;
  csv << detail::csv_header(rec.config_hash, rec.config) << "length,bucket_size,buckets\n";
  for (auto const& [k, count] : res.histogram()) {
    csv << k.first << "," << k.second << "," << count << "\n";
  }
  detail::emit(rec, dir, rec.config["out"].get<std::string>(), jl.str());
  detail::emit(rec, dir, rec.config["summary"].get<std::string>(), csv.str());
  Verdict gr = gr_filter_check(res.tuples);
  rec.outputs = {{"classes", res.index.classes},
                 {"buckets", res.index.buckets.size()},
                 {"tuples", res.tuples.size()},
                 {"gr_violations", gr.violations}};
  rec.exit_code = gr.passed() ? 0 : 1;
  rec.text = std::to_string(res.index.classes) + " classes, " +
             std::to_string(res.tuples.size()) + " multi-member buckets, " +
             std::to_string(gr.violations.size()) + " gr violations";
}

inline void run_selfint(ExperimentRecord& rec) {
  CurveClass c = canonical_class(parse_word(rec.config["word"].get<std::string>(), 2));
  Rational x = detail::number_to_rational(rec.config["x"], "x");
  Rational y = detail::number_to_rational(rec.config["y"], "y");
  DiscreteStructure s(punctured_torus_structure(x, y));
  std::optional<int> bound;
  if (!rec.config["bound"].is_null()) bound = rec.config["bound"].get<int>();
  CrossingCount cc = self_intersection(c, s, bound);
  rec.outputs = {{"word", to_string(c)},
                 {"count", cc.count},
                 {"B", cc.bound},
                 {"stable", cc.stable},
                 {"structure", s.triple().label()}};
  rec.exit_code = cc.stable ? 0 : 1;
  rec.text = "count=" + std::to_string(cc.count) + " B=" + std::to_string(cc.bound) +
             " stable=" + (cc.stable ? "true" : "false");
}

inline void run_lengths(ExperimentRecord& rec, std::filesystem::path const& dir) {
  auto grid = detail::parse_grid(rec.config["grid"]);
  auto probes = detail::parse_classes(rec.config["probes"]);
  std::string root = rec.config["root"].get<std::string>();
  if (root != "larger" && root != "smaller") throw ConfigError({"root: larger or smaller"});
  std::ostringstream csv;
  csv << detail::csv_header(rec.config_hash, rec.config) << "step,x,y,z,curve,trace,length\n";
  json rows = json::array();
  int step = 0;
  for (auto const& [x, y] : grid) {
    FrickeTriple t =
        punctured_torus_structure(x, y, root == "larger" ? RootChoice::Larger : RootChoice::Smaller);
    ++step;
    for (auto const& c : probes) {
      CurveLength cl = curve_length(t, c);
      csv << step << "," << detail::num(t.xd) << "," << detail::num(t.yd) << ","
          << detail::num(t.zd) << "," << to_string(c) << "," << detail::num(cl.trace) << ","
          << detail::num(cl.length) << "\n";
      rows.push_back({{"step", step},
                      {"structure", t.label()},
                      {"curve", to_string(c)},
                      {"trace", static_cast<double>(cl.trace)},
                      {"length", static_cast<double>(cl.length)},
                      {"peripheral", cl.peripheral}});
    }
  }
  detail::emit(rec, dir, rec.config["out"].get<std::string>(), csv.str());
  rec.outputs = {{"rows", rows}};
  rec.text = std::to_string(rows.size()) + " lengths";
}

inline void run_pinch(ExperimentRecord& rec, std::filesystem::path const& dir) {
  PinchingSchedule sched;
  json const& sj = rec.config["schedule"];
  if (sj.is_string()) {
    if (sj.get<std::string>() != "reference") {
      throw ConfigError({"schedule: \"reference\" or an array of [x, y]"});
    }
    sched = reference_schedule();
  } else if (sj.is_array()) {
    for (auto const& [x, y] : detail::parse_grid(sj)) sched.steps.push_back({x, y});
  } else {
    throw ConfigError({"schedule: \"reference\" or an array of [x, y]"});
  }
  sched.pinched = canonical_class(parse_word(rec.config["pinched"].get<std::string>(), 2));
  sched.probes = detail::parse_classes(rec.config["probes"]);
  LengthReport rep = pinching_experiment(sched);
  std::string csv = detail::csv_header(rec.config_hash, rec.config) + rep.to_csv();
  detail::emit(rec, dir, rec.config["out"].get<std::string>(), csv);
  std::ostringstream jl;
  jl << detail::jsonl_header(rec.config_hash, rec.config).dump() << "\n";
  for (auto const& st : rep.steps) {
    for (auto const& s : st.samples) {
      jl << json{{"step", st.step},
                 {"x", static_cast<double>(st.x)},
                 {"y", static_cast<double>(st.y)},
                 {"z", static_cast<double>(st.z)},
                 {"curve", s.curve},
                 {"trace", static_cast<double>(s.trace)},
                 {"length", static_cast<double>(s.length)}}
                .dump()
         << "\n";
    }
  }
  std::string jname = rec.config["out"].get<std::string>();
  if (auto pos = jname.rfind(".csv"); pos != std::string::npos && pos + 4 == jname.size()) {
    jname = jname.substr(0, pos);
  }
  detail::emit(rec, dir, jname + ".jsonl", jl.str());
  json mins = json::object();
  for (auto const& [k, v] : rep.probe_min) mins[k] = static_cast<double>(v);
  rec.outputs = {{"pinched_final", static_cast<double>(rep.pinched_final)},
                 {"pinched_strictly_decreasing", rep.pinched_strictly_decreasing},
                 {"probe_min", mins}};
  rec.text = "pinched length at last step " + detail::num(rep.pinched_final) +
             (rep.pinched_strictly_decreasing ? ", strictly decreasing" : ", NOT decreasing");
}

inline void run_hempel(ExperimentRecord& rec) {
  HempelScanConfig cfg;
  cfg.grid = detail::parse_grid(rec.config["grid"]);
  cfg.max_len = rec.config["max_len"].get<std::size_t>();
  HempelResult res = hempel_scan(cfg);
  rec.outputs = {{"observed_min", static_cast<double>(res.observed_min)},
                 {"argmin_class", res.argmin_class},
                 {"argmin_structure", res.argmin_structure},
                 {"non_simple_classes", res.non_simple_classes},
                 {"structures", res.structures}};
  rec.text = "observed min " + detail::num(res.observed_min) + " (" + res.argmin_class + " at " +
             res.argmin_structure + ")";
}

inline void run_gr_check(ExperimentRecord& rec) {
  SearchConfig cfg;
  cfg.max_len = rec.config["max_len"].get<std::size_t>();
  cfg.annotate_self_intersection = false;
  SearchResult res = search_tuples(cfg);
  Verdict v = gr_filter_check(res.tuples);
  rec.outputs = {{"violations", v.violations}, {"detail", v.detail}};
  rec.exit_code = v.passed() ? 0 : 1;
  rec.text = (v.passed() ? "PASS " : "FAIL ") + v.detail;
}

inline void run_acceptance(ExperimentRecord& rec,
                           acceptance::AcceptanceOps const& ops = {}) {
  auto results = acceptance::run(rec.config["suite"].get<std::string>(), ops);
  json arr = json::array();
  std::string text;
  bool all = true;
  for (auto const& r : results) {
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"detail", r.detail},
                   {"failures", r.failures},
                   {"seconds", r.seconds}});
    text += acceptance::format_line(r) + "\n";
    all = all && r.passed;
  }
  if (!text.empty()) text.pop_back();
  rec.outputs = {{"suites", arr}, {"passed", all}};
  rec.exit_code = all ? 0 : 1;
  rec.text = text;
}

// Resolves the config, runs the subcommand, writes outputs and
// <subcommand>.record.json into the output directory.
inline ExperimentRecord run(std::string const& subcommand, json const& user_config,
                            acceptance::AcceptanceOps const& ops = {}) {
  ExperimentRecord rec;
  rec.subcommand = subcommand;
  rec.config = resolve_config(subcommand, user_config);
  rec.config_hash = config_hash(rec.config);
  std::filesystem::path dir = output_dir(rec.config);
  auto t0 = std::chrono::steady_clock::now();
  if (subcommand == "char") {
    run_char(rec);
  } else if (subcommand == "equal") {
    run_equal(rec);
  } else if (subcommand == "search") {
    run_search(rec, dir);
  } else if (subcommand == "selfint") {
    run_selfint(rec);
  } else if (subcommand == "lengths") {
    run_lengths(rec, dir);
  } else if (subcommand == "pinch") {
    run_pinch(rec, dir);
  } else if (subcommand == "hempel") {
    run_hempel(rec);
  } else if (subcommand == "gr-check") {
    run_gr_check(rec);
  } else {
    run_acceptance(rec, ops);
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::filesystem::path record = dir / (subcommand + ".record.json");
  rec.files.push_back(record.string());
  write_atomic(record, rec.to_json().dump(2) + "\n");
  return rec;
}

}  // namespace horowitz::harness

#endif  // HOROWITZ_HARNESS_HPP_
