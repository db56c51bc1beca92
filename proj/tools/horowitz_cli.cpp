// Command-line front end: horowitz <subcommand> [args] [--config file.json]
// Flags override fields of the config file.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "horowitz/harness.hpp"

namespace {

using horowitz::harness::json;

struct Sub {
  CLI::App* app = nullptr;
  std::string config_path;
  bool print_json = false;
  // Field name -> (option, writer) for flags that were given.
  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> overrides;
};

template <class T>
void bind_option(Sub& sub, std::string const& flag, std::string const& field, T& storage,
          std::string const& help) {
  CLI::Option* opt = sub.app->add_option(flag, storage, help);
  sub.overrides.emplace_back(opt, [&storage, field](json& cfg) { cfg[field] = storage; });
}

void bind_flag(Sub& sub, std::string const& flag, std::string const& field, bool& storage,
               std::string const& help) {
  CLI::Option* opt = sub.app->add_flag(flag, storage, help);
  sub.overrides.emplace_back(opt, [&storage, field](json& cfg) { cfg[field] = storage; });
}

json load_config(std::string const& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw horowitz::Error("cannot read config " + path);
  return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characters, lengths and self-intersections of curves given by free-group words"};
  app.require_subcommand(1);

  std::map<std::string, Sub> subs;
  auto add = [&](std::string const& name, std::string const& help) -> Sub& {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, help);
    s.app->add_option("--config", s.config_path, "JSON config file");
    s.app->add_flag("--json", s.print_json, "print the result as JSON");
    return s;
  };

  // Storage for every flag; lives until the end of main.
  std::string word, u, v, out, summary, suite = "all", out_dir, pinched;
  int rank = 2, trials = 50, bound = 0;
  std::size_t max_len = 5;
  unsigned threads = 1;
  bool include_powers = false, no_selfint = false;
  std::uint64_t seed = 0;
  std::string x = "3", y = "3";

  auto common = [&](Sub& s) {
    bind_option(s, "--seed", "seed", seed, "random seed");
    bind_option(s, "--out-dir", "out_dir", out_dir, "output directory");
  };

  Sub& c_char = add("char", "print the Fricke polynomial of a word");
  c_char.app->add_option("word", word, "word, e.g. abaaB")->required();
  bind_option(c_char, "--rank", "rank", rank, "free group rank");
  common(c_char);

  Sub& c_equal = add("equal", "compare the characters of two words");
  c_equal.app->add_option("u", u)->required();
  c_equal.app->add_option("v", v)->required();
  bind_option(c_equal, "--rank", "rank", rank, "free group rank (probabilistic above 2)");
  bind_option(c_equal, "--trials", "trials", trials, "random representations to try");
  common(c_equal);

  Sub& c_search = add("search", "bucket all classes up to a length by character");
  bind_option(c_search, "--max-len", "max_len", max_len, "maximal cyclic length");
  bind_flag(c_search, "--include-powers", "include_powers", include_powers,
            "also bucket proper powers");
  bind_option(c_search, "--threads", "threads", threads, "worker threads");
  bind_option(c_search, "--out", "out", out, "JSONL report");
  bind_option(c_search, "--summary", "summary", summary, "CSV histogram");
  CLI::Option* no_si = c_search.app->add_flag("--no-selfint", no_selfint,
                                              "skip self-intersection annotation");
  c_search.overrides.emplace_back(no_si, [&](json& cfg) { cfg["self_intersection"] = false; });
  common(c_search);

  Sub& c_self = add("selfint", "self-intersection number of a curve");
  c_self.app->add_option("word", word)->required();
  bind_option(c_self, "--x", "x", x, "tr a (integer or p/q)");
  bind_option(c_self, "--y", "y", y, "tr b (integer or p/q)");
  bind_option(c_self, "--bound", "bound", bound, "starting enumeration bound");
  common(c_self);

  Sub& c_len = add("lengths", "curve lengths over a grid of structures");
  bind_option(c_len, "--out", "out", out, "CSV output");
  common(c_len);

  Sub& c_pinch = add("pinch", "lengths along a pinching schedule");
  bind_option(c_pinch, "--pinched", "pinched", pinched, "curve driven to length 0");
  bind_option(c_pinch, "--out", "out", out, "CSV output (JSONL alongside)");
  common(c_pinch);

  Sub& c_hempel = add("hempel", "minimal length of non-simple curves over a grid");
  bind_option(c_hempel, "--max-len", "max_len", max_len, "maximal cyclic length");
  common(c_hempel);

  Sub& c_gr = add("gr-check", "non-singular vector filter over an exhaustive search");
  bind_option(c_gr, "--max-len", "max_len", max_len, "maximal cyclic length");
  common(c_gr);

  Sub& c_acc = add("acceptance", "run acceptance suites");
  c_acc.app->add_option("suite", suite, "all or a suite name");
  common(c_acc);

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, sub] : subs) {
      if (!sub.app->parsed()) continue;
      json cfg = load_config(sub.config_path);
      if (name == "char") cfg["word"] = word;
      if (name == "equal") {
        cfg["u"] = u;
        cfg["v"] = v;
      }
      if (name == "selfint") cfg["word"] = word;
      if (name == "acceptance" && sub.app->count("suite") > 0) cfg["suite"] = suite;
      for (auto& [opt, write] : sub.overrides) {
        if (opt->count() > 0) write(cfg);
      }
      if (name == "selfint" && cfg.contains("x") && cfg["x"].is_string()) {
        // Accept plain integers given as text.
        auto s = cfg["x"].get<std::string>();
        if (s.find('/') == std::string::npos) cfg["x"] = std::stol(s);
      }
      if (name == "selfint" && cfg.contains("y") && cfg["y"].is_string()) {
        auto s = cfg["y"].get<std::string>();
        if (s.find('/') == std::string::npos) cfg["y"] = std::stol(s);
      }
      auto rec = horowitz::harness::run(name, cfg);
      if (sub.print_json) {
        std::cout << rec.outputs.dump(2) << "\n";
      } else {
        std::cout << rec.text << "\n";
      }
      return rec.exit_code;
    }
  } catch (horowitz::harness::ConfigError const& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
