// Acceptance suites. Each suite returns a structured verdict; the library
// operations it exercises can be replaced through AcceptanceOps, which is
// how the negative paths are tested.

#ifndef HOROWITZ_ACCEPTANCE_HPP_
#define HOROWITZ_ACCEPTANCE_HPP_

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "horowitz/explorer.hpp"
#include "horowitz/geometry.hpp"
#include "horowitz/hempel.hpp"
#include "horowitz/intersections.hpp"
#include "horowitz/normalization.hpp"
#include "horowitz/rng.hpp"
#include "horowitz/traces.hpp"
#include "horowitz/words.hpp"

namespace horowitz::acceptance {

struct AcceptanceOps {
  std::function<Word(Word const&)> reverse = [](Word const& w) { return horowitz::reverse(w); };
  std::function<FrickePolynomial(Word const&)> character = [](Word const& w) {
    return fricke_char(w);
  };
};

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::string> failures;
  double seconds = 0;
};

inline constexpr std::uint64_t kSeed = 20240611;

namespace detail {

  inline std::string fmt(long double v, int precision = 6) {
    std::ostringstream os;
    os.precision(precision);
    os << static_cast<double>(v);
    return os.str();
  }

  inline void cap_failures(std::vector<std::string>& f, std::size_t limit = 20) {
    if (f.size() > limit) {
      std::size_t extra = f.size() - limit;
      f.resize(limit);
      f.push_back("... " + std::to_string(extra) + " more");
    }
  }

  // Class of a word through its own cyclic reduction; proper powers keep
  // their canonical cyclic form.
  inline std::string cyclic_key(Word const& w) {
    auto cw = try_cyclic_reduce(w);
    if (!cw) return "";
    std::string k;
    for (Letter l : horowitz::detail::canonical_cyclic(cw->letters())) {
      k.push_back(l.to_char());
    }
    return k;
  }

  // Rotation and inversion minimum found by trying every rotation.
  inline Letters naive_canonical(Letters const& s) {
    Letters best;
    Letters inv = horowitz::detail::inverse_letters(s);
    for (Letters const* src : std::array<Letters const*, 2>{&s, &inv}) {
      for (std::size_t r = 0; r < s.size(); ++r) {
        Letters rot(src->begin() + static_cast<std::ptrdiff_t>(r), src->end());
        rot.insert(rot.end(), src->begin(), src->begin() + static_cast<std::ptrdiff_t>(r));
        if (best.empty() || rot < best) best = rot;
      }
    }
    return best;
  }

  inline bool naive_is_power(Letters const& s) {
    for (std::size_t k = 1; k < s.size(); ++k) {
      Letters rot(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
      rot.insert(rot.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
      if (rot == s) return true;
    }
    return false;
  }

  // Classes of length exactly len from all 4^len letter strings.
  inline std::size_t brute_force_class_count(std::size_t len) {
    std::set<Letters> seen;
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      Letters s;
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i) {
        s.push_back(Letter::from_code(static_cast<std::uint8_t>(c % 4)));
        c /= 4;
      }
      bool reduced = true;
      for (std::size_t i = 0; i < len && reduced; ++i) {
        reduced = s[i] != s[(i + 1) % len].inverse() || len == 1;
      }
      if (!reduced || naive_is_power(s)) continue;
      seen.insert(naive_canonical(s));
    }
    return seen.size();
  }

  template <class Fn>
  SuiteResult timed(int id, std::string name, double limit_seconds, Fn&& body) {
    SuiteResult r;
    r.id = id;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (std::exception const& e) {
      r.passed = false;
      r.failures.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > limit_seconds) {
      r.passed = false;
      r.failures.push_back("time limit " + fmt(limit_seconds, 4) + "s exceeded");
    }
    cap_failures(r.failures);
    return r;
  }

}  // namespace detail

// 1
inline SuiteResult horowitz_pair(AcceptanceOps const& ops = {}) {
  return detail::timed(1, "horowitz-pair", 1.0, [&](SuiteResult& r) {
    Word w = parse_word("abaaB", 2);
    Word w2 = parse_word("aabaB", 2);
    auto c1 = canonical_class(w), c2 = canonical_class(w2);
    bool equal = ops.character(c1.word()) == ops.character(c2.word());
    bool distinct = !(c1 == c2);
    if (!equal) r.failures.push_back("characters differ");
    if (!distinct) r.failures.push_back("classes coincide");
    r.detail = ops.character(w).to_string();
    r.passed = r.failures.empty();
  });
}

// 2
inline SuiteResult reversal(AcceptanceOps const& ops = {}, std::size_t max_len = 10) {
  return detail::timed(2, "reversal", 300.0, [&](SuiteResult& r) {
    std::size_t n = 0;
    for_each_class(max_len, 2, [&](CurveClass const& c) {
      ++n;
      Word rev = ops.reverse(c.word());
      if (ops.character(c.word()) != ops.character(rev)) {
        r.failures.push_back(to_string(c));
      }
    });
    r.detail = std::to_string(n) + " classes, length <= " + std::to_string(max_len);
    r.passed = r.failures.empty();
  });
}

// 3
inline SuiteResult primitive_buckets(std::size_t max_len = 10) {
  return detail::timed(3, "horowitz", 900.0, [&](SuiteResult& r) {
    CharacterIndex index = build_character_index(max_len);
    std::ostringstream os;
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}, {3, 2}}) {
      Verdict v = horowitz_primitive_check(m, n, index);
      for (auto const& f : v.violations) r.failures.push_back(v.name + ": " + f);
      os << v.name << " " << v.detail << "; ";
    }
    os << index.classes << " classes";
    r.detail = os.str();
    r.passed = r.failures.empty();
  });
}

// 4
inline SuiteResult leading_coefficient(std::uint64_t seed = kSeed, int words = 100) {
  return detail::timed(4, "leading-coefficient", 900.0, [&](SuiteResult& r) {
    Rng rng(seed);
    Rational lambda(3, 2), mu(5, 3);
    int nonzero = 0;
    for (int i = 0; i < words; ++i) {
      int p = static_cast<int>(rng.uniform(1, 3));
      std::vector<int> m, n;
      for (int j = 0; j < p; ++j) {
        m.push_back(static_cast<int>(rng.uniform_nonzero(-3, 3)));
        n.push_back(static_cast<int>(rng.uniform_nonzero(-3, 3)));
      }
      Word w = word_from_exponents(m, n);
      TPoly poly = trace_poly_in_T(w, lambda, mu);
      Rational formula = leading_coeff_formula(m, n, lambda, mu);
      nonzero += sgn(formula) != 0;
      if (poly.coefficient(2 * p) != formula || poly.degree() > 2 * p) {
        r.failures.push_back(to_string(w) + ": coefficient " +
                             poly.coefficient(2 * p).get_str() + " vs " + formula.get_str());
      }
    }
    r.detail = std::to_string(words) + " words, " + std::to_string(nonzero) +
               " nonzero leading coefficients";
    r.passed = r.failures.empty();
  });
}

// 5
inline SuiteResult normalization(std::uint64_t seed = kSeed, int cases = 20) {
  return detail::timed(5, "normalization", 900.0, [&](SuiteResult& r) {
    Rng rng(seed);
    auto random_param = [&] {
      for (;;) {
        Rational v(rng.uniform_nonzero(-9, 9), rng.uniform(1, 5));
        v.canonicalize();
        if (v != 1 && v != -1) return v;
      }
    };
    std::vector<Word> probes{parse_word("a", 2), parse_word("b", 2), parse_word("ab", 2),
                             parse_word("aB", 2)};
    for (int i = 0; i < cases; ++i) {
      HorowitzFamilyPoint<Rational> pt{random_param(), random_param(),
                                       Rational(rng.uniform_nonzero(-6, 6), rng.uniform(1, 4))};
      pt.t.canonicalize();
      Representation<Rational> base = horowitz_rep(pt);
      Mat2<Integer> gi = random_unimodular(rng);
      Mat2<Rational> g{Rational(gi.p), Rational(gi.q), Rational(gi.r), Rational(gi.s)};
      Representation<Rational> rho = base.conjugated_by(g);
      auto res = normalize_to_horowitz(rho);
      Representation<Rational> back = horowitz_rep(res.point);
      Representation<Rational> conj = rho.conjugated_by(res.conjugator);
      std::string tag = "case " + std::to_string(i);
      for (int k = 0; k < 2; ++k) {
        if (!(conj.generator(k) == back.generator(k))) {
          r.failures.push_back(tag + ": conjugate is not in triangular form");
        }
      }
      for (auto const& w : probes) {
        if (back.trace(w) != rho.trace(w)) {
          r.failures.push_back(tag + ": trace of " + to_string(w) + " changed");
        }
      }
      Rational t2 = t_squared_from_fixed_points(res.point.lambda, res.point.mu, res.xa, res.ya,
                                                res.xb, res.yb);
      if (t2 != res.point.t * res.point.t) {
        r.failures.push_back(tag + ": T^2 " + res.t_squared.get_str() +
                             " disagrees with the cross-ratio formula " + t2.get_str());
      }
    }
    r.detail = std::to_string(cases) + " conjugated points, exact";
    r.passed = r.failures.empty();
  });
}

// 6
inline SuiteResult self_intersection_pins() {
  return detail::timed(6, "self-intersection", 900.0, [&](SuiteResult& r) {
    DiscreteStructure s336 = DiscreteStructure::standard();
    DiscreteStructure s34(punctured_torus_structure(Rational(3), Rational(4)));
    std::ostringstream os;
    for (auto [w, expect] : std::vector<std::pair<char const*, std::size_t>>{
             {"a", 0}, {"ab", 0}, {"abaaB", 2}, {"aabaB", 2}}) {
      CurveClass c = canonical_class(parse_word(w, 2));
      for (auto const* s : {&s336, &s34}) {
        CrossingCount cc = self_intersection(c, *s);
        std::string where = to_string(c) + " at " + s->triple().label();
        if (!cc.stable) r.failures.push_back(where + ": unstable at B=" + std::to_string(cc.bound));
        if (cc.count != expect) {
          r.failures.push_back(where + ": " + std::to_string(cc.count) + " != " +
                               std::to_string(expect));
        }
        if (s == &s336) os << to_string(c) << "=" << cc.count << "(B=" << cc.bound << ") ";
      }
    }
    r.detail = os.str();
    r.passed = r.failures.empty();
  });
}

inline std::vector<std::pair<Rational, Rational>> reference_grid() {
  return {{Rational(3), Rational(3)},
          {Rational(3), Rational(4)},
          {Rational(4), Rational(4)},
          {Rational(3), Rational(10)}};
}

// 7
inline SuiteResult collar(std::size_t max_len = 6) {
  return detail::timed(7, "collar", 900.0, [&](SuiteResult& r) {
    DiscreteStructure s = DiscreteStructure::standard();
    std::vector<std::pair<CurveClass, Slope>> simple;
    for_each_class(max_len, 2, [&](CurveClass const& c) {
      if (!is_peripheral(c) && is_simple(c, s)) simple.emplace_back(c, slope(c, s));
    });
    long double min_margin = std::numeric_limits<long double>::infinity();
    std::size_t pairs = 0;
    for (auto const& [x, y] : reference_grid()) {
      FrickeTriple t = punctured_torus_structure(x, y);
      std::vector<long double> len;
      for (auto const& [c, sl] : simple) len.push_back(curve_length(t, c).length);
      for (std::size_t i = 0; i < simple.size(); ++i) {
        for (std::size_t j = i + 1; j < simple.size(); ++j) {
          if (slope_intersection(simple[i].second, simple[j].second) < 1) continue;
          ++pairs;
          long double margin = collar_product(len[i], len[j]) - 1.0L;
          min_margin = std::min(min_margin, margin);
          if (!collar_check(len[i], len[j]) || margin < 1e-6L) {
            r.failures.push_back(to_string(simple[i].first) + "," + to_string(simple[j].first) +
                                 " at " + t.label() + ": margin " + detail::fmt(margin));
          }
        }
      }
    }
    r.detail = std::to_string(simple.size()) + " simple classes, " + std::to_string(pairs) +
               " intersecting pairs, min margin " + detail::fmt(min_margin);
    r.passed = r.failures.empty() && pairs > 0;
  });
}

// 8
inline SuiteResult pinching(std::size_t probe_len = 8) {
  return detail::timed(8, "pinching", 900.0, [&](SuiteResult& r) {
    PinchingSchedule sched = reference_schedule();
    sched.probes = non_simple_classes(probe_len);
    LengthReport rep = pinching_experiment(sched);
    if (!rep.pinched_strictly_decreasing) r.failures.push_back("l_a is not strictly decreasing");
    if (!(rep.pinched_final < 5e-3L)) {
      r.failures.push_back("l_a at the last step is " + detail::fmt(rep.pinched_final));
    }
    long double lowest = std::numeric_limits<long double>::infinity();
    std::string lowest_name;
    for (auto const& [name, v] : rep.probe_min) {
      if (!(v > 0)) r.failures.push_back(name + " has min length " + detail::fmt(v));
      if (v < lowest) {
        lowest = v;
        lowest_name = name;
      }
    }
    r.detail = "l_a(10)=" + detail::fmt(rep.pinched_final) + ", " +
               std::to_string(rep.probe_min.size()) + " non-simple probes, observed min " +
               detail::fmt(lowest) + " (" + lowest_name + ")";
    r.passed = r.failures.empty() && !rep.probe_min.empty();
  });
}

// 9
inline SuiteResult gr_filter(std::size_t max_len = 10) {
  return detail::timed(9, "gr", 900.0, [&](SuiteResult& r) {
    SearchConfig cfg;
    cfg.max_len = max_len;
    cfg.annotate_self_intersection = false;
    SearchResult res = search_tuples(cfg);
    Verdict v = gr_filter_check(res.tuples);
    r.failures = v.violations;
    r.detail = std::to_string(res.tuples.size()) + " multi-member buckets, " + v.detail;
    r.passed = v.passed();
  });
}

// 10
inline SuiteResult oracles(AcceptanceOps const& ops = {}, std::uint64_t seed = kSeed) {
  return detail::timed(10, "oracles", 900.0, [&](SuiteResult& r) {
    std::ostringstream os;
    // Enumeration against brute force.
    for (std::size_t len = 1; len <= 6; ++len) {
      std::size_t fast = 0;
      for_each_class_of_length(len, 2, {}, [&](CurveClass const&) { ++fast; });
      std::size_t slow = detail::brute_force_class_count(len);
      if (fast != slow) {
        r.failures.push_back("length " + std::to_string(len) + ": " + std::to_string(fast) +
                             " classes vs brute force " + std::to_string(slow));
      }
    }
    // Characters against exact traces, every reduced word of length <= 8.
    std::vector<std::string> keys;
    std::map<std::string, std::size_t> key_index;
    std::vector<FrickePolynomial> polys;
    std::vector<Word> reps;
    std::vector<std::vector<std::size_t>> word_key(9);
    std::vector<std::vector<Word>> words(9);
    for (std::size_t len = 0; len <= 8; ++len) {
      auto visit = [&](Word const& w) {
        std::string k = detail::cyclic_key(w);
        auto [it, fresh] = key_index.try_emplace(k, polys.size());
        if (fresh) {
          polys.push_back(ops.character(w));
          reps.push_back(w);
        }
        word_key[len].push_back(it->second);
        words[len].push_back(w);
      };
      if (len == 0) {
        visit(Word(2));
      } else {
        for_each_reduced_word(len, 2, visit);
      }
    }
    Rng rng(seed);
    std::size_t evaluations = 0;
    for (int t = 0; t < 100; ++t) {
      Representation<Integer> rho = random_integer_representation(2, rng);
      Integer x = rho.trace(parse_word("a", 2));
      Integer y = rho.trace(parse_word("b", 2));
      Integer z = rho.trace(parse_word("ab", 2));
      std::vector<Integer> value;
      value.reserve(polys.size());
      for (auto const& p : polys) value.push_back(p.evaluate<Integer>(x, y, z));
      // Depth-first over prefix products.
      std::vector<Mat2<Integer>> stack{Mat2<Integer>::identity()};
      std::vector<std::size_t> counter(9, 0);
      Letters buf;
      std::function<void()> dfs = [&] {
        std::size_t len = buf.size();
        std::size_t idx = counter[len]++;
        Integer tr = stack.back().trace();
        ++evaluations;
        if (tr != value[word_key[len][idx]]) {
          r.failures.push_back(to_string(words[len][idx]) + " at trial " + std::to_string(t));
        }
        if (len == 8) return;
        for (int code = 0; code < 4; ++code) {
          Letter l = Letter::from_code(static_cast<std::uint8_t>(code));
          if (!buf.empty() && l == buf.back().inverse()) continue;
          buf.push_back(l);
          stack.push_back(stack.back() * rho.image(l));
          dfs();
          stack.pop_back();
          buf.pop_back();
        }
      };
      // The DFS visits words in the same order as for_each_reduced_word
      // does within each length.
      dfs();
    }
    os << evaluations << " trace comparisons over " << polys.size() << " cyclic classes; ";
    // Probabilistic against exact equality.
    std::vector<CurveClass> classes = enumerate_classes(8, 2);
    CharacterIndex index = build_character_index(8);
    std::vector<std::pair<CurveClass, CurveClass>> equal_pairs;
    for (auto const& [key, members] : index.buckets) {
      for (std::size_t i = 1; i < members.size(); ++i) equal_pairs.emplace_back(members[0], members[i]);
    }
    Rng pick(seed ^ 0x9e3779b97f4a7c15ull);
    std::size_t agree_equal = 0, agree_distinct = 0;
    for (int i = 0; i < 1000; ++i) {
      CurveClass u = classes[0], v = classes[0];
      if (i % 2 == 0 && !equal_pairs.empty()) {
        auto const& pr = equal_pairs[static_cast<std::size_t>(
            pick.uniform(0, static_cast<std::int64_t>(equal_pairs.size()) - 1))];
        u = pr.first;
        v = pr.second;
      } else {
        u = classes[static_cast<std::size_t>(
            pick.uniform(0, static_cast<std::int64_t>(classes.size()) - 1))];
        v = classes[static_cast<std::size_t>(
            pick.uniform(0, static_cast<std::int64_t>(classes.size()) - 1))];
      }
      bool exact = ops.character(u.word()) == ops.character(v.word());
      auto verdict = chars_equal_probabilistic(u.word(), v.word(), 2, 20,
                                               seed + static_cast<std::uint64_t>(i));
      if (exact == verdict.distinct()) {
        r.failures.push_back(to_string(u) + " vs " + to_string(v) + ": exact says " +
                             (exact ? "equal" : "distinct"));
      } else {
        (exact ? agree_equal : agree_distinct)++;
      }
    }
    os << "1000 pairs (" << agree_equal << " equal, " << agree_distinct << " distinct)";
    r.detail = os.str();
    r.passed = r.failures.empty();
  });
}

struct SuiteInfo {
  int id;
  char const* name;
};

inline std::vector<SuiteInfo> suites() {
  return {{1, "horowitz-pair"}, {2, "reversal"},  {3, "horowitz"}, {4, "leading-coefficient"},
          {5, "normalization"}, {6, "self-intersection"}, {7, "collar"}, {8, "pinching"},
          {9, "gr"},            {10, "oracles"}};
}

inline SuiteResult run_suite(std::string const& name, AcceptanceOps const& ops = {}) {
  if (name == "horowitz-pair") return horowitz_pair(ops);
  if (name == "reversal") return reversal(ops);
  if (name == "horowitz") return primitive_buckets();
  if (name == "leading-coefficient") return leading_coefficient();
  if (name == "normalization") return normalization();
  if (name == "self-intersection") return self_intersection_pins();
  if (name == "collar") return collar();
  if (name == "pinching") return pinching();
  if (name == "gr") return gr_filter();
  if (name == "oracles") return oracles(ops);
  throw DomainError("unknown acceptance suite '" + name + "'");
}

// "all" or a suite name.
inline std::vector<SuiteResult> run(std::string const& which = "all",
                                    AcceptanceOps const& ops = {}) {
  std::vector<SuiteResult> out;
  for (auto const& s : suites()) {
    if (which == "all" || which == s.name) out.push_back(run_suite(s.name, ops));
  }
  if (out.empty()) throw DomainError("unknown acceptance suite '" + which + "'");
  return out;
}

inline std::string format_line(SuiteResult const& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " ("
     << detail::fmt(r.seconds, 3) << "s): " << r.detail;
  for (auto const& f : r.failures) os << "\n    " << f;
  return os.str();
}

}  // namespace horowitz::acceptance

#endif  // HOROWITZ_ACCEPTANCE_HPP_
