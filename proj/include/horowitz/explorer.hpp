// Exhaustive search for distinct curve classes with equal characters, and
// the verdicts run over its output.

#ifndef HOROWITZ_EXPLORER_HPP_
#define HOROWITZ_EXPLORER_HPP_

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "horowitz/error.hpp"
#include "horowitz/intersections.hpp"
#include "horowitz/traces.hpp"
#include "horowitz/words.hpp"

namespace horowitz {

////////////////////////////////////////////////////////////////////////////
// Non-singular vectors
////////////////////////////////////////////////////////////////////////////

inline constexpr std::size_t kMaxGrEntries = 20;

// No entry r_k equals a subset sum over S != {k} (the empty set included).
inline bool gr_nonsingular(std::span<int const> r) {
  if (r.size() > kMaxGrEntries) {
    throw DomainError("vector too long for the exhaustive subset check (p > 20)");
  }
  std::unordered_multimap<long, std::size_t> where;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) throw DomainError("entries must be nonzero");
    where.emplace(r[k], k);
  }
  std::size_t const subsets = std::size_t{1} << r.size();
  std::vector<long> sums(subsets, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + r[low];
  }
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    auto [lo, hi] = where.equal_range(sums[mask]);
    for (auto it = lo; it != hi; ++it) {
      if (mask != (std::size_t{1} << it->second)) return false;
    }
  }
  return true;
}

inline bool gr_nonsingular(std::vector<int> const& r) {
  return gr_nonsingular(std::span<int const>(r));
}

////////////////////////////////////////////////////////////////////////////
// Search
////////////////////////////////////////////////////////////////////////////

struct SearchConfig {
  std::size_t max_len = 5;
  int rank = 2;
  bool include_powers = false;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool annotate_self_intersection = true;
};

struct MemberFlags {
  bool is_reversal_of_first = false;
  bool gr_nonsingular_both_vectors = false;
  bool proper_power = false;
  std::optional<std::size_t> self_intersection;
};

struct TupleReport {
  std::string key;
  std::vector<CurveClass> members;
  std::vector<MemberFlags> flags;
};

// Every enumerated class grouped by the canonical string of its character.
struct CharacterIndex {
  std::map<std::string, std::vector<CurveClass>> buckets;
  std::size_t classes = 0;

  std::vector<CurveClass> const* bucket_of(CurveClass const& c) const {
    auto it = buckets.find(fricke_char(c).to_string());
    return it == buckets.end() ? nullptr : &it->second;
  }
};

struct SearchResult {
  SearchConfig config;
  CharacterIndex index;
  std::vector<TupleReport> tuples;  // buckets with >= 2 members

  // (length of the shortest member, bucket size) -> bucket count
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> histogram() const {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> h;
    for (auto const& [key, members] : index.buckets) {
      ++h[{members.front().size(), members.size()}];
    }
    return h;
  }
};

inline CurveClass reversal_class(CurveClass const& c) {
  Letters rev(c.word().letters().rbegin(), c.word().letters().rend());
  return CurveClass::from_canonical_unchecked(
      CyclicWord(detail::canonical_cyclic(rev), c.rank()));
}

inline bool gr_nonsingular_both(CurveClass const& c) {
  if (c.rank() != 2) return false;
  auto ev = exponent_vectors(c.canonical());
  return ev && gr_nonsingular(ev->m) && gr_nonsingular(ev->n);
}

namespace detail {

  struct SearchItem {
    std::size_t length;
    Letters prefix;
  };

  inline std::vector<SearchItem> search_items(std::size_t max_len, int rank) {
    std::vector<SearchItem> items;
    for (std::size_t len = 1; len <= max_len; ++len) {
      if (len == 1) {
        items.push_back({len, {}});
        continue;
      }
      for (int c0 = 0; c0 < 2 * rank; ++c0) {
        for (int c1 = 0; c1 < 2 * rank; ++c1) {
          if ((c0 ^ 1) == c1) continue;
          items.push_back({len,
                           {Letter::from_code(static_cast<std::uint8_t>(c0)),
                            Letter::from_code(static_cast<std::uint8_t>(c1))}});
        }
      }
    }
    return items;
  }

  using LocalBuckets = std::vector<std::pair<std::string, CurveClass>>;

}  // namespace detail

inline CharacterIndex build_character_index(std::size_t max_len, bool include_powers = false,
                                            unsigned threads = 1) {
  auto items = detail::search_items(max_len, 2);
  std::vector<detail::LocalBuckets> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      for_each_class_of_length(
          items[i].length, 2, items[i].prefix,
          [&](CurveClass const& c) { results[i].emplace_back(fricke_char(c).to_string(), c); },
          EnumerationOptions{include_powers});
    }
  };
  unsigned width = std::max(1u, threads);
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  CharacterIndex index;
  for (auto& local : results) {
    for (auto& [key, c] : local) {
      index.buckets[key].push_back(std::move(c));
      ++index.classes;
    }
  }
  for (auto& [key, members] : index.buckets) std::sort(members.begin(), members.end());
  return index;
}

inline SearchResult search_tuples(SearchConfig const& cfg) {
  if (cfg.rank != 2) throw DomainError("exact search supports rank 2 only");
  if (cfg.max_len < 2) throw DomainError("max_len must be at least 2");
  SearchResult out;
  out.config = cfg;
  out.index = build_character_index(cfg.max_len, cfg.include_powers, cfg.threads);
  std::optional<DiscreteStructure> structure;
  for (auto const& [key, members] : out.index.buckets) {
    if (members.size() < 2) continue;
    TupleReport rep{key, members, {}};
    CurveClass rev_first = reversal_class(members.front());
    for (auto const& m : members) {
      MemberFlags f;
      f.is_reversal_of_first = m == rev_first;
      f.proper_power = detail::smallest_period(m.word().letters()) != m.size();
      f.gr_nonsingular_both_vectors = !f.proper_power && gr_nonsingular_both(m);
      if (cfg.annotate_self_intersection && !f.proper_power && !is_peripheral(m)) {
        if (!structure) structure.emplace(DiscreteStructure::standard());
        CrossingCount cc = self_intersection(m, *structure);
        if (cc.stable) f.self_intersection = cc.count;
      }
      rep.flags.push_back(f);
    }
    out.tuples.push_back(std::move(rep));
  }
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Verdicts
////////////////////////////////////////////////////////////////////////////

struct Verdict {
  std::string name;
  std::vector<std::string> violations;
  std::string detail;

  bool passed() const noexcept {
    return violations.empty();
  }
};

// The bucket of a^m b^n among classes of length <= max_len is exactly its
// own class.
inline Verdict horowitz_primitive_check(int m, int n, CharacterIndex const& index) {
  if (m == 0 && n == 0) throw DomainError("(m, n) must not be (0, 0)");
  Word w = power(parse_word("a", 2), m) * power(parse_word("b", 2), n);
  CurveClass target = canonical_class(w);
  Verdict v{"horowitz(" + std::to_string(m) + "," + std::to_string(n) + ")", {}, {}};
  auto const* bucket = index.bucket_of(target);
  if (bucket == nullptr) {
    v.violations.push_back(to_string(target) + " is not in the index");
    return v;
  }
  for (auto const& c : *bucket) {
    if (!(c == target)) v.violations.push_back(to_string(c) + " shares the character of " +
                                               to_string(target));
  }
  v.detail = "bucket size " + std::to_string(bucket->size());
  return v;
}

inline Verdict horowitz_primitive_check(int m, int n, std::size_t max_len) {
  if (static_cast<std::size_t>(std::abs(m) + std::abs(n)) > max_len) {
    throw DomainError("|m| + |n| exceeds max_len");
  }
  return horowitz_primitive_check(m, n, build_character_index(max_len));
}

// A member whose exponent vectors are both non-singular shares its bucket
// only with its reversal class.
inline Verdict gr_filter_check(std::vector<TupleReport> const& reports) {
  Verdict v{"gr-filter", {}, {}};
  std::size_t checked = 0;
  for (auto const& rep : reports) {
    for (std::size_t i = 0; i < rep.members.size(); ++i) {
      CurveClass const& u = rep.members[i];
      bool eligible = i < rep.flags.size() ? rep.flags[i].gr_nonsingular_both_vectors
                                           : gr_nonsingular_both(u);
      if (!eligible) continue;
      ++checked;
      CurveClass rev = reversal_class(u);
      for (auto const& other : rep.members) {
        if (other == u || other == rev) continue;
        v.violations.push_back(to_string(u) + " and " + to_string(other) + " share " +
                               rep.key + " but are not reversals");
      }
    }
  }
  v.detail = std::to_string(checked) + " non-singular members checked";
  return v;
}

// Simple classes should sit in singleton buckets.
inline Verdict mcshane_character_check(std::vector<TupleReport> const& reports,
                                       DiscreteStructure const& s) {
  Verdict v{"simple-singletons", {}, {}};
  std::size_t checked = 0;
  for (auto const& rep : reports) {
    for (auto const& c : rep.members) {
      if (detail::smallest_period(c.word().letters()) != c.size() || is_peripheral(c)) continue;
      ++checked;
      if (is_simple(c, s)) {
        v.violations.push_back("simple class " + to_string(c) + " shares " + rep.key);
      }
    }
  }
  v.detail = std::to_string(checked) + " multi-bucket members tested for simplicity";
  return v;
}

inline Verdict mcshane_character_check(std::size_t max_len) {
  SearchConfig cfg;
  cfg.max_len = max_len;
  cfg.annotate_self_intersection = false;
  return mcshane_character_check(search_tuples(cfg).tuples, DiscreteStructure::standard());
}

}  // namespace horowitz

#endif  // HOROWITZ_EXPLORER_HPP_
