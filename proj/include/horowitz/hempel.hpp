// Empirical lower bound for lengths of non-simple curves over a grid of
// structures.

#ifndef HOROWITZ_HEMPEL_HPP_
#define HOROWITZ_HEMPEL_HPP_

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horowitz/error.hpp"
#include "horowitz/geometry.hpp"
#include "horowitz/intersections.hpp"
#include "horowitz/words.hpp"

namespace horowitz {

struct HempelScanConfig {
  std::size_t max_len = 8;
  std::vector<std::pair<Rational, Rational>> grid;
  // Filled in by hempel_scan.
  std::optional<long double> observed_min;
};

struct HempelResult {
  long double observed_min = std::numeric_limits<long double>::infinity();
  std::string argmin_class;
  std::string argmin_structure;
  std::size_t non_simple_classes = 0;
  std::size_t structures = 0;
};

// Non-peripheral classes of length <= max_len that are not simple.
// Simplicity does not depend on the structure; the standard one is used.
inline std::vector<CurveClass> non_simple_classes(std::size_t max_len) {
  DiscreteStructure s = DiscreteStructure::standard();
  std::vector<CurveClass> out;
  for_each_class(max_len, 2, [&](CurveClass const& c) {
    if (!is_peripheral(c) && !is_simple(c, s)) out.push_back(c);
  });
  return out;
}

inline HempelResult hempel_scan(HempelScanConfig& cfg) {
  if (cfg.grid.empty()) throw DomainError("empty structure grid");
  if (cfg.max_len < 5) throw DomainError("max_len must be at least 5");
  HempelResult out;
  auto classes = non_simple_classes(cfg.max_len);
  out.non_simple_classes = classes.size();
  for (auto const& [x, y] : cfg.grid) {
    FrickeTriple t = punctured_torus_structure(x, y);
    ++out.structures;
    for (auto const& c : classes) {
      long double l = curve_length(t, c).length;
      if (l < out.observed_min) {
        out.observed_min = l;
        out.argmin_class = to_string(c);
        out.argmin_structure = t.label();
      }
    }
  }
  cfg.observed_min = out.observed_min;
  return out;
}

}  // namespace horowitz

#endif  // HOROWITZ_HEMPEL_HPP_
