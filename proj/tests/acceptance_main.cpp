// One line per acceptance criterion; exit status 1 if any fails.

#include <iostream>
#include <string>

#include "horowitz/acceptance.hpp"

int main(int argc, char** argv) {
  std::string which = argc > 1 ? argv[1] : "all";
  bool all_passed = true;
  try {
    for (auto const& s : horowitz::acceptance::suites()) {
      if (which != "all" && which != s.name) continue;
      auto r = horowitz::acceptance::run_suite(s.name);
      std::cout << horowitz::acceptance::format_line(r) << std::endl;
      all_passed = all_passed && r.passed;
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return all_passed ? 0 : 1;
}
