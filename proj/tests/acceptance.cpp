// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [seed] [criterion ...]

#include <cstdlib>
#include <iostream>
#include <string>

#include "tfg/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::stoull(argv[1]);
  std::vector<int> ids;
  for (int i = 2; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty())
    for (int id = 1; id <= tfg::kCriteria; ++id) ids.push_back(id);

  int failed = 0;
  for (int id : ids) {
    auto r = tfg::run_criterion(id, seed);
    std::cout << r.line() << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (failed ? "FAILED " : "PASSED ") << ids.size() - static_cast<std::size_t>(failed)
            << "/" << ids.size() << " criteria (seed " << seed << ")" << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
