#ifndef TFG_SAMPLING_HPP
#define TFG_SAMPLING_HPP

// Seeded random elements and sets for property checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/group.hpp"

namespace tfg {

using Rng = std::mt19937_64;

struct Generator {
  std::string name;
  GroupElement element;
};

/// T, T^-1, a block transposition, a block 3-cycle and an induced map.
std::vector<Generator> generator_pool(SystemRef const& system);

/// Block 3-cycle U -> TU -> T^2U -> U on the first cylinder with disjoint blocks.
GroupElement three_cycle(SystemRef const& system);

/// Product of 1..max_length pool elements.
GroupElement random_element(SystemRef const& system, Rng& rng, int max_length = 6);

/// Nonempty union of cylinders of the given radius.
ClopenSet random_clopen(SystemRef const& system, Rng& rng, std::int64_t radius);

}  // namespace tfg

#endif  // TFG_SAMPLING_HPP
