#include <string>

#include "tfg/errors.hpp"
#include "tfg/group.hpp"
#include "tfg/towers.hpp"

namespace tfg {

namespace {

// D_k = cylinder(y, r) minus cylinder(y, r + 1) for the k-th radius r at
// which the difference is nonempty; y is the alternate point.
std::pair<ClopenSet, std::int64_t> shell(SystemRef const& sys, std::int64_t k) {
  auto y = sys->base_point(Anchor::alternate);
  std::int64_t seen = 0;
  for (std::int64_t r = 1; r < 4096; ++r) {
    auto d = difference(point_cylinder(y, r), point_cylinder(y, r + 1));
    if (d.is_empty()) continue;
    if (++seen == k) return {d, r + 1};
  }
  throw InternalError("no shell of index " + std::to_string(k));
}

}  // namespace

DirectSumGenerator directsum_generator(SystemRef const& system, std::int64_t k) {
  if (k < 1) throw PreconditionError("direct sum index starts at 1");
  auto [d, radius] = shell(system, k);
  constexpr Power max_shift = 1024;
  for (Power q = 1; q <= max_shift; ++q) {
    // points of D that are back in D after q steps
    auto back = intersect(d, translate(d, -q));
    if (back.is_empty()) continue;
    for (auto depth = radius; depth < radius + 8; ++depth) {
      auto w = system->hull(back.window(), system->central(depth));
      for (auto const& u : back.words_on(w)) {
        ClopenSet c(system, w, {u});
        auto moved = translate(c, q);
        if (!disjoint(moved, c)) continue;
        auto g = compose(induced(c), invert(induced(moved)));
        return DirectSumGenerator{g, c, moved, q};
      }
    }
  }
  throw InternalError("no block pair found in shell " + std::to_string(k));
}

}  // namespace tfg
