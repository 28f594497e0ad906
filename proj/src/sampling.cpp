#include "tfg/sampling.hpp"

#include <map>
#include <mutex>

#include "tfg/errors.hpp"
#include "tfg/towers.hpp"

namespace tfg {

namespace {

// First cylinder at offset 0 (by length from 2, then word order) whose
// translates U, TU, ..., T^{m-1}U are pairwise disjoint.
ClopenSet block_base(SystemRef const& sys, std::int64_t m) {
  for (std::int64_t len = 2; len <= 24; ++len) {
    for (auto const& u : sys->words(Window{0, len - 1})) {
      auto c = cylinder(sys, u, 0);
      bool ok = true;
      for (std::int64_t i = 1; i < m && ok; ++i) ok = disjoint(c, translate(c, i));
      if (ok) return c;
    }
  }
  throw InternalError("no disjoint block family found");
}

std::vector<std::int64_t> cycle(std::int64_t m) {
  std::vector<std::int64_t> p;
  for (std::int64_t i = 0; i < m; ++i) p.push_back((i + 1) % m);
  return p;
}

}  // namespace

GroupElement three_cycle(SystemRef const& system) {
  return embed_symmetric(system, 3, cycle(3), block_base(system, 3));
}

std::vector<Generator> generator_pool(SystemRef const& system) {
  static std::mutex mutex;
  static std::map<System const*, std::vector<Generator>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(system.get());
  if (it != cache.end()) return it->second;
  std::vector<Generator> pool;
  pool.push_back({"T", t_power(system, 1)});
  pool.push_back({"T^-1", t_power(system, -1)});
  pool.push_back({"swap", embed_symmetric(system, 2, cycle(2), block_base(system, 2))});
  pool.push_back({"cycle3", three_cycle(system)});
  auto letter = system->kind() == SystemKind::odometer ? Word("1")
                                                       : Word(1, system->config().alphabet.front());
  pool.push_back({"induced", induced(cylinder(system, letter, 0))});
  cache.emplace(system.get(), pool);
  return pool;
}

GroupElement random_element(SystemRef const& system, Rng& rng, int max_length) {
  auto pool = generator_pool(system);
  std::uniform_int_distribution<int> length(1, max_length);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto out = identity(system);
  for (int n = length(rng); n > 0; --n) out = compose(out, pool[pick(rng)].element);
  return out;
}

ClopenSet random_clopen(SystemRef const& system, Rng& rng, std::int64_t radius) {
  auto w = system->central(radius);
  auto const& lang = system->words(w);
  std::bernoulli_distribution coin(0.5);
  std::vector<Word> chosen;
  for (auto const& u : lang)
    if (coin(rng)) chosen.push_back(u);
  if (chosen.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, lang.size() - 1);
    chosen.push_back(lang[pick(rng)]);
  }
  return ClopenSet(system, w, std::move(chosen));
}

}  // namespace tfg
