#include "tfg/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "tfg/canon.hpp"
#include "tfg/errors.hpp"
#include "tfg/lef.hpp"
#include "tfg/sampling.hpp"

namespace tfg {

namespace {

// Counts checks and keeps the first failure.
struct Tally {
  std::int64_t checks = 0;
  std::string failure;

  bool ok() const { return failure.empty(); }
  void expect(bool cond, std::string const& what) {
    ++checks;
    if (!cond && failure.empty()) failure = what;
  }
};

std::int64_t cyclic(std::int64_t d, std::int64_t h) {
  auto r = ((d % h) + h) % h;
  if (2 * r > h) r -= h;
  return r;
}

SystemRef odometer() { return builtin_system("odometer2"); }
SystemRef fibonacci() { return builtin_system("fibonacci"); }

TowerSequence const& primary(SystemRef const& s) {
  return anchored_sequence(s->base_point(Anchor::primary));
}

std::vector<GroupElement> sample(SystemRef const& s, std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<GroupElement> out;
  for (int k = 0; k < count; ++k) out.push_back(random_element(s, rng));
  return out;
}

Power signed_rotation(Factorization const& f) {
  Power r = 0;
  for (auto const& [_, l] : f.r.up) r += l;
  for (auto const& [_, k] : f.r.down) r += k;
  return r;
}

void check_factorization(Tally& t, Factorization const& f, TowerSequence const& seq) {
  auto tag = f.q.system()->name() + " " + element_hash(f.q) + ": ";
  t.expect(equals(compose(f.p_element, f.r_element), f.q), tag + "P R != Q");
  t.expect(f.r.rotation_number() <= 1, tag + "rotation number above 1");
  for (auto const* side : {&f.r.up, &f.r.down})
    for (auto const& [i, e] : *side)
      t.expect(i >= 0 && i < f.n0, tag + "supportive level " + std::to_string(i) + " outside [0, n0)");
  auto const& xi = seq.level(f.level).partition;
  auto m = seq.m(f.level);
  for (std::int64_t i = -m; i <= m; ++i) {
    std::set<std::int64_t> images;
    for (std::size_t v = 0; v < xi.size(); ++v) {
      auto h = xi.towers()[v].height;
      auto l = ((i % h) + h) % h;
      images.insert(i + cyclic(f.p.perms[v][static_cast<std::size_t>(l)] - l, h));
    }
    t.expect(images.size() == 1, tag + "towers disagree at level " + std::to_string(i));
  }
  for (std::size_t v = 0; v < xi.size(); ++v) {
    auto h = xi.towers()[v].height;
    for (std::int64_t l = 0; l < h; ++l) {
      auto d = cyclic(f.p.perms[v][static_cast<std::size_t>(l)] - l, h);
      t.expect((d < 0 ? -d : d) <= f.n0, tag + "displacement above n0");
    }
  }
}

std::pair<bool, std::string> factorization_suite(std::uint64_t seed) {
  Tally t;
  std::int64_t max_level = 0;
  int elements = 0;
  for (auto const& s : {odometer(), fibonacci()}) {
    auto const& seq = primary(s);
    auto first = sample(s, seed, 100);
    auto again = sample(s, seed, 100);
    for (std::size_t k = 0; k < first.size(); ++k) {
      auto f = factorize(first[k]);
      check_factorization(t, f, seq);
      t.expect(first[k].to_string() == again[k].to_string(), "sampling is not deterministic");
      t.expect(factorize(again[k]).report() == f.report(), "factorization is not deterministic");
      max_level = std::max(max_level, f.level);
      ++elements;
    }
  }
  return {t.ok(), t.ok() ? std::to_string(elements) + " elements, " + std::to_string(t.checks) +
                               " checks, highest level " + std::to_string(max_level)
                         : t.failure};
}

std::pair<bool, std::string> uniqueness(std::uint64_t seed) {
  Tally t;
  std::int64_t perturbed = 0;
  for (auto const& s : {odometer(), fibonacci()}) {
    auto const& seq = primary(s);
    for (auto const& q : sample(s, seed + 1, 25)) {
      auto f = factorize(q);
      auto const& xi = seq.level(f.level).partition;
      t.expect(is_n_rotation(compose(invert(f.p_element), q), seq, f.level).form.has_value(),
               "unperturbed P^-1 Q is not a rotation");
      for (std::size_t v = 0; v < xi.size(); ++v) {
        auto h = xi.towers()[v].height;
        for (std::int64_t a = 0; a < h; ++a)
          for (std::int64_t b = a + 1; b < h; ++b) {
            auto p = compose(f.p_element, level_transposition(xi, v, a, b));
            auto rest = compose(invert(p), q);
            t.expect(!is_n_rotation(rest, seq, f.level),
                     s->name() + " " + element_hash(q) + ": transposition (" + std::to_string(a) +
                         " " + std::to_string(b) + ") in tower " + std::to_string(v) +
                         " keeps a rotation");
            ++perturbed;
          }
      }
    }
  }
  return {t.ok(), t.ok() ? "50 factorizations, " + std::to_string(perturbed) + " transpositions"
                         : t.failure};
}

std::pair<bool, std::string> index_suite(std::uint64_t seed) {
  Tally t;
  int agreements = 0;
  auto agree = [&](GroupElement const& q) {
    auto c = orbit_counts(q, q.system()->base_point(Anchor::primary));
    t.expect(signed_rotation(factorize(q)) == c.a - c.b,
             "orbit and rotation counts differ for " + element_hash(q));
    ++agreements;
  };
  Rng rng(seed + 2);
  for (auto const& s : {odometer(), fibonacci()}) {
    auto tt = t_power(s, 1);
    t.expect(index(tt) == 1, s->name() + ": index(T) != 1");
    agree(tt);
    for (int k = 0; k < 10; ++k) {
      auto tc = induced(random_clopen(s, rng, 1 + k % 3));
      t.expect(index(tc) == 1, s->name() + ": index(T_C) != 1");
      agree(tc);
    }
    for (int k = 0; k < 50; ++k) {
      auto a = random_element(s, rng);
      auto b = random_element(s, rng);
      auto ab = compose(a, b);
      t.expect(index(ab) == index(a) + index(b), s->name() + ": index not additive");
      agree(a);
      agree(b);
      agree(ab);
    }
  }
  return {t.ok(), t.ok() ? "2 x (T, 10 induced maps, 50 pairs); " + std::to_string(agreements) +
                               " count agreements"
                         : t.failure};
}

std::pair<bool, std::string> odometer_suite(std::uint64_t seed) {
  std::string detail;
  for (std::int64_t n = 1; n <= 4; ++n) {
    auto r = odometer_structure(odometer(), n, seed + 3);
    if (!r.all()) return {false, "n=" + std::to_string(n) + "\n" + r.text()};
    detail += (n > 1 ? ", " : "") + std::string("n=") + std::to_string(n) + " ok";
  }
  return {true, detail};
}

std::pair<bool, std::string> lef_suite(std::uint64_t) {
  std::string detail;
  for (auto const& s : {odometer(), fibonacci()}) {
    std::vector<GroupElement> gens{identity(s), t_power(s, 1), three_cycle(s)};
    std::vector<GroupElement> f;
    for (auto const& a : gens)
      for (auto const& b : gens) f.push_back(compose(a, b));
    auto w = lef_map(f);
    auto r = verify_lef(w);
    if (!r.pass || !w.injective || !w.multiplicative)
      return {false, s->name() + ": " + r.violation};
    auto back = verify_lef(parse_witness(w.to_text(), w.members));
    if (!back.pass) return {false, s->name() + ": re-read witness fails: " + back.violation};
    detail += (detail.empty() ? "" : ", ") + s->name() + " level " + std::to_string(w.level) +
              " |F|=" + std::to_string(w.members.size());
  }
  return {true, detail};
}

std::pair<bool, std::string> tower_suite(std::uint64_t) {
  Tally t;
  for (auto const& s : {odometer(), fibonacci()}) {
    auto const& seq = primary(s);
    for (std::int64_t n = 1; n <= 6; ++n) {
      auto tag = s->name() + " level " + std::to_string(n) + ": ";
      auto rep = check_conditions(seq, n);
      t.expect(rep.partition, tag + "not a partition");
      t.expect(rep.generates, tag + "atoms do not generate");
      t.expect(rep.refines, tag + "next level does not refine");
      t.expect(rep.nested_bases, tag + "bases not nested");
      t.expect(rep.height, tag + "height below 2m+2");
      t.expect(rep.diameter, tag + "base levels too wide");
      auto const& xi = seq.level(n).partition;
      t.expect(equals(translate(xi.top_set(), 1), xi.base_set()), tag + "T(H) != B");
      t.expect(xi.min_height() >= 2 * seq.m(n) + 2, tag + "h < 2m+2");
    }
  }
  return {t.ok(), t.ok() ? "levels 1..6, both systems, " + std::to_string(t.checks) + " checks"
                         : t.failure};
}

std::pair<bool, std::string> kernel_suite(std::uint64_t seed) {
  Tally t;
  auto s = odometer();
  auto x = s->base_point(Anchor::primary);
  auto y = s->base_point(Anchor::alternate);
  Rng rng(seed + 4);
  int crossing = 0;
  for (int k = 0; k < 20; ++k) {
    auto a = random_element(s, rng);
    GroupElement q = a;
    if (k % 2 == 0) {
      q = compose(a, t_power(s, -index(a)));
    } else {
      q = commutator(a, random_element(s, rng));
    }
    auto tag = element_hash(q) + ": ";
    t.expect(index(q) == 0, tag + "sample has nonzero index");
    auto d = kernel_decompose(q, x, y);
    t.expect(equals(compose(d.p1, d.p2), q), tag + "Q != P1 P2");
    t.expect(is_identity(compose(d.p2, d.p2)), tag + "P2 is not an involution");
    t.expect(in_stabilizer(d.p2, y), tag + "P2 moves the alternate orbit");
    t.expect(in_stabilizer(d.p1, x), tag + "P1 moves the primary orbit");
    if (!d.i_minus.empty()) ++crossing;
  }
  return {t.ok(), t.ok() ? "20 elements, " + std::to_string(crossing) + " with crossings" : t.failure};
}

std::pair<bool, std::string> separation_suite(std::uint64_t seed) {
  Tally t;
  Rng rng(seed + 5);
  for (auto const& s : {odometer(), fibonacci()}) {
    for (int k = 0; k < 5; ++k) {
      auto x = s->shift(s->base_point(Anchor::primary), static_cast<Power>(rng() % 41) - 20);
      auto o = unite(point_cylinder(x, 1 + k % 3), random_clopen(s, rng, 2));
      auto w = separation_witness(o, x);
      auto tag = s->name() + " O=" + o.to_string() + ": ";
      t.expect(subset(support(w.g), o), tag + "support leaves O");
      t.expect(value_at(w.g, x) != 0, tag + "x is fixed");
      t.expect(order(w.g, 5).order == std::optional<std::int64_t>(3), tag + "order is not 3");
      t.expect(index(w.g) == 0, tag + "index is not 0");
      t.expect(equals(w.g, commutator(w.s, w.t)), tag + "not the stated commutator");
      t.expect(is_identity(compose(w.s, w.s)) && is_identity(compose(w.t, w.t)),
               tag + "factors are not involutions");
    }
  }
  return {t.ok(), t.ok() ? "10 pairs" : t.failure};
}

// Digits of n mod 2^12, least significant first.
Word dyadic_word(std::uint64_t n) {
  Word w;
  for (int i = 0; i < 12; ++i) w += static_cast<char>('0' + ((n >> i) & 1u));
  return w;
}

Power cell_time(ReturnFunction const& r, Word const& u) {
  for (auto const& [k, c] : r.cells)
    if (c.contains_word(u, Window{0, 11})) return k;
  return 0;
}

std::pair<bool, std::string> first_return_suite(std::uint64_t) {
  Tally t;
  auto o = odometer();
  for (char d : {'0', '1'}) {
    auto a = cylinder(o, Word(1, d), 0);
    auto r = first_return(a);
    t.expect(r.cells.size() == 1 && r.cells[0].first == 2 && equals(r.cells[0].second, a),
             std::string("[") + d + "] does not return constantly in 2");
    // trace orbits of all 2^12 residues
    for (std::uint64_t n = 0; n < 4096; ++n) {
      auto u = dyadic_word(n);
      if (u[0] != d) continue;
      Power k = 1;
      while (dyadic_word((n + static_cast<std::uint64_t>(k)) % 4096)[0] != d) ++k;
      t.expect(cell_time(r, u) == k, "odometer return time differs at " + u);
    }
  }

  auto f = fibonacci();
  auto a = cylinder(f, "a", 0);
  auto r = first_return(a);
  t.expect(r.cells.size() == 2, "[a] should have two return cells");
  if (r.cells.size() == 2) {
    t.expect(r.cells[0].first == 1 && equals(r.cells[0].second, cylinder(f, "aa", 0)),
             "first cell is not aa@0 with time 1");
    t.expect(r.cells[1].first == 2 && equals(r.cells[1].second, cylinder(f, "ab", 0)),
             "second cell is not ab@0 with time 2");
  }
  // factors of width 12 of a long prefix of the fixed point
  Word w = "a";
  auto const& rule = f->config().rule;
  while (w.size() < 20000) {
    Word next;
    for (char c : w) next += rule.at(c);
    w = std::move(next);
  }
  std::set<Word> factors;
  for (std::size_t i = 0; i + 12 <= w.size(); ++i) factors.insert(w.substr(i, 12));
  auto lang = language(*f, 12);
  t.expect(factors == std::set<Word>(lang.begin(), lang.end()), "width-12 language differs");
  for (auto const& u : factors) {
    if (u[0] != 'a') continue;
    Power k = 1;
    while (u[static_cast<std::size_t>(k)] != 'a') ++k;
    t.expect(cell_time(r, u) == k, "fibonacci return time differs at " + u);
  }
  return {t.ok(), t.ok() ? std::to_string(t.checks) + " checks" : t.failure};
}

struct Criterion {
  char const* title;
  double limit;
  std::function<std::pair<bool, std::string>(std::uint64_t)> run;
};

std::vector<Criterion> const& criteria() {
  static std::vector<Criterion> const all{
      {"factorization suite", 60, factorization_suite},
      {"uniqueness under transpositions", 30, uniqueness},
      {"index homomorphism", 30, index_suite},
      {"odometer structure", 120, odometer_suite},
      {"LEF witnesses", 120, lef_suite},
      {"tower invariants", 30, tower_suite},
      {"kernel decomposition", 60, kernel_suite},
      {"separation witnesses", 30, separation_suite},
      {"first-return oracles", 10, first_return_suite},
  };
  return all;
}

}  // namespace

std::string CriterionResult::line() const {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs %s %.0fs", seconds, seconds < limit ? "<" : ">=",
                limit);
  return std::string(pass ? "PASS" : "FAIL") + " C" + std::to_string(id) + " " + title + " (" +
         timing + "): " + detail;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriteria) throw PreconditionError("no criterion " + std::to_string(id));
  auto const& c = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult out;
  out.id = id;
  out.title = c.title;
  out.limit = c.limit;
  auto start = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = c.run(seed);
    out.pass = ok;
    out.detail = detail;
  } catch (std::exception const& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.seconds >= out.limit) {
    out.pass = false;
    out.detail += " [time limit exceeded]";
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace tfg
