#include "tfg/errors.hpp"
#include "tfg/sampling.hpp"
#include "tfg/towers.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace tfg;

namespace {

SystemRef odo() { return builtin_system("odometer2"); }
SystemRef fib() { return builtin_system("fibonacci"); }

// Return time of position p to A inside the word, 0 if none within it.
std::int64_t word_return(std::string const& w, std::int64_t p, ClopenSet const& a, std::int64_t limit) {
  for (std::int64_t k = 1; k <= limit; ++k)
    if (oracle::member(w, p + k, a)) return k;
  return 0;
}

std::int64_t dyadic_return(std::uint64_t n, int digits, ClopenSet const& a) {
  std::uint64_t mod = std::uint64_t{1} << digits;
  for (std::uint64_t k = 1; k <= mod; ++k)
    if (oracle::member_dyadic((n + k) % mod, digits, a)) return static_cast<std::int64_t>(k);
  return 0;
}

Power cell_of(ReturnFunction const& r, std::string const& w, std::int64_t p) {
  for (auto const& [k, c] : r.cells)
    if (oracle::member(w, p, c)) return k;
  return 0;
}

}  // namespace

TEST_CASE("first return to a letter") {
  auto r = first_return(cylinder(fib(), "a", 0));
  REQUIRE(r.cells.size() == 2);
  CHECK(r.cells[0].first == 1);
  CHECK(r.cells[0].second.to_string() == "aa@0");
  CHECK(r.cells[1].first == 2);
  CHECK(r.cells[1].second.to_string() == "b@1");

  auto o = first_return(cylinder(odo(), "00", 0));
  REQUIRE(o.cells.size() == 1);
  CHECK(o.cells[0].first == 4);
  CHECK_THROWS_AS(first_return(ClopenSet::empty(odo())), PreconditionError);
}

TEST_CASE("first return agrees with brute force") {
  auto w = oracle::fibonacci_word(8000);
  Rng rng(21);
  for (int t = 0; t < 25; ++t) {
    auto a = random_clopen(fib(), rng, 1 + t % 4);
    auto r = first_return(a);
    Power top = r.cells.back().first;
    for (std::int64_t p = 200; p < 7000; ++p) {
      if (!oracle::member(w, p, a)) continue;
      CHECK(cell_of(r, w, p) == word_return(w, p, a, top + 1));
    }
  }
  for (int t = 0; t < 25; ++t) {
    auto a = random_clopen(odo(), rng, 1 + t % 6);
    auto r = first_return(a);
    int d = static_cast<int>(a.window().width());
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << d); ++n) {
      if (!oracle::member_dyadic(n, d, a)) continue;
      Power k = 0;
      for (auto const& [kk, c] : r.cells)
        if (oracle::member_dyadic(n, d, c)) k = kk;
      CHECK(k == dyadic_return(n, d, a));
    }
  }
}

TEST_CASE("induced maps agree with brute force") {
  auto w = oracle::fibonacci_word(8000);
  Rng rng(22);
  for (int t = 0; t < 15; ++t) {
    auto a = random_clopen(fib(), rng, 2);
    auto s = induced(a);
    CHECK(subset(support(s), a));
    CHECK(equals(image(s, a), a));
    for (std::int64_t p = 200; p < 7000; p += 7) {
      auto expect = oracle::member(w, p, a) ? word_return(w, p, a, 1000) : 0;
      CHECK(oracle::cocycle_at(w, p, s) == expect);
    }
  }
  CHECK(equals(induced(ClopenSet::full(odo())), t_power(odo(), 1)));
}

TEST_CASE("return partitions") {
  auto s = odo();
  auto xi = kr_from_set(cylinder(s, "000", 0));
  REQUIRE(xi.size() == 1);
  CHECK(xi.towers()[0].height == 8);
  CHECK_NOTHROW(xi.verify());
  CHECK(xi.atom_count() == 8);
  CHECK(equals(xi.top_set(), cylinder(s, "111", 0)));
  CHECK(equals(u_set(xi, 0), cylinder(s, "111", 0)));
  CHECK(equals(d_set(xi, 1), cylinder(s, "100", 0)));
  CHECK(equals(xi.atom(0, 3), cylinder(s, "110", 0)));

  auto trivial = kr_from_set(ClopenSet::full(s));
  CHECK(trivial.size() == 1);
  CHECK(trivial.towers()[0].height == 1);

  auto f = kr_from_set(cylinder(fib(), "b", 0));
  CHECK(f.size() == 2);
  CHECK_NOTHROW(f.verify());
  CHECK(f.min_height() == 2);
  CHECK(equals(translate(f.top_set(), 1), f.base_set()));

  KRPartition bogus({Tower{cylinder(s, "0", 0), 1}});
  CHECK_THROWS_AS(bogus.verify(), VerificationError);
}

TEST_CASE("refinement splits bases and keeps heights") {
  Rng rng(23);
  for (auto sys : {odo(), fib()}) {
    auto xi = kr_from_set(sys == odo() ? cylinder(sys, "00", 0) : cylinder(sys, "b", 0));
    for (int t = 0; t < 10; ++t) {
      auto b = random_clopen(sys, rng, 3);
      auto r = refine_against(xi, b);
      CHECK_NOTHROW(r.verify());
      for (auto const& atom : r.atoms()) CHECK((subset(atom, b) || disjoint(atom, b)));
      CHECK(partition_refines(r.atoms(), xi.atoms()));
      CHECK(equals(r.base_set(), xi.base_set()));
    }
    auto p = radius_partition(sys, 3);
    auto r = refine_by_partition(xi, p);
    CHECK(partition_refines(r.atoms(), p));
    CHECK(partition_refines(r.atoms(), xi.atoms()));
  }
}

TEST_CASE("diameter radius") {
  CHECK(diameter_radius(1) == 1);
  CHECK(diameter_radius(2) == 2);
  CHECK(diameter_radius(3) == 3);
  CHECK(diameter_radius(4) == 3);
  CHECK(diameter_radius(5) == 4);
  CHECK(diameter_radius(64) == 7);
}

TEST_CASE("anchored sequences satisfy the nesting conditions") {
  for (auto sys : {odo(), fib()}) {
    auto const& seq = anchored_sequence(sys->base_point(Anchor::primary));
    CHECK(&seq == &anchored_sequence(sys->base_point(Anchor::primary)));
    for (std::int64_t n = 1; n <= 5; ++n) {
      auto rep = check_conditions(seq, n);
      CHECK_MESSAGE(rep.all(), sys->name(), " level ", n);
      auto const& lv = seq.level(n);
      CHECK(lv.partition.min_height() >= 2 * seq.m(n) + 2);
      CHECK(contains_point(lv.partition.base_set(), seq.anchor()));
    }
  }
}

TEST_CASE("odometer levels are single towers") {
  auto const& seq = anchored_sequence(odo()->base_point(Anchor::primary));
  std::int64_t previous = 1;
  for (std::int64_t n = 1; n <= 6; ++n) {
    auto const& xi = seq.level(n).partition;
    REQUIRE(xi.size() == 1);
    auto h = xi.towers()[0].height;
    CHECK((h & (h - 1)) == 0);
    CHECK(h % previous == 0);
    previous = h;
  }
}
