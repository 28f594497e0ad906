#include "tfg/clopen.hpp"
#include "tfg/errors.hpp"
#include "tfg/sampling.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace tfg;

namespace {

SystemRef odo() { return builtin_system("odometer2"); }
SystemRef fib() { return builtin_system("fibonacci"); }

}  // namespace

TEST_CASE("rendering and parsing") {
  auto s = fib();
  CHECK(ClopenSet::empty(s).to_string() == "EMPTY");
  CHECK(ClopenSet::full(s).to_string() == "FULL");
  auto a = parse_clopen(s, "aa@0 + ab@0");
  CHECK(a.to_string() == "a@0");
  CHECK(parse_clopen(s, "b@3").to_string() == "b@3");
  CHECK(equals(parse_clopen(s, "a@0+b@0"), ClopenSet::full(s)));
  CHECK(parse_clopen(s, "bb@0").is_empty());
  CHECK_THROWS_AS(parse_clopen(s, "ab"), ParseError);
  CHECK_THROWS_AS(parse_clopen(s, "ab@x"), ParseError);
  CHECK_THROWS_AS(parse_clopen(odo(), "01@1"), ParseError);
}

TEST_CASE("odometer translation is digit addition") {
  auto s = odo();
  CHECK(equals(translate(cylinder(s, "0", 0), 1), cylinder(s, "1", 0)));
  CHECK(equals(translate(cylinder(s, "00", 0), 1), cylinder(s, "10", 0)));
  CHECK(equals(translate(cylinder(s, "11", 0), 1), cylinder(s, "00", 0)));
  CHECK(equals(translate(cylinder(s, "000", 0), 2), cylinder(s, "010", 0)));
  CHECK(equals(translate(cylinder(s, "010", 0), 2), cylinder(s, "001", 0)));
}

TEST_CASE("subshift translation moves offsets") {
  auto s = fib();
  CHECK(translate(cylinder(s, "b", 0), 3).to_string() == "b@-3");
  CHECK(translate(cylinder(s, "b", 0), -2).to_string() == "b@2");
}

TEST_CASE("boolean laws on random sets") {
  for (auto s : {odo(), fib()}) {
    Rng rng(11);
    for (int k = 0; k < 40; ++k) {
      auto a = random_clopen(s, rng, 1 + k % 4);
      auto b = random_clopen(s, rng, 1 + (k * 7) % 5);
      auto c = random_clopen(s, rng, 2);
      CHECK(equals(complement(complement(a)), a));
      CHECK(equals(complement(unite(a, b)), intersect(complement(a), complement(b))));
      CHECK(equals(intersect(a, unite(b, c)), unite(intersect(a, b), intersect(a, c))));
      CHECK(equals(difference(a, b), intersect(a, complement(b))));
      CHECK(subset(intersect(a, b), a));
      CHECK(subset(a, unite(a, b)));
      CHECK(disjoint(difference(a, b), b));
      CHECK(is_partition({a, complement(a)}));
      if (!a.is_empty()) CHECK_FALSE(is_partition({a, a, complement(a)}));
      for (Power n : {-5, -1, 1, 3, 8}) {
        CHECK(equals(translate(translate(a, n), -n), a));
        CHECK(equals(translate(unite(a, b), n), unite(translate(a, n), translate(b, n))));
        CHECK(disjoint(a, b) == disjoint(translate(a, n), translate(b, n)));
        CHECK(equals(translate(translate(a, n), 2), translate(a, n + 2)));
      }
    }
  }
}

TEST_CASE("canonical forms are idempotent and round trip") {
  for (auto s : {odo(), fib()}) {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
      auto a = random_clopen(s, rng, 1 + k % 5);
      auto re = ClopenSet(s, a.window(), a.words());
      CHECK(re.to_string() == a.to_string());
      CHECK(parse_clopen(s, a.to_string()).to_string() == a.to_string());
      CHECK(equals(parse_clopen(s, a.to_string()), a));
    }
  }
}

TEST_CASE("translation agrees with the orbit oracle") {
  auto s = fib();
  auto w = oracle::fibonacci_word(3000);
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    auto a = random_clopen(s, rng, 3);
    for (Power n : {-4, -1, 2, 7}) {
      auto t = translate(a, n);
      // x in T^n A  iff  T^-n x in A
      for (std::int64_t p = 50; p < 2900; p += 13)
        CHECK(oracle::member(w, p, t) == oracle::member(w, p - n, a));
    }
  }
  auto o = odo();
  for (int k = 0; k < 20; ++k) {
    auto a = random_clopen(o, rng, 1 + k % 5);
    for (Power n : {-5, 1, 6}) {
      auto t = translate(a, n);
      for (std::uint64_t x = 0; x < 1024; ++x)
        CHECK(oracle::member_dyadic(x, 10, t) == oracle::member_dyadic((x - static_cast<std::uint64_t>(n)) & 1023u, 10, a));
    }
  }
}

TEST_CASE("points, radii and diameters") {
  auto s = odo();
  auto x = s->base_point(Anchor::primary);
  CHECK(contains_point(cylinder(s, "00", 0), x));
  CHECK_FALSE(contains_point(cylinder(s, "1", 0), x));
  CHECK(agreement_radius(cylinder(s, "010", 0)) == 3);
  CHECK(diameter(cylinder(s, "010", 0)) == doctest::Approx(0.125));
  CHECK(agreement_radius(ClopenSet::full(s)) == 0);
  auto f = fib();
  // b is always flanked by a
  CHECK(agreement_radius(cylinder(f, "b", 0)) == 2);
  CHECK(radius_partition(s, 3).size() == 8);
  CHECK(is_partition(radius_partition(f, 3)));
}

TEST_CASE("common refinement of partitions") {
  auto s = odo();
  auto p = radius_partition(s, 1);
  auto q = Partition{cylinder(s, "00", 0), complement(cylinder(s, "00", 0))};
  auto r = refine_common({p, q});
  CHECK(r.size() == 3);
  CHECK(is_partition(r));
  CHECK_THROWS_AS(check_partition({cylinder(s, "0", 0), cylinder(s, "00", 0)}), PreconditionError);
}
