#include "tfg/canon.hpp"
#include "tfg/errors.hpp"
#include "tfg/sampling.hpp"

#include "doctest.h"

using namespace tfg;

namespace {

SystemRef odo() { return builtin_system("odometer2"); }
SystemRef fib() { return builtin_system("fibonacci"); }

TowerSequence const& primary(SystemRef const& s) {
  return anchored_sequence(s->base_point(Anchor::primary));
}

}  // namespace

TEST_CASE("level rotations are induced maps") {
  for (auto s : {odo(), fib()}) {
    for (std::int64_t n = 1; n <= 3; ++n) {
      auto const& xi = primary(s).level(n).partition;
      for (std::int64_t i = 0; 2 * i < xi.min_height(); ++i) {
        CHECK(equals(t_u(xi, i), induced(u_set(xi, i))));
        CHECK(equals(t_d(xi, i), induced(d_set(xi, i))));
        CHECK(index(t_u(xi, i)) == 1);
      }
    }
  }
  auto xi = kr_from_set(cylinder(odo(), "00", 0));
  CHECK(equals(t_u(xi, 0), induced(cylinder(odo(), "11", 0))));
  CHECK(cocycle_values(t_u(xi, 0), cylinder(odo(), "11", 0)) == std::vector<Power>{4});
  CHECK_THROWS_AS(t_u(xi, 2), PreconditionError);
}

TEST_CASE("T factors as a cycle of levels times one rotation") {
  auto s = odo();
  auto const& seq = primary(s);
  REQUIRE(seq.level(2).partition.towers()[0].height == 8);
  auto f = factorize(t_power(s, 1), seq, 2);
  CHECK(f.p.perms[0] == LevelPermutation{1, 2, 3, 4, 5, 6, 7, 0});
  CHECK(f.r.up == std::map<std::int64_t, Power>{{0, 1}});
  CHECK(f.r.down.empty());
  CHECK(equals(f.r_element, t_u(seq.level(2).partition, 0)));
  CHECK(equals(compose(f.p_element, f.r_element), t_power(s, 1)));
  CHECK(f.report().find("U(0)^1") != std::string::npos);
  CHECK(f.report().find("tower 0: [1 2 3 4 5 6 7 0]") != std::string::npos);
}

TEST_CASE("level permutations") {
  auto s = odo();
  auto const& xi = primary(s).level(1).partition;
  auto sw = level_transposition(xi, 0, 1, 2);
  auto c = is_n_permutation(sw, xi);
  REQUIRE(c);
  CHECK(c.form->perms[0] == LevelPermutation{0, 2, 1, 3});
  CHECK(equals(c.form->element(), sw));
  CHECK(order(sw, 4).order == 2);
  CHECK(index(sw) == 0);
  CHECK_FALSE(is_n_permutation(t_power(s, 1), xi));
  CHECK_FALSE(is_n_permutation(t_power(s, 1), xi).refusal.empty());
  CHECK(is_n_permutation(identity(s), xi));
}

TEST_CASE("factorizations recompose with permutation and rotation parts") {
  for (auto s : {odo(), fib()}) {
    auto const& seq = primary(s);
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
      auto q = random_element(s, rng);
      auto f = factorize(q, seq);
      CHECK(equals(compose(f.p_element, f.r_element), q));
      CHECK(level_defect(q, seq, f.level).empty());
      auto const& xi = seq.level(f.level).partition;
      CHECK(is_n_permutation(f.p_element, xi));
      auto rot = is_n_rotation(f.r_element, seq, f.level);
      REQUIRE(rot);
      CHECK(rot.form->up == f.r.up);
      CHECK(rot.form->down == f.r.down);
      CHECK(f.r.rotation_number() <= 1);
      CHECK(static_cast<std::int64_t>(f.r.up.size()) - static_cast<std::int64_t>(f.r.down.size()) ==
            index(q));
      for (auto const* side : {&f.r.up, &f.r.down})
        for (auto const& [i, e] : *side) {
          CHECK(i >= 0);
          CHECK(i < f.n0);
        }
      // every later level works too
      auto g = factorize(q, seq, f.level + 1);
      CHECK(equals(compose(g.p_element, g.r_element), q));
    }
  }
}

TEST_CASE("levels below the threshold are refused") {
  auto s = odo();
  auto q = t_power(s, 5);
  CHECK_FALSE(level_defect(q, primary(s), 1).empty());
  CHECK_THROWS_AS(factorize(q, primary(s), 1), PreconditionError);
  CHECK(factorize(q).n0 >= 5);
}

TEST_CASE("index of powers and induced maps") {
  for (auto s : {odo(), fib()}) {
    CHECK(index(identity(s)) == 0);
    CHECK(index(t_power(s, 1)) == 1);
    CHECK(index(t_power(s, -1)) == -1);
    CHECK(index(t_power(s, 3)) == 3);
    auto x = s->base_point(Anchor::primary);
    auto oc = orbit_counts(t_power(s, 1), x);
    CHECK(oc.a == 1);
    CHECK(oc.b == 0);
    Rng rng(32);
    for (int k = 0; k < 8; ++k) CHECK(index(induced(random_clopen(s, rng, 2))) == 1);
  }
}

TEST_CASE("index is a homomorphism") {
  for (auto s : {odo(), fib()}) {
    Rng rng(33);
    for (int k = 0; k < 20; ++k) {
      auto a = random_element(s, rng);
      auto b = random_element(s, rng);
      CHECK(index(compose(a, b)) == index(a) + index(b));
      CHECK(index(invert(a)) == -index(a));
      CHECK(index(commutator(a, b)) == 0);
    }
  }
}

TEST_CASE("stabilizer of the forward orbit") {
  for (auto s : {odo(), fib()}) {
    auto x = s->base_point(Anchor::primary);
    auto const& xi = primary(s).level(2).partition;
    CHECK(in_stabilizer(identity(s), x));
    CHECK_FALSE(in_stabilizer(t_power(s, 1), x));
    CHECK_FALSE(in_stabilizer(t_power(s, -1), x));
    CHECK(in_stabilizer(level_transposition(xi, 0, 1, 2), x));
  }
}

TEST_CASE("orbit certificates") {
  auto s = odo();
  auto x = s->base_point(Anchor::primary);
  auto y = s->base_point(Anchor::alternate);
  CHECK(same_orbit(x, y) == false);
  CHECK(same_orbit(x, s->shift(x, 5)) == true);
  CHECK(same_orbit(y, s->shift(y, -3)) == true);
  auto f = fib();
  CHECK_FALSE(same_orbit(f->base_point(Anchor::primary), f->base_point(Anchor::alternate)).has_value());
}

TEST_CASE("kernel elements split between two stabilizers") {
  for (auto s : {odo(), fib()}) {
    auto x = s->base_point(Anchor::primary);
    auto y = s->base_point(Anchor::alternate);
    std::vector<GroupElement> samples{identity(s), directsum_generator(s, 1).element,
                                      commutator(t_power(s, 1), three_cycle(s))};
    Rng rng(34);
    for (int k = 0; k < 4; ++k) {
      auto a = random_element(s, rng);
      auto b = random_element(s, rng);
      samples.push_back(commutator(a, b));
    }
    int crossing = 0;
    for (auto const& q : samples) {
      auto d = kernel_decompose(q, x, y);
      CHECK(d.i_minus.size() == d.i_plus.size());
      CHECK(equals(compose(d.p1, d.p2), q));
      CHECK(in_stabilizer(d.p1, x));
      CHECK(in_stabilizer(d.p2, y));
      CHECK_FALSE(d.log.empty());
      if (d.i_minus.empty()) continue;
      ++crossing;
      CHECK(disjoint(d.c, translate(d.c, d.p)));
      CHECK(is_identity(compose(d.p2, d.p2)));
    }
    CHECK(crossing > 0);
    CHECK_THROWS_AS(kernel_decompose(t_power(s, 1), x, y), PreconditionError);
  }
  auto s = odo();
  auto x = s->base_point(Anchor::primary);
  CHECK_THROWS_AS(kernel_decompose(identity(s), x, s->shift(x, 4)), PreconditionError);
}

TEST_CASE("separation witnesses move the point inside the set") {
  auto s = odo();
  auto x = s->base_point(Anchor::primary);
  auto w = separation_witness(cylinder(s, "0", 0), x);
  CHECK(w.u.to_string() == "000@0");
  CHECK(w.v.to_string() == "010@0");
  CHECK(w.w.to_string() == "001@0");
  CHECK(w.p1 == 2);
  CHECK(w.p2 == 2);
  CHECK(equals(w.g, commutator(w.s, w.t)));
  CHECK(value_at(w.g, x) != 0);
  CHECK(subset(support(w.g), cylinder(s, "0", 0)));
  CHECK(order(w.g, 3).order == 3);

  Rng rng(35);
  for (auto sys : {odo(), fib()}) {
    for (int k = 0; k < 6; ++k) {
      auto p = sys->shift(sys->base_point(Anchor::primary), static_cast<Power>(rng() % 40) - 20);
      auto o = point_cylinder(p, 1 + k % 3);
      auto wit = separation_witness(o, p);
      CHECK(value_at(wit.g, p) != 0);
      CHECK(subset(support(wit.g), o));
      // same input, same witness
      CHECK(equals(separation_witness(o, p).g, wit.g));
    }
  }
  CHECK_THROWS_AS(separation_witness(cylinder(s, "1", 0), x), PreconditionError);
}
