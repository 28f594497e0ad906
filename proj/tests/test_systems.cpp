#include "tfg/errors.hpp"
#include "tfg/systems.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace tfg;

TEST_CASE("config text round trip") {
  auto text =
      "# golden mean\n"
      "name = fib2\n"
      "kind = substitution\n"
      "alphabet = ab\n"
      "rule.a = ab\n"
      "rule.b = a\n";
  auto c = parse_system_config(text);
  CHECK(c.name == "fib2");
  CHECK(c.kind == SystemKind::substitution);
  CHECK(c.rule.at('a') == "ab");
  auto again = parse_system_config(emit_system_config(c));
  CHECK(emit_system_config(again) == emit_system_config(c));

  auto o = parse_system_config("kind = odometer\nbases = 2, 3\nrepeat = 5\n");
  CHECK(o.bases == std::vector<int>{2, 3});
  CHECK(o.repeat == std::vector<int>{5});
}

TEST_CASE("malformed configs are parse errors") {
  CHECK_THROWS_AS(parse_system_config("kind odometer"), ParseError);
  CHECK_THROWS_AS(parse_system_config("kind = circle"), ParseError);
  CHECK_THROWS_AS(parse_system_config("bases = 2"), ParseError);
  CHECK_THROWS_AS(parse_system_config("kind = odometer\nbases = 2,x"), ParseError);
  CHECK_THROWS_AS(parse_system_config("kind = odometer\ncolour = red"), ParseError);
}

TEST_CASE("invalid systems are rejected") {
  auto sub = [](std::string rule_a, std::string rule_b) {
    SystemConfig c;
    c.kind = SystemKind::substitution;
    c.alphabet = "ab";
    c.rule = {{'a', rule_a}, {'b', rule_b}};
    return make_system(c);
  };
  CHECK_THROWS_AS(sub("ab", "b"), PreconditionError);    // not primitive
  CHECK_THROWS_AS(sub("ab", "ab"), PreconditionError);   // periodic
  CHECK_THROWS_AS(sub("b", "a"), PreconditionError);     // no growth
  CHECK_NOTHROW(sub("ab", "a"));
  SystemConfig o;
  o.kind = SystemKind::odometer;
  o.bases = {1};
  CHECK_THROWS_AS(make_system(o), PreconditionError);
}

TEST_CASE("fibonacci language matches factors of the fixed point") {
  auto sys = builtin_system("fibonacci");
  auto w = oracle::fibonacci_word(5000);
  for (std::size_t n = 1; n <= 24; ++n) {
    auto lang = language(*sys, static_cast<std::int64_t>(n));
    auto f = oracle::factors(w, n);
    CHECK(std::set<Word>(lang.begin(), lang.end()) == f);
    CHECK(lang.size() == n + 1);
  }
}

TEST_CASE("thue-morse language matches factors of the fixed point") {
  auto sys = builtin_system("thue-morse");
  auto w = oracle::thue_morse_word(1 << 14);
  for (std::size_t n = 1; n <= 16; ++n) {
    auto lang = language(*sys, static_cast<std::int64_t>(n));
    CHECK(std::set<Word>(lang.begin(), lang.end()) == oracle::factors(w, n));
  }
}

TEST_CASE("built-in systems are shared instances") {
  CHECK(builtin_system("fibonacci") == builtin_system("fibonacci"));
  CHECK_THROWS_AS(builtin_system("circle"), PreconditionError);
}

TEST_CASE("odometer points and the carry") {
  auto sys = builtin_system("odometer2");
  auto x = sys->base_point(Anchor::primary);
  CHECK(x.to_string() == "(0)");
  CHECK(point_window(x, 0, 5) == "000000");
  auto one = sys->shift(x, 1);
  CHECK(point_window(one, 0, 5) == "100000");
  auto back = sys->shift(x, -1);
  CHECK(point_window(back, 0, 5) == "111111");
  CHECK(point_window(sys->shift(back, 1), 0, 9) == "0000000000");
  // 1^n 0 w -> 0^n 1 w
  auto y = sys->base_point(Anchor::alternate);
  CHECK(y.certified);
  CHECK(point_window(y, 0, 5) == "101010");
  CHECK(point_window(sys->shift(y, 1), 0, 5) == "011010");
  for (std::int64_t a = -9; a <= 9; ++a)
    for (std::int64_t b = -9; b <= 9; ++b)
      CHECK(point_window(sys->shift(sys->shift(y, a), b), 0, 11) ==
            point_window(sys->shift(y, a + b), 0, 11));
}

TEST_CASE("odometer shift agrees with integer addition") {
  auto sys = builtin_system("odometer2");
  auto x = sys->base_point(Anchor::primary);
  for (std::int64_t n = 0; n < 300; ++n)
    CHECK(point_window(sys->shift(x, n), 0, 11) == oracle::digits(static_cast<std::uint64_t>(n), 12));
  for (std::int64_t n = 1; n < 100; ++n)
    CHECK(point_window(sys->shift(x, -n), 0, 11) ==
          oracle::digits(4096 - static_cast<std::uint64_t>(n), 12));
}

TEST_CASE("fibonacci points") {
  auto sys = builtin_system("fibonacci");
  auto x = sys->base_point(Anchor::primary);
  CHECK(point_window(x, 0, 4) == "abaab");
  CHECK(point_window(x, -1, 0) == "aa");
  auto w = oracle::fibonacci_word(400);
  CHECK(point_window(x, 0, 199) == w.substr(0, 200));
  auto y = sys->base_point(Anchor::alternate);
  CHECK_FALSE(y.certified);
  CHECK(point_window(y, -1, 0) == "ba");
  for (std::int64_t a = -20; a <= 20; ++a) {
    auto s = sys->shift(x, a);
    CHECK(point_window(s, -5, 5) == point_window(x, a - 5, a + 5));
  }
}

TEST_CASE("recurrence bounds hold on long samples") {
  auto sys = builtin_system("fibonacci");
  auto w = oracle::fibonacci_word(20000);
  for (std::int64_t n = 1; n <= 6; ++n) {
    for (auto const& u : language(*sys, n)) {
      auto r = sys->recurrence_bound(u);
      for (std::size_t i = 0; i + static_cast<std::size_t>(r) <= w.size(); i += 97)
        CHECK(w.substr(i, static_cast<std::size_t>(r)).find(u) != std::string::npos);
    }
  }
}
