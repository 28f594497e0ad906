#ifndef TFG_TESTS_ORACLE_HPP
#define TFG_TESTS_ORACLE_HPP

// Brute-force reference models. Subshift points are positions in a long
// word produced by iterating the substitution directly; odometer points
// are integers modulo 2^K, least significant digit first.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tfg/clopen.hpp"
#include "tfg/group.hpp"

namespace oracle {

inline std::string iterate(std::map<char, std::string> const& rule, char seed, std::size_t length) {
  std::string w(1, seed);
  while (w.size() < length) {
    std::string next;
    for (char c : w) next += rule.at(c);
    w = std::move(next);
  }
  return w;
}

inline std::string fibonacci_word(std::size_t length) {
  return iterate({{'a', "ab"}, {'b', "a"}}, 'a', length);
}

inline std::string thue_morse_word(std::size_t length) {
  return iterate({{'a', "ab"}, {'b', "ba"}}, 'a', length);
}

/// Distinct factors of length n.
inline std::set<std::string> factors(std::string const& w, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

/// Membership of the point sitting at position p of `w` in a clopen set.
inline bool member(std::string const& w, std::int64_t p, tfg::ClopenSet const& a) {
  if (a.is_empty()) return false;
  if (a.window().empty()) return true;
  auto lo = p + a.window().lo;
  auto u = w.substr(static_cast<std::size_t>(lo), static_cast<std::size_t>(a.window().width()));
  for (auto const& x : a.words())
    if (x == u) return true;
  return false;
}

/// Digits of n (mod 2^k), least significant first.
inline std::string digits(std::uint64_t n, int k) {
  std::string out;
  for (int i = 0; i < k; ++i) out += static_cast<char>('0' + ((n >> i) & 1u));
  return out;
}

inline bool member_dyadic(std::uint64_t n, int k, tfg::ClopenSet const& a) {
  if (a.is_empty()) return false;
  if (a.window().empty()) return true;
  auto d = digits(n, k).substr(0, static_cast<std::size_t>(a.window().width()));
  for (auto const& x : a.words())
    if (x == d) return true;
  return false;
}

/// Cocycle of s at position p of `w`.
inline tfg::Power cocycle_at(std::string const& w, std::int64_t p, tfg::GroupElement const& s) {
  auto win = s.window();
  if (win.empty()) return s.powers().front();
  auto u = w.substr(static_cast<std::size_t>(p + win.lo), static_cast<std::size_t>(win.width()));
  return s.power_at(u, win);
}

inline tfg::Power cocycle_dyadic(std::uint64_t n, int k, tfg::GroupElement const& s) {
  auto win = s.window();
  if (win.empty()) return s.powers().front();
  return s.power_at(digits(n, k).substr(0, static_cast<std::size_t>(win.width())), win);
}

}  // namespace oracle

#endif  // TFG_TESTS_ORACLE_HPP
