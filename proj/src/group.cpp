#include "tfg/group.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tfg/errors.hpp"

namespace tfg {

namespace {

std::size_t index_of(std::vector<Word> const& sorted, Word const& w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
  if (it == sorted.end() || *it != w) throw InternalError("word not admissible: " + w);
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

GroupElement from_pieces(SystemRef const& sys, std::vector<Piece> const& pieces) {
  if (pieces.empty()) throw PreconditionError("element needs at least one piece");
  Window w{};
  for (auto const& [c, _] : pieces) {
    if (c.system() != sys) throw PreconditionError("piece from a different system");
    w = sys->hull(w, c.window());
  }
  auto const& lang = sys->words(w);
  std::vector<Power> powers(lang.size());
  std::vector<bool> set(lang.size(), false);
  for (auto const& [c, n] : pieces) {
    for (auto const& u : c.words_on(w)) {
      auto i = index_of(lang, u);
      if (set[i])
        throw PreconditionError("domain pieces overlap at " + u + "@" + std::to_string(w.lo));
      set[i] = true;
      powers[i] = n;
    }
  }
  for (std::size_t i = 0; i < lang.size(); ++i)
    if (!set[i])
      throw PreconditionError("domain pieces miss " + lang[i] + "@" + std::to_string(w.lo));
  return GroupElement(sys, w, std::move(powers));
}

namespace {

void check_same(GroupElement const& a, GroupElement const& b) {
  if (a.system() != b.system()) throw PreconditionError("elements from different systems");
}

}  // namespace

GroupElement::GroupElement(SystemRef system, Window window, std::vector<Power> powers)
    : system_(std::move(system)), window_(window), powers_(std::move(powers)) {
  if (powers_.size() != system_->words(window_).size())
    throw InternalError("cocycle size does not match window");
  canonicalize();
}

void GroupElement::canonicalize() {
  auto const& sys = *system_;
  auto try_drop = [&](Window smaller) {
    auto const& lang = sys.words(window_);
    auto const& small = sys.words(smaller);
    std::vector<Power> reduced(small.size());
    std::vector<bool> seen(small.size(), false);
    for (std::size_t i = 0; i < lang.size(); ++i) {
      auto j = index_of(small, System::restrict(lang[i], window_, smaller));
      if (seen[j] && reduced[j] != powers_[i]) return false;
      seen[j] = true;
      reduced[j] = powers_[i];
    }
    powers_ = std::move(reduced);
    window_ = smaller;
    return true;
  };
  bool two_sided = sys.kind() == SystemKind::substitution;
  for (bool changed = true; changed && !window_.empty();) {
    changed = false;
    while (!window_.empty() && try_drop(Window{window_.lo, window_.hi - 1})) changed = true;
    while (two_sided && !window_.empty() && try_drop(Window{window_.lo + 1, window_.hi}))
      changed = true;
  }
  if (window_.empty()) window_ = Window{};
}

Power GroupElement::power_at(Word const& u, Window uw) const {
  return powers_[index_of(words(), System::restrict(u, uw, window_))];
}

std::vector<Piece> GroupElement::pieces() const {
  std::map<Power, std::vector<Word>> by_power;
  auto const& lang = words();
  for (std::size_t i = 0; i < lang.size(); ++i) by_power[powers_[i]].push_back(lang[i]);
  std::vector<Piece> out;
  for (auto& [n, ws] : by_power) out.emplace_back(ClopenSet(system_, window_, std::move(ws)), n);
  return out;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << "system " << system_->name() << '\n';
  for (auto const& [c, n] : pieces()) os << c.to_string() << " -> " << n << '\n';
  return os.str();
}

GroupElement make_element(SystemRef const& system, std::vector<Piece> const& pieces) {
  auto s = from_pieces(system, pieces);
  std::vector<Piece> images;
  for (auto const& [c, n] : pieces) images.emplace_back(translate(c, n), 0);
  try {
    check_partition([&] {
      Partition p;
      for (auto const& [c, _] : images)
        if (!c.is_empty()) p.push_back(c);
      return p;
    }());
  } catch (PreconditionError const& e) {
    throw PreconditionError(std::string("not a homeomorphism: image ") + e.what());
  }
  return s;
}

GroupElement identity(SystemRef const& system) { return GroupElement(system, Window{}, {0}); }

GroupElement t_power(SystemRef const& system, Power n) {
  return GroupElement(system, Window{}, {n});
}

GroupElement compose(GroupElement const& a, GroupElement const& b) {
  check_same(a, b);
  auto const& sys = *a.system();
  Window w = b.window();
  std::set<Power> shifts(b.powers().begin(), b.powers().end());
  for (Power n : shifts) w = sys.hull(w, sys.pullback(a.window(), n));
  auto const& lang = sys.words(w);
  std::vector<Power> powers;
  powers.reserve(lang.size());
  for (auto const& u : lang) {
    Power n = b.power_at(u, w);
    Power m = a.power_at(sys.push(u, w, n, a.window()), a.window());
    powers.push_back(n + m);
  }
  return GroupElement(a.system(), w, std::move(powers));
}

GroupElement invert(GroupElement const& s) {
  std::vector<Piece> images;
  for (auto const& [c, n] : s.pieces()) images.emplace_back(translate(c, n), -n);
  return from_pieces(s.system(), images);
}

GroupElement power(GroupElement const& s, std::int64_t k) {
  auto base = k < 0 ? invert(s) : s;
  auto result = identity(s.system());
  for (std::int64_t e = k < 0 ? -k : k; e > 0; e >>= 1) {
    if (e & 1) result = compose(result, base);
    if (e > 1) base = compose(base, base);
  }
  return result;
}

bool equals(GroupElement const& a, GroupElement const& b) {
  check_same(a, b);
  if (a.window() == b.window()) return a.powers() == b.powers();
  auto const& sys = *a.system();
  auto w = sys.hull(a.window(), b.window());
  for (auto const& u : sys.words(w))
    if (a.power_at(u, w) != b.power_at(u, w)) return false;
  return true;
}

bool is_identity(GroupElement const& s) {
  return std::all_of(s.powers().begin(), s.powers().end(), [](Power n) { return n == 0; });
}

Power value_at(GroupElement const& s, PointRep const& p) {
  if (p.system != s.system()) throw PreconditionError("point from a different system");
  auto w = s.window();
  if (w.empty()) return s.powers().front();
  return s.power_at(p.system->point_window(p, w.lo, w.hi), w);
}

PointRep apply(GroupElement const& s, PointRep const& p) {
  return p.system->shift(p, value_at(s, p));
}

ClopenSet image(GroupElement const& s, ClopenSet const& a) {
  if (a.system() != s.system()) throw PreconditionError("set from a different system");
  auto out = ClopenSet::empty(s.system());
  for (auto const& [c, n] : s.pieces()) out = unite(out, translate(intersect(a, c), n));
  return out;
}

ClopenSet support(GroupElement const& s) {
  std::vector<Word> moved;
  auto const& lang = s.words();
  for (std::size_t i = 0; i < lang.size(); ++i)
    if (s.powers()[i] != 0) moved.push_back(lang[i]);
  return ClopenSet(s.system(), s.window(), std::move(moved));
}

std::vector<Power> cocycle_values(GroupElement const& s, ClopenSet const& a) {
  auto const& sys = *s.system();
  auto w = sys.hull(s.window(), a.window());
  std::set<Power> values;
  for (auto const& u : a.words_on(w)) values.insert(s.power_at(u, w));
  return {values.begin(), values.end()};
}

Power cocycle_bound(GroupElement const& s) {
  Power q = 0;
  for (Power n : s.powers()) q = std::max(q, n < 0 ? -n : n);
  return q;
}

OrderResult order(GroupElement const& s, std::int64_t bound) {
  if (bound < 1) throw PreconditionError("order bound must be positive");
  auto const& p = s.powers();
  if (p.front() != 0 && std::all_of(p.begin(), p.end(), [&](Power n) { return n == p.front(); }))
    return OrderResult{std::nullopt, true};
  auto current = s;
  for (std::int64_t k = 1; k <= bound; ++k) {
    if (is_identity(current)) return OrderResult{k, false};
    current = compose(s, current);
  }
  return OrderResult{std::nullopt, false};
}

GroupElement commutator(GroupElement const& s1, GroupElement const& s2) {
  return compose(compose(s1, s2), compose(invert(s1), invert(s2)));
}

GroupElement conjugate(GroupElement const& s1, GroupElement const& s2) {
  return compose(compose(s2, s1), invert(s2));
}

GroupElement embed_symmetric(SystemRef const& system, std::int64_t m,
                             std::vector<std::int64_t> const& perm, ClopenSet const& u) {
  if (m < 1 || static_cast<std::int64_t>(perm.size()) != m)
    throw PreconditionError("permutation size does not match m");
  std::vector<bool> hit(static_cast<std::size_t>(m), false);
  for (auto v : perm) {
    if (v < 0 || v >= m || hit[static_cast<std::size_t>(v)])
      throw PreconditionError("not a permutation of 0..m-1");
    hit[static_cast<std::size_t>(v)] = true;
  }
  if (u.is_empty()) throw PreconditionError("block set is empty");
  std::vector<ClopenSet> blocks;
  for (std::int64_t i = 0; i < m; ++i) blocks.push_back(translate(u, i));
  auto rest = ClopenSet::full(system);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (!disjoint(blocks[i], blocks[j]))
        throw PreconditionError("blocks T^" + std::to_string(i) + "U and T^" +
                                std::to_string(j) + "U are not disjoint");
    rest = difference(rest, blocks[i]);
  }
  std::vector<Piece> pieces;
  for (std::int64_t i = 0; i < m; ++i)
    pieces.emplace_back(blocks[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i)] - i);
  if (!rest.is_empty()) pieces.emplace_back(rest, 0);
  return from_pieces(system, pieces);
}

GroupElement parse_element(std::string_view text, SystemResolver const& resolve) {
  std::stringstream ss{std::string(text)};
  std::string line;
  SystemRef sys;
  std::vector<Piece> pieces;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
    if (!sys) {
      if (line.rfind("system ", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected 'system <name>'");
      sys = resolve(line.substr(7));
      if (!sys) throw ParseError("unknown system '" + line.substr(7) + "'");
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected '<clopen> -> <power>'");
    auto lhs = line.substr(0, arrow);
    auto rhs = line.substr(arrow + 2);
    Power n = 0;
    try {
      std::size_t used = 0;
      auto b = rhs.find_first_not_of(' ');
      if (b == std::string::npos) throw ParseError("missing power");
      n = std::stoll(rhs.substr(b), &used);
      if (b + used != rhs.size()) throw ParseError("trailing text after power");
    } catch (std::logic_error const&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad power");
    }
    pieces.emplace_back(parse_clopen(sys, lhs), n);
  }
  if (!sys) throw ParseError("missing 'system' header");
  return make_element(sys, pieces);
}

GroupElement parse_element(std::string_view text, SystemRef const& system) {
  return parse_element(text, [&](std::string const& name) -> SystemRef {
    if (name != system->name())
      throw ParseError("element belongs to system '" + name + "', expected '" + system->name() + "'");
    return system;
  });
}

std::string element_hash(GroupElement const& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s.to_string()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tfg
