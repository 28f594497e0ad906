#include "tfg/clopen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "tfg/errors.hpp"

namespace tfg {

namespace {

bool has(std::vector<Word> const& sorted, Word const& w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

// Words of language(to) whose restriction to `from` lies in `words`.
std::vector<Word> extend(System const& sys, std::vector<Word> const& words, Window from,
                         Window to) {
  if (from == to) return words;
  if (words.empty()) return {};
  if (from.empty()) return sys.words(to);
  std::vector<Word> out;
  for (auto const& u : sys.words(to))
    if (has(words, System::restrict(u, to, from))) out.push_back(u);
  return out;
}

std::vector<Word> project(std::vector<Word> const& words, Window from, Window to) {
  std::vector<Word> out;
  out.reserve(words.size());
  for (auto const& u : words) out.push_back(System::restrict(u, from, to));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ClopenSet::ClopenSet(SystemRef system, Window window, std::vector<Word> words)
    : system_(std::move(system)), window_(window) {
  system_->check_window(window);
  for (auto const& w : words)
    if (static_cast<std::int64_t>(w.size()) != window.width())
      throw PreconditionError("word '" + w + "' does not fit its window");
  auto const& lang = system_->words(window);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (auto& w : words)
    if (has(lang, w)) words_.push_back(std::move(w));
  canonicalize();
}

ClopenSet::ClopenSet(SystemRef system, Window window, std::vector<Word> words, bool)
    : system_(std::move(system)), window_(window), words_(std::move(words)) {
  canonicalize();
}

ClopenSet ClopenSet::empty(SystemRef system) {
  return ClopenSet(std::move(system), Window{}, {}, true);
}

ClopenSet ClopenSet::full(SystemRef system) {
  return ClopenSet(std::move(system), Window{}, {Word{}}, true);
}

void ClopenSet::canonicalize() {
  if (words_.empty()) {
    window_ = Window{};
    return;
  }
  auto const& sys = *system_;
  auto droppable = [&](Window smaller) {
    auto proj = project(words_, window_, smaller);
    auto back = extend(sys, proj, smaller, window_);
    if (back.size() != words_.size()) return false;
    words_ = std::move(proj);
    window_ = smaller;
    return true;
  };
  bool two_sided = sys.kind() == SystemKind::substitution;
  for (bool changed = true; changed && !window_.empty();) {
    changed = false;
    while (!window_.empty() && droppable(Window{window_.lo, window_.hi - 1})) changed = true;
    while (two_sided && !window_.empty() && droppable(Window{window_.lo + 1, window_.hi}))
      changed = true;
  }
  if (window_.empty()) window_ = Window{};
}

std::vector<Word> ClopenSet::words_on(Window w) const {
  if (!w.contains(window_)) throw InternalError("words_on: window too small");
  return extend(*system_, words_, window_, w);
}

bool ClopenSet::contains_word(Word const& u, Window uw) const {
  if (words_.empty()) return false;
  return has(words_, System::restrict(u, uw, window_));
}

std::string ClopenSet::to_string() const {
  if (words_.empty()) return "EMPTY";
  if (window_.empty()) return "FULL";
  std::string out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i) out += '+';
    out += words_[i] + "@" + std::to_string(window_.lo);
  }
  return out;
}

bool operator==(ClopenSet const& a, ClopenSet const& b) { return equals(a, b); }

void check_same_system(ClopenSet const& a, ClopenSet const& b) {
  if (a.system() != b.system()) throw PreconditionError("clopen sets from different systems");
}

ClopenSet cylinder(SystemRef const& system, Word const& word, std::int64_t offset) {
  if (system->kind() == SystemKind::odometer && offset != 0)
    throw PreconditionError("odometer cylinders use offset 0");
  if (word.empty()) return ClopenSet::full(system);
  Window w{offset, offset + static_cast<std::int64_t>(word.size()) - 1};
  return ClopenSet(system, w, {word});
}

ClopenSet point_cylinder(PointRep const& p, std::int64_t radius) {
  auto w = p.system->central(radius);
  if (w.empty()) return ClopenSet::full(p.system);
  return ClopenSet(p.system, w, {p.system->point_window(p, w.lo, w.hi)});
}

Partition radius_partition(SystemRef const& system, std::int64_t radius) {
  auto w = system->central(radius);
  Partition out;
  for (auto const& u : system->words(w)) out.push_back(ClopenSet(system, w, {u}));
  return out;
}

ClopenSet boolean(BoolOp op, ClopenSet const& a, ClopenSet const* b) {
  auto const& sys = a.system();
  if (op == BoolOp::complement) {
    auto const& lang = sys->words(a.window());
    std::vector<Word> out;
    std::set_difference(lang.begin(), lang.end(), a.words().begin(), a.words().end(),
                        std::back_inserter(out));
    return ClopenSet(sys, a.window(), std::move(out));
  }
  if (!b) throw PreconditionError("binary boolean operation needs two sets");
  check_same_system(a, *b);
  auto w = sys->hull(a.window(), b->window());
  auto wa = a.words_on(w);
  auto wb = b->words_on(w);
  std::vector<Word> out;
  switch (op) {
    case BoolOp::unite:
      std::set_union(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(out));
      break;
    case BoolOp::intersect:
      std::set_intersection(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(out));
      break;
    case BoolOp::difference:
      std::set_difference(wa.begin(), wa.end(), wb.begin(), wb.end(), std::back_inserter(out));
      break;
    case BoolOp::complement:
      break;
  }
  return ClopenSet(sys, w, std::move(out));
}

ClopenSet unite(ClopenSet const& a, ClopenSet const& b) { return boolean(BoolOp::unite, a, &b); }
ClopenSet intersect(ClopenSet const& a, ClopenSet const& b) {
  return boolean(BoolOp::intersect, a, &b);
}
ClopenSet difference(ClopenSet const& a, ClopenSet const& b) {
  return boolean(BoolOp::difference, a, &b);
}
ClopenSet complement(ClopenSet const& a) { return boolean(BoolOp::complement, a); }

ClopenSet translate(ClopenSet const& a, Power n) {
  if (n == 0 || a.window().empty()) return a;
  auto const& sys = a.system();
  if (sys->kind() == SystemKind::substitution) {
    Window w{a.window().lo - n, a.window().hi - n};
    return ClopenSet(sys, w, a.words());
  }
  std::vector<Word> out;
  out.reserve(a.words().size());
  for (auto const& u : a.words()) out.push_back(sys->push(u, a.window(), n, a.window()));
  return ClopenSet(sys, a.window(), std::move(out));
}

bool is_empty(ClopenSet const& a) { return a.is_empty(); }

bool equals(ClopenSet const& a, ClopenSet const& b) {
  check_same_system(a, b);
  if (a.window() == b.window()) return a.words() == b.words();
  auto w = a.system()->hull(a.window(), b.window());
  return a.words_on(w) == b.words_on(w);
}

bool subset(ClopenSet const& a, ClopenSet const& b) {
  check_same_system(a, b);
  auto w = a.system()->hull(a.window(), b.window());
  auto wa = a.words_on(w);
  auto wb = b.words_on(w);
  return std::includes(wb.begin(), wb.end(), wa.begin(), wa.end());
}

bool disjoint(ClopenSet const& a, ClopenSet const& b) { return intersect(a, b).is_empty(); }

bool contains_point(ClopenSet const& a, PointRep const& p) {
  if (a.system() != p.system) throw PreconditionError("point from a different system");
  if (a.is_empty()) return false;
  if (a.window().empty()) return true;
  return a.contains_word(p.system->point_window(p, a.window().lo, a.window().hi), a.window());
}

std::optional<std::int64_t> agreement_radius(ClopenSet const& a) {
  if (a.is_empty()) return std::nullopt;
  auto const& sys = *a.system();
  for (std::int64_t r = 1;; ++r) {
    auto c = sys.central(r);
    auto w = sys.hull(a.window(), c);
    auto words = project(a.words_on(w), w, c);
    if (words.size() > 1) return r - 1;
  }
}

double diameter(ClopenSet const& a) {
  auto r = agreement_radius(a);
  if (!r) return 0.0;
  return std::ldexp(1.0, static_cast<int>(-*r));
}

void check_partition(Partition const& p) {
  if (p.empty()) throw PreconditionError("empty partition");
  auto const& sys = p.front().system();
  Window w{};
  for (auto const& c : p) {
    if (c.system() != sys) throw PreconditionError("partition mixes systems");
    w = sys->hull(w, c.window());
  }
  std::map<Word, std::size_t> owner;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (auto const& u : p[i].words_on(w)) {
      auto [it, inserted] = owner.emplace(u, i);
      if (!inserted)
        throw PreconditionError("cells " + p[it->second].to_string() + " and " +
                                p[i].to_string() + " overlap");
    }
  }
  for (auto const& u : sys->words(w))
    if (!owner.count(u))
      throw PreconditionError("partition misses " + u + "@" + std::to_string(w.lo));
}

bool is_partition(Partition const& p) {
  try {
    check_partition(p);
    return true;
  } catch (PreconditionError const&) {
    return false;
  }
}

Partition refine_common(std::vector<Partition> const& partitions) {
  if (partitions.empty()) throw PreconditionError("nothing to refine");
  for (auto const& p : partitions) check_partition(p);
  auto const& sys = partitions.front().front().system();
  Window w{};
  for (auto const& p : partitions)
    for (auto const& c : p) {
      if (c.system() != sys) throw PreconditionError("partitions from different systems");
      w = sys->hull(w, c.window());
    }
  std::map<std::vector<std::size_t>, std::vector<Word>> cells;
  for (auto const& u : sys->words(w)) {
    std::vector<std::size_t> label;
    for (auto const& p : partitions) {
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].contains_word(u, w)) {
          label.push_back(i);
          break;
        }
    }
    cells[label].push_back(u);
  }
  Partition out;
  for (auto& [_, words] : cells) out.push_back(ClopenSet(sys, w, std::move(words)));
  std::sort(out.begin(), out.end(),
            [](auto const& a, auto const& b) { return a.to_string() < b.to_string(); });
  return out;
}

ClopenSet parse_clopen(SystemRef const& system, std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') s += c;
  if (s == "EMPTY") return ClopenSet::empty(system);
  if (s == "FULL") return ClopenSet::full(system);
  if (s.empty()) throw ParseError("empty clopen expression");
  auto out = ClopenSet::empty(system);
  std::stringstream ss(s);
  std::string token;
  while (std::getline(ss, token, '+')) {
    auto at = token.find('@');
    if (at == std::string::npos || at == 0)
      throw ParseError("expected word@offset, got '" + token + "'");
    auto word = token.substr(0, at);
    std::int64_t offset = 0;
    try {
      std::size_t used = 0;
      offset = std::stoll(token.substr(at + 1), &used);
      if (used != token.size() - at - 1) throw ParseError("bad offset in '" + token + "'");
    } catch (std::logic_error const&) {
      throw ParseError("bad offset in '" + token + "'");
    }
    if (system->kind() == SystemKind::odometer) {
      if (offset != 0) throw ParseError("odometer cylinders use offset 0: '" + token + "'");
      for (std::size_t i = 0; i < word.size(); ++i)
        if (!std::isalnum(static_cast<unsigned char>(word[i])))
          throw ParseError("bad digit in '" + token + "'");
    }
    out = unite(out, cylinder(system, word, offset));
  }
  return out;
}

}  // namespace tfg
