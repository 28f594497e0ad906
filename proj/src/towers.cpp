#include "tfg/towers.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "tfg/errors.hpp"

namespace tfg {

namespace {

// Upper bound on the return time to A from the recurrence of one of its
// cylinders: a window of length R after any point contains that word.
std::int64_t return_time_cap(ClopenSet const& a) {
  if (a.window().empty()) return 1;
  auto const& sys = *a.system();
  auto const& w = a.words().front();
  auto r = sys.recurrence_bound(w);
  if (sys.kind() == SystemKind::odometer) return r;
  return r - static_cast<std::int64_t>(w.size()) + 1;
}

// word on `w` -> index of the cell of `cells` containing it.
std::unordered_map<Word, std::size_t> label_words(std::vector<ClopenSet> const& cells, Window w) {
  std::unordered_map<Word, std::size_t> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (auto const& u : cells[i].words_on(w)) out.emplace(u, i);
  return out;
}

Window common_window(std::vector<ClopenSet> const& sets) {
  Window w{};
  for (auto const& c : sets) w = c.system()->hull(w, c.window());
  return w;
}

}  // namespace

ReturnFunction first_return(ClopenSet const& a) {
  if (a.is_empty()) throw PreconditionError("first return to the empty set");
  ReturnFunction out{a, {}};
  auto cap = return_time_cap(a);
  auto remaining = a;
  for (Power k = 1; !remaining.is_empty(); ++k) {
    if (k > cap) throw InternalError("first return exceeded its recurrence bound");
    auto cell = intersect(remaining, translate(a, -k));
    if (cell.is_empty()) continue;
    remaining = difference(remaining, cell);
    out.cells.emplace_back(k, std::move(cell));
  }
  return out;
}

GroupElement induced(ClopenSet const& a) {
  auto const& sys = a.system();
  if (a.is_empty()) return identity(sys);
  auto r = first_return(a);
  std::vector<Piece> pieces;
  for (auto const& [k, c] : r.cells) pieces.emplace_back(c, k);
  auto rest = complement(a);
  if (!rest.is_empty()) pieces.emplace_back(rest, 0);
  return make_element(sys, pieces);
}

KRPartition::KRPartition(std::vector<Tower> towers) : towers_(std::move(towers)) {
  if (towers_.empty()) throw PreconditionError("partition without towers");
  system_ = towers_.front().base.system();
  for (auto const& t : towers_) {
    if (t.base.system() != system_) throw PreconditionError("towers from different systems");
    if (t.height < 1) throw PreconditionError("tower height must be positive");
    if (t.base.is_empty()) throw PreconditionError("empty tower base");
  }
  std::vector<std::pair<std::pair<std::int64_t, std::string>, Tower>> keyed;
  for (auto& t : towers_) keyed.push_back({{t.height, t.base.to_string()}, std::move(t)});
  std::sort(keyed.begin(), keyed.end(),
            [](auto const& a, auto const& b) { return a.first < b.first; });
  towers_.clear();
  for (auto& [_, t] : keyed) towers_.push_back(std::move(t));
}

ClopenSet KRPartition::atom(std::size_t v, std::int64_t i) const {
  auto const& t = towers_.at(v);
  if (i < 0 || i >= t.height) throw PreconditionError("atom level out of range");
  return translate(t.base, i);
}

std::vector<ClopenSet> KRPartition::atoms() const {
  std::vector<ClopenSet> out;
  for (auto const& t : towers_)
    for (std::int64_t i = 0; i < t.height; ++i) out.push_back(translate(t.base, i));
  return out;
}

std::size_t KRPartition::atom_count() const {
  std::size_t n = 0;
  for (auto const& t : towers_) n += static_cast<std::size_t>(t.height);
  return n;
}

ClopenSet KRPartition::base_set() const {
  auto out = ClopenSet::empty(system_);
  for (auto const& t : towers_) out = unite(out, t.base);
  return out;
}

ClopenSet KRPartition::top_set() const {
  auto out = ClopenSet::empty(system_);
  for (auto const& t : towers_) out = unite(out, translate(t.base, t.height - 1));
  return out;
}

std::int64_t KRPartition::min_height() const {
  std::int64_t h = towers_.front().height;
  for (auto const& t : towers_) h = std::min(h, t.height);
  return h;
}

void KRPartition::verify() const {
  try {
    check_partition(atoms());
  } catch (PreconditionError const& e) {
    throw VerificationError(std::string("atoms do not partition X: ") + e.what());
  }
  if (!equals(translate(top_set(), 1), base_set()))
    throw VerificationError("T(H) differs from B");
}

std::string KRPartition::report() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < towers_.size(); ++v)
    os << "tower " << v << ": base=" << towers_[v].base.to_string()
       << " height=" << towers_[v].height << '\n';
  os << "base=" << base_set().to_string() << '\n';
  os << "top=" << top_set().to_string() << '\n';
  return os.str();
}

KRPartition kr_from_set(ClopenSet const& a) {
  auto r = first_return(a);
  std::vector<Tower> towers;
  for (auto& [k, c] : r.cells) towers.push_back(Tower{c, k});
  return KRPartition(std::move(towers));
}

KRPartition refine_by_partition(KRPartition const& xi, Partition const& p) {
  auto const& sys = *xi.system();
  auto pw = common_window(p);
  auto labels = label_words(p, pw);
  std::vector<Tower> out;
  for (auto const& t : xi.towers()) {
    Window w = t.base.window();
    for (std::int64_t i = 0; i < t.height; ++i) w = sys.hull(w, sys.pullback(pw, i));
    std::map<std::vector<std::size_t>, std::vector<Word>> split;
    for (auto const& u : t.base.words_on(w)) {
      std::vector<std::size_t> label;
      label.reserve(static_cast<std::size_t>(t.height));
      for (std::int64_t i = 0; i < t.height; ++i) {
        auto it = labels.find(sys.push(u, w, i, pw));
        if (it == labels.end()) throw PreconditionError("refining set family does not cover X");
        label.push_back(it->second);
      }
      split[label].push_back(u);
    }
    for (auto& [_, words] : split)
      out.push_back(Tower{ClopenSet(xi.system(), w, std::move(words)), t.height});
  }
  return KRPartition(std::move(out));
}

KRPartition refine_against(KRPartition const& xi, ClopenSet const& b) {
  Partition p;
  if (!b.is_empty()) p.push_back(b);
  auto rest = complement(b);
  if (!rest.is_empty()) p.push_back(rest);
  return refine_by_partition(xi, p);
}

ClopenSet u_set(KRPartition const& xi, std::int64_t i) {
  if (i < 0 || i >= xi.min_height()) throw PreconditionError("U(i) level out of range");
  auto out = ClopenSet::empty(xi.system());
  for (auto const& t : xi.towers()) out = unite(out, translate(t.base, t.height - i - 1));
  return out;
}

ClopenSet d_set(KRPartition const& xi, std::int64_t i) {
  if (i < 0 || i >= xi.min_height()) throw PreconditionError("D(i) level out of range");
  auto out = ClopenSet::empty(xi.system());
  for (auto const& t : xi.towers()) out = unite(out, translate(t.base, i));
  return out;
}

std::int64_t diameter_radius(std::int64_t n) {
  if (n < 1) throw PreconditionError("level index must be positive");
  std::int64_t c = 0;
  while ((std::int64_t{1} << c) < n) ++c;
  return c + 1;
}

TowerSequence::TowerSequence(PointRep anchor, Schedule schedule)
    : anchor_(std::move(anchor)), schedule_(std::move(schedule)) {
  if (!schedule_) schedule_ = [](std::int64_t n) { return n; };
}

TowerLevel const& TowerSequence::level(std::int64_t n) const {
  if (n < 1) throw PreconditionError("tower levels start at 1");
  std::lock_guard lock(mutex_);
  while (static_cast<std::int64_t>(levels_.size()) < n) {
    TowerLevel const* prev = levels_.empty() ? nullptr : &levels_.back();
    levels_.push_back(build(static_cast<std::int64_t>(levels_.size()) + 1, prev));
  }
  return levels_[static_cast<std::size_t>(n - 1)];
}

TowerLevel TowerSequence::build(std::int64_t n, TowerLevel const* previous) const {
  auto m = schedule_(n);
  if (m < 1) throw PreconditionError("schedule values must be positive");
  if (previous && m < previous->m) throw PreconditionError("schedule must be nondecreasing");
  auto need = diameter_radius(n);
  std::int64_t j = previous ? previous->radius : 1;
  for (;; ++j) {
    auto e = point_cylinder(anchor_, j);
    if (e.window().empty()) continue;
    bool small = true;
    for (std::int64_t i = -m - 1; i <= m && small; ++i) {
      auto r = agreement_radius(translate(e, i));
      small = r && *r >= need;
    }
    if (!small) continue;
    auto xi = kr_from_set(e);
    if (xi.min_height() < 2 * m + 2) continue;
    if (previous) xi = refine_by_partition(xi, previous->partition.atoms());
    return TowerLevel{n, m, j, std::move(xi)};
  }
}

TowerSequence const& anchored_sequence(PointRep const& anchor) {
  static std::mutex mutex;
  static std::map<std::pair<System const*, std::string>, std::unique_ptr<TowerSequence>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(anchor.system.get(), anchor.to_string());
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<TowerSequence>(anchor);
  return *slot;
}

bool partition_refines(std::vector<ClopenSet> const& fine, std::vector<ClopenSet> const& coarse) {
  if (fine.empty() || coarse.empty()) return fine.empty();
  auto const& sys = *fine.front().system();
  auto w = sys.hull(common_window(fine), common_window(coarse));
  auto labels = label_words(coarse, w);
  for (auto const& a : fine) {
    std::optional<std::size_t> owner;
    for (auto const& u : a.words_on(w)) {
      auto it = labels.find(u);
      if (it == labels.end()) return false;
      if (owner && *owner != it->second) return false;
      owner = it->second;
    }
  }
  return true;
}

ConditionReport check_conditions(TowerSequence const& seq, std::int64_t n,
                                 std::int64_t search_limit) {
  ConditionReport r;
  auto const& lvl = seq.level(n);
  auto const& next = seq.level(n + 1);
  auto const& xi = lvl.partition;

  try {
    xi.verify();
    r.partition = true;
  } catch (VerificationError const&) {
    r.partition = false;
  }

  auto cylinders = radius_partition(seq.system(), n);
  for (std::int64_t k = n; k <= n + search_limit && !r.generates; ++k) {
    if (partition_refines(seq.level(k).partition.atoms(), cylinders)) {
      r.generates = true;
      r.generating_level = k;
    }
  }

  r.refines = partition_refines(next.partition.atoms(), xi.atoms());
  r.nested_bases = subset(next.partition.base_set(), xi.base_set()) &&
                   contains_point(xi.base_set(), seq.anchor());
  r.height = xi.min_height() >= 2 * lvl.m + 2;

  auto need = diameter_radius(n);
  auto base = xi.base_set();
  r.diameter = true;
  for (std::int64_t i = -lvl.m - 1; i <= lvl.m; ++i) {
    auto ar = agreement_radius(translate(base, i));
    if (!ar || *ar < need) r.diameter = false;
  }
  return r;
}

}  // namespace tfg
