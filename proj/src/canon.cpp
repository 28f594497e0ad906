#include "tfg/canon.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tfg/errors.hpp"

namespace tfg {

namespace {

std::string atom_name(std::size_t v, std::int64_t i) {
  return "T^" + std::to_string(i) + "B_" + std::to_string(v);
}

// Cocycle per atom, or the first atom on which it is not constant.
std::optional<std::vector<std::vector<Power>>> values_or_defect(GroupElement const& s,
                                                                KRPartition const& xi,
                                                                std::string* defect) {
  auto const& sys = *xi.system();
  auto sw = s.window();
  std::vector<std::vector<Power>> out;
  for (std::size_t v = 0; v < xi.size(); ++v) {
    auto const& t = xi.towers()[v];
    std::vector<Power> vals(static_cast<std::size_t>(t.height), 0);
    if (sw.empty()) {
      std::fill(vals.begin(), vals.end(), s.powers().front());
      out.push_back(std::move(vals));
      continue;
    }
    Window w = t.base.window();
    for (std::int64_t i = 0; i < t.height; ++i) w = sys.hull(w, sys.pullback(sw, i));
    bool first = true;
    for (auto const& u : t.base.words_on(w)) {
      for (std::int64_t i = 0; i < t.height; ++i) {
        auto f = s.power_at(sys.push(u, w, i, sw), sw);
        auto& slot = vals[static_cast<std::size_t>(i)];
        if (first) {
          slot = f;
        } else if (slot != f) {
          if (defect) *defect = "cocycle not constant on atom " + atom_name(v, i);
          return std::nullopt;
        }
      }
      first = false;
    }
    out.push_back(std::move(vals));
  }
  return out;
}

GroupElement block_swap(ClopenSet const& a, Power p) {
  auto b = translate(a, p);
  std::vector<Piece> pieces{{a, p}, {b, -p}};
  auto rest = complement(unite(a, b));
  if (!rest.is_empty()) pieces.emplace_back(rest, 0);
  return make_element(a.system(), pieces);
}

// Cyclic representative of d modulo h in (-h/2, h/2].
std::int64_t signed_mod(std::int64_t d, std::int64_t h) {
  auto r = ((d % h) + h) % h;
  if (2 * r > h) r -= h;
  return r;
}

// l with T_A^l z = T^f z, walking the induced map from z.
std::optional<Power> induced_exponent(GroupElement const& induced_map, PointRep const& z,
                                      Power f) {
  if (f == 0) return Power{0};
  auto const& sys = *z.system;
  auto step = f > 0 ? induced_map : invert(induced_map);
  Power acc = 0;
  Power l = 0;
  auto cur = z;
  while (f > 0 ? acc < f : acc > f) {
    auto r = value_at(step, cur);
    if (r == 0) return std::nullopt;
    acc += r;
    cur = sys.shift(cur, r);
    l += f > 0 ? 1 : -1;
  }
  if (acc != f) return std::nullopt;
  return l;
}

struct LevelPlan {
  std::vector<std::vector<Power>> values;
  std::vector<LevelPermutation> perms;
  std::set<std::int64_t> up;
  std::set<std::int64_t> down;
};

// Direct checks that the construction applies to q at level n.
std::optional<LevelPlan> plan_level(GroupElement const& q, TowerSequence const& seq,
                                    std::int64_t n, std::string& defect) {
  auto const& lvl = seq.level(n);
  auto const& xi = lvl.partition;
  auto m = lvl.m;
  LevelPlan plan;
  if (cocycle_bound(q) > m) {
    defect = "cocycle bound exceeds m_n = " + std::to_string(m);
    return std::nullopt;
  }
  auto vals = values_or_defect(q, xi, &defect);
  if (!vals) return std::nullopt;
  plan.values = std::move(*vals);

  for (std::size_t v = 0; v < xi.size(); ++v) {
    auto h = xi.towers()[v].height;
    LevelPermutation perm(static_cast<std::size_t>(h));
    std::vector<bool> hit(static_cast<std::size_t>(h), false);
    for (std::int64_t i = 0; i < h; ++i) {
      auto f = plan.values[v][static_cast<std::size_t>(i)];
      auto target = i + f;
      if (target >= h) {
        auto j = h - 1 - i;
        if (j > m) {
          defect = atom_name(v, i) + " crosses the top outside the band";
          return std::nullopt;
        }
        plan.up.insert(j);
      } else if (target < 0) {
        if (i > m) {
          defect = atom_name(v, i) + " crosses the base outside the band";
          return std::nullopt;
        }
        plan.down.insert(i);
      }
      auto img = ((target % h) + h) % h;
      if (hit[static_cast<std::size_t>(img)]) {
        defect = "level map of tower " + std::to_string(v) + " is not a permutation";
        return std::nullopt;
      }
      hit[static_cast<std::size_t>(img)] = true;
      perm[static_cast<std::size_t>(i)] = img;
    }
    plan.perms.push_back(std::move(perm));
  }

  for (std::int64_t i = 0; i <= m; ++i) {
    for (std::size_t v = 1; v < xi.size(); ++v) {
      auto hv = xi.towers()[v].height;
      auto h0 = xi.towers()[0].height;
      if (plan.values[v][static_cast<std::size_t>(i)] != plan.values[0][static_cast<std::size_t>(i)]) {
        defect = "cocycle not constant on D(" + std::to_string(i) + ")";
        return std::nullopt;
      }
      if (plan.values[v][static_cast<std::size_t>(hv - 1 - i)] !=
          plan.values[0][static_cast<std::size_t>(h0 - 1 - i)]) {
        defect = "cocycle not constant on U(" + std::to_string(i) + ")";
        return std::nullopt;
      }
    }
  }

  for (std::int64_t i = -m; i <= m; ++i) {
    std::optional<std::int64_t> seen;
    for (std::size_t v = 0; v < xi.size(); ++v) {
      auto h = xi.towers()[v].height;
      auto lv = i >= 0 ? i : h + i;
      auto img = i + signed_mod(plan.perms[v][static_cast<std::size_t>(lv)] - lv, h);
      if (seen && *seen != img) {
        defect = "tower permutations disagree at level " + std::to_string(i);
        return std::nullopt;
      }
      seen = img;
    }
  }
  return plan;
}

std::int64_t first_valid_level(GroupElement const& q, TowerSequence const& seq,
                               std::int64_t limit) {
  for (std::int64_t k = 1; k <= limit; ++k) {
    std::string defect;
    if (plan_level(q, seq, k, defect)) return k;
  }
  return limit;
}

Factorization build(GroupElement const& q, TowerSequence const& seq, std::int64_t n,
                    LevelPlan plan, std::int64_t n0) {
  auto const& lvl = seq.level(n);
  auto const& xi = lvl.partition;
  PermutationForm pf{xi, plan.perms};
  RotationForm rf{xi, lvl.m, {}, {}};
  for (auto j : plan.up) rf.up[j] = 1;
  for (auto i : plan.down) rf.down[i] = -1;
  auto pe = pf.element();
  auto re = rf.element();
  if (!equals(compose(pe, re), q)) throw InternalError("factorization does not recompose");

  for (std::size_t v = 0; v < xi.size(); ++v) {
    auto h = xi.towers()[v].height;
    for (std::int64_t i = 0; i < h; ++i) {
      auto d = signed_mod(pf.perms[v][static_cast<std::size_t>(i)] - i, h);
      if ((d < 0 ? -d : d) > n0) throw InternalError("level displacement exceeds n0");
    }
  }
  for (auto const* side : {&rf.up, &rf.down})
    for (auto const& [j, _] : *side)
      if (j >= n0) throw InternalError("rotation level beyond n0");
  return Factorization{q, n, n0, std::move(pf), std::move(rf), std::move(pe), std::move(re)};
}

}  // namespace

GroupElement t_u(KRPartition const& xi, std::int64_t i) {
  if (i < 0 || 2 * i >= xi.min_height()) throw PreconditionError("t_u level out of range");
  std::vector<Piece> pieces;
  auto band = ClopenSet::empty(xi.system());
  for (auto const& tv : xi.towers()) {
    auto level = translate(tv.base, tv.height - i - 1);
    band = unite(band, level);
    for (auto const& tw : xi.towers()) {
      auto part = intersect(level, translate(tw.base, -(i + 1)));
      if (!part.is_empty()) pieces.emplace_back(part, tw.height);
    }
  }
  auto rest = complement(band);
  if (!rest.is_empty()) pieces.emplace_back(rest, 0);
  return make_element(xi.system(), pieces);
}

GroupElement t_d(KRPartition const& xi, std::int64_t i) {
  if (i < 0 || 2 * i >= xi.min_height()) throw PreconditionError("t_d level out of range");
  std::vector<Piece> pieces;
  auto band = ClopenSet::empty(xi.system());
  for (auto const& tv : xi.towers()) {
    auto level = translate(tv.base, i);
    band = unite(band, level);
    pieces.emplace_back(level, tv.height);
  }
  auto rest = complement(band);
  if (!rest.is_empty()) pieces.emplace_back(rest, 0);
  return make_element(xi.system(), pieces);
}

std::optional<std::vector<std::vector<Power>>> atom_values(GroupElement const& s,
                                                           KRPartition const& xi) {
  return values_or_defect(s, xi, nullptr);
}

GroupElement element_on_atoms(KRPartition const& xi,
                              std::vector<std::vector<Power>> const& values) {
  std::vector<Piece> pieces;
  for (std::size_t v = 0; v < xi.size(); ++v)
    for (std::int64_t i = 0; i < xi.towers()[v].height; ++i)
      pieces.emplace_back(xi.atom(v, i), values.at(v).at(static_cast<std::size_t>(i)));
  return from_pieces(xi.system(), pieces);
}

std::string one_line(LevelPermutation const& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p[i]);
  }
  return out + "]";
}

GroupElement PermutationForm::element() const {
  std::vector<std::vector<Power>> values;
  for (auto const& perm : perms) {
    std::vector<Power> row;
    for (std::size_t i = 0; i < perm.size(); ++i)
      row.push_back(perm[i] - static_cast<std::int64_t>(i));
    values.push_back(std::move(row));
  }
  return element_on_atoms(partition, values);
}

PermutationCheck is_n_permutation(GroupElement const& s, KRPartition const& xi) {
  PermutationCheck out;
  auto vals = values_or_defect(s, xi, &out.refusal);
  if (!vals) return out;
  PermutationForm form{xi, {}};
  for (std::size_t v = 0; v < xi.size(); ++v) {
    auto h = xi.towers()[v].height;
    LevelPermutation perm;
    std::vector<bool> hit(static_cast<std::size_t>(h), false);
    for (std::int64_t i = 0; i < h; ++i) {
      auto img = i + (*vals)[v][static_cast<std::size_t>(i)];
      if (img < 0 || img >= h) {
        out.refusal = "atom " + atom_name(v, i) + " leaves its tower";
        return out;
      }
      if (hit[static_cast<std::size_t>(img)]) {
        out.refusal = "atoms of tower " + std::to_string(v) + " collide";
        return out;
      }
      hit[static_cast<std::size_t>(img)] = true;
      perm.push_back(img);
    }
    form.perms.push_back(std::move(perm));
  }
  out.form = std::move(form);
  return out;
}

Power RotationForm::rotation_number() const {
  Power r = 0;
  for (auto const* side : {&up, &down})
    for (auto const& [_, e] : *side) r = std::max(r, e < 0 ? -e : e);
  return r;
}

GroupElement RotationForm::element() const {
  auto out = identity(partition.system());
  for (auto const& [i, l] : up) out = compose(out, power(t_u(partition, i), l));
  for (auto const& [j, k] : down) out = compose(out, power(t_d(partition, j), k));
  return out;
}

RotationCheck is_n_rotation(GroupElement const& s, TowerSequence const& seq, std::int64_t n) {
  RotationCheck out;
  auto const& lvl = seq.level(n);
  auto const& xi = lvl.partition;
  auto m = lvl.m;
  std::vector<ClopenSet> ups, downs;
  auto bands = ClopenSet::empty(xi.system());
  for (std::int64_t i = 0; i <= m; ++i) {
    ups.push_back(u_set(xi, i));
    downs.push_back(d_set(xi, i));
    bands = unite(bands, unite(ups.back(), downs.back()));
  }
  if (!subset(support(s), bands)) {
    out.refusal = "support leaves the bands";
    return out;
  }
  for (std::int64_t i = 0; i <= m; ++i) {
    if (!subset(image(s, ups[static_cast<std::size_t>(i)]), ups[static_cast<std::size_t>(i)])) {
      out.refusal = "U(" + std::to_string(i) + ") is not preserved";
      return out;
    }
    if (!subset(image(s, downs[static_cast<std::size_t>(i)]), downs[static_cast<std::size_t>(i)])) {
      out.refusal = "D(" + std::to_string(i) + ") is not preserved";
      return out;
    }
  }
  auto const& sys = *xi.system();
  auto const& x0 = seq.anchor();
  RotationForm form{xi, m, {}, {}};
  for (std::int64_t i = 0; i <= m; ++i) {
    auto z = sys.shift(x0, -i - 1);
    auto f = value_at(s, z);
    if (f == 0) continue;
    auto l = induced_exponent(t_u(xi, i), z, f);
    if (!l) {
      out.refusal = "U(" + std::to_string(i) + ") is not moved by a power of its induced map";
      return out;
    }
    form.up[i] = *l;
  }
  for (std::int64_t j = 0; j <= m; ++j) {
    auto z = sys.shift(x0, j);
    auto f = value_at(s, z);
    if (f == 0) continue;
    auto k = induced_exponent(t_d(xi, j), z, f);
    if (!k) {
      out.refusal = "D(" + std::to_string(j) + ") is not moved by a power of its induced map";
      return out;
    }
    form.down[j] = *k;
  }
  if (!equals(form.element(), s)) {
    out.refusal = "no product of band powers matches";
    return out;
  }
  out.form = std::move(form);
  return out;
}

std::string Factorization::report() const {
  std::ostringstream os;
  os << "level n=" << level << " n0=" << n0 << '\n';
  for (std::size_t v = 0; v < p.perms.size(); ++v)
    os << "tower " << v << ": " << one_line(p.perms[v]) << '\n';
  for (auto const& [i, l] : r.up) os << "U(" << i << ")^" << l << '\n';
  for (auto const& [j, k] : r.down) os << "D(" << j << ")^" << k << '\n';
  return os.str();
}

std::string level_defect(GroupElement const& q, TowerSequence const& seq, std::int64_t n) {
  std::string defect;
  plan_level(q, seq, n, defect);
  return defect;
}

Factorization factorize(GroupElement const& q, TowerSequence const& seq, std::int64_t n) {
  if (q.system() != seq.system()) throw PreconditionError("element and towers from different systems");
  std::string defect;
  auto plan = plan_level(q, seq, n, defect);
  if (!plan)
    throw PreconditionError("level " + std::to_string(n) + " is below the valid threshold: " +
                            defect);
  auto n0 = std::max(cocycle_bound(q), first_valid_level(q, seq, n));
  return build(q, seq, n, std::move(*plan), n0);
}

Factorization factorize(GroupElement const& q, TowerSequence const& seq) {
  if (q.system() != seq.system()) throw PreconditionError("element and towers from different systems");
  constexpr std::int64_t limit = 256;
  for (std::int64_t n = 1; n <= limit; ++n) {
    std::string defect;
    auto plan = plan_level(q, seq, n, defect);
    if (plan) return build(q, seq, n, std::move(*plan), std::max(cocycle_bound(q), n));
  }
  throw InternalError("no valid factorization level up to " + std::to_string(limit));
}

Factorization factorize(GroupElement const& q) {
  return factorize(q, anchored_sequence(q.system()->base_point(Anchor::primary)));
}

OrbitCounts orbit_counts(GroupElement const& q, PointRep const& x) {
  if (q.system() != x.system) throw PreconditionError("point from a different system");
  auto const& sys = *x.system;
  auto bound = cocycle_bound(q);
  OrbitCounts out;
  for (std::int64_t n = -bound; n < bound; ++n) {
    auto f = value_at(q, sys.shift(x, n));
    if (n < 0 && n + f >= 0) ++out.a;
    if (n >= 0 && n + f < 0) ++out.b;
  }
  return out;
}

std::int64_t index(GroupElement const& q) {
  auto x = q.system()->base_point(Anchor::primary);
  auto c = orbit_counts(q, x);
  auto fac = factorize(q);
  std::int64_t rot = 0;
  for (auto const& [_, l] : fac.r.up) rot += l;
  for (auto const& [_, k] : fac.r.down) rot += k;
  if (rot != c.a - c.b)
    throw InternalError("index disagreement: orbit counts give " + std::to_string(c.a - c.b) +
                        ", rotation gives " + std::to_string(rot));
  return c.a - c.b;
}

bool in_stabilizer(GroupElement const& q, PointRep const& x) {
  auto fac = factorize(q, anchored_sequence(x));
  bool trivial = is_identity(fac.r_element);
  auto c = orbit_counts(q, x);
  if (trivial != (c.a == 0 && c.b == 0))
    throw InternalError("stabilizer test disagrees with orbit counts");
  return trivial;
}

std::optional<bool> same_orbit(PointRep const& x, PointRep const& y) {
  if (x.system != y.system) throw PreconditionError("points from different systems");
  auto const& sys = *x.system;
  if (sys.kind() != SystemKind::odometer) return std::nullopt;
  auto const& cfg = sys.config();
  auto const& dx = std::get<DigitStream>(x.data);
  auto const& dy = std::get<DigitStream>(y.data);
  auto start = static_cast<std::int64_t>(
      std::max({dx.prefix.size(), dy.prefix.size(), cfg.bases.size()}));
  std::int64_t len = std::lcm(static_cast<std::int64_t>(std::max<std::size_t>(dx.period.size(), 1)),
                              static_cast<std::int64_t>(std::max<std::size_t>(dy.period.size(), 1)));
  if (!cfg.repeat.empty()) len = std::lcm(len, static_cast<std::int64_t>(cfg.repeat.size()));
  auto base_at = [&](std::int64_t i) {
    auto k = static_cast<std::size_t>(i);
    if (k < cfg.bases.size()) return cfg.bases[k];
    if (cfg.repeat.empty()) return cfg.bases.back();
    return cfg.repeat[(k - cfg.bases.size()) % cfg.repeat.size()];
  };
  auto wx = sys.point_window(x, start, start + len - 1);
  auto wy = sys.point_window(y, start, start + len - 1);
  if (wx == wy) return true;
  auto all = [&](Word const& w, bool top) {
    for (std::int64_t i = 0; i < len; ++i) {
      int want = top ? base_at(start + i) - 1 : 0;
      if (digit_value(w[static_cast<std::size_t>(i)]) != want) return false;
    }
    return true;
  };
  return (all(wx, true) && all(wy, false)) || (all(wx, false) && all(wy, true));
}

KernelDecomposition kernel_decompose(GroupElement const& q, PointRep const& x,
                                     PointRep const& y, std::int64_t depth_budget) {
  auto const& sysref = q.system();
  if (x.system != sysref || y.system != sysref)
    throw PreconditionError("points from a different system");
  auto phi = index(q);
  if (phi != 0) throw PreconditionError("index is " + std::to_string(phi) + ", not 0");
  auto so = same_orbit(x, y);
  if (so && *so) throw PreconditionError("x and y lie in one orbit");
  auto const& sys = *sysref;

  auto bound = cocycle_bound(q);
  std::vector<std::int64_t> i_minus, i_plus;
  for (std::int64_t n = -bound; n < bound; ++n) {
    auto f = value_at(q, sys.shift(x, n));
    if (n < 0 && n + f >= 0) i_minus.push_back(n);
    if (n >= 0 && n + f < 0) i_plus.push_back(n);
  }
  if (i_minus.size() != i_plus.size()) throw InternalError("I- and I+ differ in size");

  auto id = identity(sysref);
  KernelDecomposition out{q, id, ClopenSet::full(sysref), 0, i_minus, i_plus, id, id, id, {}};
  out.log.push_back("I- = " + one_line(i_minus) + " I+ = " + one_line(i_plus));

  if (!i_minus.empty()) {
    std::optional<std::pair<ClopenSet, Power>> found;
    Power max_shift = 8 * bound + 8;
    for (std::int64_t d = 1; d <= depth_budget && !found; ++d) {
      auto c = point_cylinder(x, d);
      for (Power p = 1; p <= max_shift && !found; ++p) {
        auto cp = translate(c, p);
        if (!disjoint(c, cp)) continue;
        auto y_set = unite(c, cp);
        bool ok = true;
        for (Power k = 1; k <= 2 * bound && ok; ++k) ok = disjoint(y_set, translate(y_set, k));
        for (Power j = -bound; j <= bound && ok; ++j) ok = !contains_point(y_set, sys.shift(y, -j));
        if (ok) found.emplace(c, p);
      }
    }
    if (!found) throw PreconditionError("no set Y found within depth budget; raise the budget");
    auto [c, p] = *found;
    out.c = c;
    out.p = p;
    out.log.push_back("Y = C + T^" + std::to_string(p) + "C with C = " + c.to_string());

    std::map<std::int64_t, std::int64_t> pi;
    for (std::size_t k = 0; k < i_minus.size(); ++k) {
      pi[i_minus[k]] = i_plus[k];
      pi[i_plus[k]] = i_minus[k];
    }
    auto y_set = unite(c, translate(c, p));
    std::vector<Piece> whole, half_c, half_pc, swap;
    auto moved = ClopenSet::empty(sysref);
    auto moved_c = ClopenSet::empty(sysref);
    auto moved_pc = ClopenSet::empty(sysref);
    for (auto const& [n, to] : pi) {
      auto ty = translate(y_set, n);
      auto tc = translate(c, n);
      auto tpc = translate(c, n + p);
      whole.emplace_back(ty, to - n);
      half_c.emplace_back(tc, to - n);
      half_pc.emplace_back(tpc, to - n);
      swap.emplace_back(tc, p);
      swap.emplace_back(tpc, -p);
      moved = unite(moved, ty);
      moved_c = unite(moved_c, tc);
      moved_pc = unite(moved_pc, tpc);
    }
    auto finish = [&](std::vector<Piece>& pieces, ClopenSet const& used) {
      auto rest = complement(used);
      if (!rest.is_empty()) pieces.emplace_back(rest, 0);
      return make_element(sysref, pieces);
    };
    out.p2 = finish(whole, moved);
    out.half_c = finish(half_c, moved_c);
    out.half_pc = finish(half_pc, moved_pc);
    out.swap = finish(swap, moved);
    out.p1 = compose(q, invert(out.p2));
  }

  auto check = [&](bool ok, std::string const& what) {
    out.log.push_back(what + (ok ? ": ok" : ": FAILED"));
    if (!ok) {
      std::string all;
      for (auto const& line : out.log) all += line + "\n";
      throw VerificationError("kernel decomposition check failed\n" + all);
    }
  };
  check(equals(compose(out.p1, out.p2), q), "Q = P1 P2");
  check(is_identity(compose(out.p2, out.p2)), "P2 is an involution");
  check(equals(compose(out.half_c, out.half_pc), out.p2), "P2 = half over C * half over T^pC");
  check(equals(conjugate(out.half_c, out.swap), out.half_pc), "halves conjugate by the block swap");
  check(in_stabilizer(out.p2, y), "P2 preserves the forward orbit of y");
  check(in_stabilizer(out.p1, x), "P1 preserves the forward orbit of x");
  return out;
}

SeparationWitness separation_witness(ClopenSet const& o, PointRep const& x) {
  if (o.system() != x.system) throw PreconditionError("point from a different system");
  if (!contains_point(o, x)) throw PreconditionError("point is not in O");
  auto to = induced(o);
  for (std::int64_t r = 1; r <= 256; ++r) {
    auto u = point_cylinder(x, r);
    if (!subset(u, o)) continue;
    auto first = cocycle_values(to, u);
    if (first.size() != 1) continue;
    auto v = translate(u, first.front());
    auto second = cocycle_values(to, v);
    if (second.size() != 1) continue;
    auto w = translate(v, second.front());
    if (!disjoint(u, v) || !disjoint(v, w) || !disjoint(u, w)) continue;
    auto t = block_swap(u, first.front());
    auto s = block_swap(v, second.front());
    return SeparationWitness{commutator(s, t), s, t, u, v, w, first.front(), second.front()};
  }
  throw InternalError("no separating blocks up to radius 256");
}

GroupElement level_transposition(KRPartition const& xi, std::size_t v, std::int64_t a,
                                 std::int64_t b) {
  if (a == b) return identity(xi.system());
  auto ta = xi.atom(v, a);
  auto tb = xi.atom(v, b);
  std::vector<Piece> pieces{{ta, b - a}, {tb, a - b}};
  auto rest = complement(unite(ta, tb));
  if (!rest.is_empty()) pieces.emplace_back(rest, 0);
  return from_pieces(xi.system(), pieces);
}

}  // namespace tfg
